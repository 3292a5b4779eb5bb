#include "ctdg/edgebank.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace ctdg {

EdgeBankMemory::EdgeBankMemory(EdgeBankOptions options) : options_(options) {
    if (options_.window_duration && !(*options_.window_duration >= 0.0)) {
        throw Error(fmt::format("window duration {} must be non-negative", *options_.window_duration));
    }
}

std::uint64_t EdgeBankMemory::key(NodeId source, NodeId destination) const {
    if (!options_.directed && source > destination) std::swap(source, destination);
    return (static_cast<std::uint64_t>(source) << 32) | destination;
}

EdgeBankMemory& EdgeBankMemory::fit(const EventLog& log) {
    if (options_.mode == EdgeBankMode::kTimeWindow && !options_.window_duration) {
        options_.window_duration = default_window_duration(log);
    }
    for (const LabeledEdge& e : log.events()) observe(e.edge);
    return *this;
}

void EdgeBankMemory::observe(const TemporalEdge& e) {
    auto [it, inserted] = seen_.try_emplace(key(e.source, e.destination), e.timestamp);
    if (!inserted) it->second = std::max(it->second, e.timestamp);
}

std::optional<double> EdgeBankMemory::last_seen(NodeId source, NodeId destination) const {
    const auto it = seen_.find(key(source, destination));
    if (it == seen_.end()) return std::nullopt;
    return it->second;
}

double EdgeBankMemory::score(const TemporalEdge& e) const {
    const auto seen = last_seen(e.source, e.destination);
    if (!seen) return 1.0;
    if (options_.mode == EdgeBankMode::kTimeWindow) {
        const double window = options_.window_duration.value_or(0.0);
        return *seen >= e.timestamp - window ? 0.0 : 1.0;
    }
    return 0.0;
}

std::vector<ScoredEvent> evaluate_stream(EdgeBankMemory memory, const EventLog& split) {
    std::vector<ScoredEvent> out;
    out.reserve(split.size());
    const bool benign_only = memory.options().update == MemoryUpdate::kBenignOnly;
    for (const LabeledEdge& e : split.events()) {
        out.push_back({memory.score(e.edge), e.label});
        if (!benign_only || !is_anomalous(e.label)) memory.observe(e.edge);
    }
    return out;
}

double default_window_duration(const EventLog& train) {
    const auto range = train.time_range();
    if (!range) return 0.0;
    return 0.15 * (range->second - range->first);
}

}  // namespace ctdg

#include "ctdg/event_log.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include <fmt/format.h>

namespace ctdg {

std::string_view label_name(AnomalyLabel label) {
    switch (label) {
        case AnomalyLabel::kBenign: return "benign";
        case AnomalyLabel::kTemporal: return "t";
        case AnomalyLabel::kContextual: return "c";
        case AnomalyLabel::kTemporalContextual: return "tc";
        case AnomalyLabel::kStructuralContextual: return "sc";
        case AnomalyLabel::kTemporalStructuralContextual: return "tsc";
    }
    return "unknown";
}

AnomalyLabel parse_label(std::string_view name) {
    std::string key;
    for (char ch : name) {
        if (ch == '-' || ch == '_') continue;
        key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    if (key == "benign" || key == "b") return AnomalyLabel::kBenign;
    if (key == "t") return AnomalyLabel::kTemporal;
    if (key == "c") return AnomalyLabel::kContextual;
    if (key == "tc") return AnomalyLabel::kTemporalContextual;
    if (key == "sc") return AnomalyLabel::kStructuralContextual;
    if (key == "tsc") return AnomalyLabel::kTemporalStructuralContextual;
    throw Error(fmt::format("unknown anomaly type '{}' (expected one of t, c, tc, sc, tsc)", name));
}

AnomalyLabel label_from_code(long long code) {
    if (code < 0 || code > 5) {
        throw Error(fmt::format("label code {} outside 0..5", code));
    }
    return static_cast<AnomalyLabel>(code);
}

EventLog EventLog::build(std::vector<LabeledEdge> events, std::size_t node_count,
                         std::size_t message_dim) {
    for (std::size_t i = 0; i < events.size(); ++i) {
        const TemporalEdge& e = events[i].edge;
        if (!std::isfinite(e.timestamp) || e.timestamp < 0.0) {
            throw Error(fmt::format("event {}: timestamp {} must be finite and non-negative", i,
                                    e.timestamp));
        }
        if (e.source >= node_count || e.destination >= node_count) {
            throw Error(fmt::format("event {}: node id ({}, {}) not below node_count {}", i,
                                    e.source, e.destination, node_count));
        }
        if (e.message.size() != message_dim) {
            throw Error(fmt::format("event {}: message dimension {} differs from {}", i,
                                    e.message.size(), message_dim));
        }
        if (static_cast<int>(events[i].label) > 5) {
            throw Error(fmt::format("event {}: invalid label", i));
        }
    }
    std::stable_sort(events.begin(), events.end(), [](const LabeledEdge& a, const LabeledEdge& b) {
        return a.edge.timestamp < b.edge.timestamp;
    });
    return EventLog(std::move(events), node_count, message_dim);
}

EventLog EventLog::from_sorted_slice(std::span<const LabeledEdge> events, std::size_t node_count,
                                     std::size_t message_dim) {
    return EventLog(std::vector<LabeledEdge>(events.begin(), events.end()), node_count,
                    message_dim);
}

std::size_t EventLog::anomaly_count() const {
    return static_cast<std::size_t>(std::count_if(
        events_.begin(), events_.end(), [](const LabeledEdge& e) { return is_anomalous(e.label); }));
}

std::optional<std::pair<double, double>> EventLog::time_range() const {
    if (events_.empty()) return std::nullopt;
    return std::make_pair(events_.front().edge.timestamp, events_.back().edge.timestamp);
}

EventLog concatenate(std::span<const EventLog> logs) {
    if (logs.empty()) return {};
    std::vector<LabeledEdge> all;
    const std::size_t nodes = logs.front().node_count();
    const std::size_t dim = logs.front().message_dim();
    for (const EventLog& log : logs) {
        if (log.message_dim() != dim) {
            throw Error("cannot concatenate logs with different message dimensions");
        }
        all.insert(all.end(), log.events().begin(), log.events().end());
    }
    std::size_t max_nodes = nodes;
    for (const EventLog& log : logs) max_nodes = std::max(max_nodes, log.node_count());
    return EventLog::build(std::move(all), max_nodes, dim);
}

}  // namespace ctdg

#include "ctdg/neighbor_index.hpp"

#include <algorithm>

namespace ctdg {

NeighborIndex::NeighborIndex(const EventLog& log) {
    const std::size_t n = log.node_count();
    offsets_.assign(n + 1, 0);
    for (const LabeledEdge& le : log.events()) {
        ++offsets_[le.edge.source + 1];
        if (le.edge.destination != le.edge.source) ++offsets_[le.edge.destination + 1];
    }
    for (std::size_t u = 0; u < n; ++u) offsets_[u + 1] += offsets_[u];

    entries_.resize(offsets_[n]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // The log is sorted, so appending in log order keeps every list chronological.
    for (std::size_t i = 0; i < log.size(); ++i) {
        const TemporalEdge& e = log[i].edge;
        entries_[cursor[e.source]++] = {e.destination, e.timestamp, i};
        if (e.destination != e.source) {
            entries_[cursor[e.destination]++] = {e.source, e.timestamp, i};
        }
    }
}

std::span<const NeighborEntry> NeighborIndex::history(NodeId node) const {
    if (node >= node_count()) return {};
    return std::span<const NeighborEntry>(entries_).subspan(
        offsets_[node], offsets_[node + 1] - offsets_[node]);
}

std::span<const NeighborEntry> NeighborIndex::neighbors_before(NodeId node, double t) const {
    const auto all = history(node);
    const auto end = std::lower_bound(all.begin(), all.end(), t,
                                      [](const NeighborEntry& e, double value) {
                                          return e.timestamp < value;
                                      });
    return all.first(static_cast<std::size_t>(end - all.begin()));
}

}  // namespace ctdg

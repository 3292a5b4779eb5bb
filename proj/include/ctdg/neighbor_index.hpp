#pragma once

#include <span>
#include <vector>

#include "ctdg/event_log.hpp"

namespace ctdg {

struct NeighborEntry {
    NodeId neighbor = 0;
    double timestamp = 0.0;
    /// Position of the interaction in the source log; gives access to its message.
    std::size_t event_index = 0;

    bool operator==(const NeighborEntry&) const = default;
};

/// Per-node chronological interaction history. Both endpoints see each other;
/// a self-loop is recorded once.
class NeighborIndex {
public:
    explicit NeighborIndex(const EventLog& log);

    /// All entries of `node` with timestamp strictly less than `t`, in
    /// chronological order. Nodes without history yield an empty span.
    std::span<const NeighborEntry> neighbors_before(NodeId node, double t) const;

    std::span<const NeighborEntry> history(NodeId node) const;
    std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }

private:
    // CSR layout: entries_[offsets_[u] .. offsets_[u+1]) belong to u.
    std::vector<std::size_t> offsets_;
    std::vector<NeighborEntry> entries_;
};

}  // namespace ctdg

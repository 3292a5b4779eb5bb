#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "ctdg/event_log.hpp"

namespace ctdg {

enum class EdgeBankMode { kInfinite, kTimeWindow };

/// What evaluate_stream writes back into memory after scoring an event.
enum class MemoryUpdate { kAll, kBenignOnly };

struct EdgeBankOptions {
    EdgeBankMode mode = EdgeBankMode::kInfinite;
    /// Look-back for kTimeWindow; when unset, fit() uses 0.15 x the span of
    /// the first log it sees.
    std::optional<double> window_duration;
    bool directed = true;
    MemoryUpdate update = MemoryUpdate::kAll;
};

/// Memorization detector: a pair seen before is predicted to exist (score 0),
/// an unseen pair is flagged (score 1). Scores are 1 - p(e).
class EdgeBankMemory {
public:
    explicit EdgeBankMemory(EdgeBankOptions options = {});

    /// Records every pair of `log` with its latest timestamp.
    EdgeBankMemory& fit(const EventLog& log);

    void observe(const TemporalEdge& e);
    double score(const TemporalEdge& e) const;

    std::optional<double> last_seen(NodeId source, NodeId destination) const;
    std::size_t size() const { return seen_.size(); }
    const EdgeBankOptions& options() const { return options_; }

private:
    std::uint64_t key(NodeId source, NodeId destination) const;

    EdgeBankOptions options_;
    std::unordered_map<std::uint64_t, double> seen_;
};

struct ScoredEvent {
    double score = 0.0;
    AnomalyLabel label = AnomalyLabel::kBenign;
};

/// Batch-size-1 streaming: each event is scored, then inserted into the
/// memory. Works on a copy, so `memory` is left untouched.
std::vector<ScoredEvent> evaluate_stream(EdgeBankMemory memory, const EventLog& split);

/// 0.15 x the time span of `train`.
double default_window_duration(const EventLog& train);

}  // namespace ctdg

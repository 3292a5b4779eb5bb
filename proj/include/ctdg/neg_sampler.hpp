#pragma once

#include <span>
#include <vector>

#include "ctdg/event_log.hpp"
#include "ctdg/random.hpp"

namespace ctdg {

/// Positive edges of one training batch plus the context negatives draw from.
struct Batch {
    std::span<const TemporalEdge> positives;
    std::size_t node_count = 0;
    /// Training split time range used for timestamp perturbations.
    double t_lo = 0.0;
    double t_hi = 0.0;
};

struct NegativeSamplerOptions {
    /// Resample destinations equal to the positive's source or destination.
    bool strict_destination = false;
};

enum class PerturbationKind { kDestination, kTimestamp, kMessage };

std::string_view perturbation_name(PerturbationKind kind);

struct NegativeEdge {
    TemporalEdge edge;
    PerturbationKind kind = PerturbationKind::kDestination;
};

/// One negative per positive: same source, timestamp and message, with the
/// destination drawn uniformly from all nodes.
std::vector<TemporalEdge> sample_negative_random(const Batch& batch, Rng& rng,
                                                 const NegativeSamplerOptions& options = {});

/// One negative per positive, perturbing a uniformly chosen field:
/// destination ~ U(nodes), timestamp ~ U[t_lo, t_hi], or the message of
/// another positive in the batch. Message perturbation is not offered for
/// message-free edges and falls back to destination for single-edge batches.
std::vector<NegativeEdge> sample_negative_mixed(const Batch& batch, Rng& rng,
                                                const NegativeSamplerOptions& options = {});

}  // namespace ctdg

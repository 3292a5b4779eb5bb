#pragma once

#include <cstdint>
#include <vector>

#include "ctdg/event_log.hpp"
#include "ctdg/random.hpp"

namespace ctdg {

/// Inputs of the synthetic CTDG generator. Defaults reproduce the 10k-node
/// benchmark graph: spans average 1% of the time horizon with a 0.5% spread.
struct GeneratorConfig {
    std::size_t node_count = 10'000;
    std::size_t temporal_edge_target = 1'000'000;
    std::size_t communities = 10;
    double avg_occurrences = 50.0;
    double time_span = 1e8;
    /// Mean and standard deviation of an edge's activity span, in time units.
    double span_mean = 1e6;
    double span_std = 5e5;
    /// Timestamp jitter as a fraction of the edge's mean inter-event time.
    double timestamp_noise_fraction = 0.05;
    std::size_t classes = 5;
    std::size_t message_dim = 100;
    /// Per-dimension standard deviation of message noise.
    double message_noise = 0.05;
    /// Expected ratio of intra- to inter-community static edges.
    double intra_inter_ratio = 6.0;
    std::uint64_t seed = 0;

    void validate() const;
    /// ceil(temporal_edge_target / avg_occurrences).
    std::size_t static_edge_count() const;

    bool operator==(const GeneratorConfig&) const = default;
};

struct StaticEdge {
    NodeId source = 0;
    NodeId destination = 0;

    bool operator==(const StaticEdge&) const = default;
};

/// Static backbone: distinct unordered pairs plus node labels. Communities
/// and classes are 1-based.
struct StaticGraph {
    std::vector<StaticEdge> edges;
    std::vector<std::uint32_t> community;
    std::vector<std::uint32_t> node_class;
};

/// Near-equal contiguous community blocks: node i belongs to 1 + floor(i*M/N).
std::vector<std::uint32_t> assign_communities(std::size_t node_count, std::size_t communities);

/// Samples exactly `target_edges` distinct pairs without self-loops. The
/// number of intra-community pairs is Binomial(target, r / (r + 1)) for
/// r = `intra_inter_ratio` (infinity: intra pairs first), clamped to the
/// available pairs; each group is then sampled uniformly without
/// replacement. Node classes are left empty.
StaticGraph generate_static_graph(std::size_t node_count, std::size_t target_edges,
                                  std::size_t communities, double intra_inter_ratio, Rng& rng);

/// Block indicator vector of class pair (j, k), 1-based: ones at the
/// positions l (1-based) with (D/C^2)(C(j-1)+k-1) < l <= (D/C^2)(C(j-1)+k).
std::vector<double> expected_message(std::size_t j, std::size_t k, std::size_t classes,
                                     std::size_t message_dim);

/// Random quantities that shape one static edge's timeline.
struct TimelineDraw {
    long occurrences = 0;
    double span = 0.0;
    double start = 0.0;
};

/// Draws o_e ~ Poisson, the activity span ~ Lognormal (moment-matched to
/// span_mean/span_std, redrawn up to 100 times while >= time_span) and the
/// start ~ Uniform(0, time_span - span).
TimelineDraw draw_timeline(const GeneratorConfig& config, Rng& rng);

/// Places draw.occurrences events evenly over [start, start + span] with
/// Normal(0, noise_fraction * span / o_e) jitter clamped to [0, time_span],
/// each carrying `mean_message` plus Normal(0, message_noise) noise per
/// dimension. A single occurrence sits at `start`.
std::vector<TemporalEdge> realize_timeline(const StaticEdge& edge, const TimelineDraw& draw,
                                           std::span<const double> mean_message,
                                           const GeneratorConfig& config, Rng& rng);

/// draw_timeline followed by realize_timeline.
std::vector<TemporalEdge> sample_edge_timeline(const StaticEdge& edge,
                                               std::span<const double> mean_message,
                                               const GeneratorConfig& config, Rng& rng);

struct GeneratedGraph {
    EventLog log;
    StaticGraph static_graph;
    /// Aligned with static_graph.edges.
    std::vector<TimelineDraw> draws;
};

/// Full generator with its intermediate state, for diagnostics. Deterministic
/// in `config` for any `threads` value (0 = hardware concurrency).
GeneratedGraph generate_detailed(const GeneratorConfig& config, unsigned threads = 0);

/// Synthetic CTDG with every event labeled benign.
EventLog generate(const GeneratorConfig& config, unsigned threads = 0);

}  // namespace ctdg

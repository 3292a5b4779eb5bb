#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ctdg/event_log.hpp"
#include "ctdg/random.hpp"

namespace ctdg {

struct InjectionConfig {
    /// Anomalies added = ceil(rate * split size).
    double rate = 0.05;
    AnomalyLabel anomaly_type = AnomalyLabel::kTemporal;
    /// Candidate messages compared per contextual perturbation.
    std::size_t K = 10;
    /// Temporal window for the second reference of S-C anomalies.
    std::size_t W = 20;
    std::uint64_t seed = 0;
    /// Pick the least cosine-similar candidate (true) or the most similar.
    bool maximize_distance = true;

    void validate() const;

    bool operator==(const InjectionConfig&) const = default;
};

/// Draws benign reference events. A pair (u, v) occurring o times in the
/// split is chosen with probability proportional to o^-0.5, then one of its
/// occurrences uniformly.
class ReferenceSampler {
public:
    explicit ReferenceSampler(const EventLog& split);

    /// Index into the split.
    std::size_t sample(Rng& rng) const;

    /// Selection probability of each distinct pair, keyed by its first event index.
    std::vector<std::pair<std::size_t, double>> pair_probabilities() const;

private:
    std::vector<std::vector<std::size_t>> pair_events_;
    std::vector<double> cumulative_;
};

/// Cosine similarity; 0 when either vector has zero norm.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Index of the candidate with minimal cosine similarity to `reference`
/// (maximal when maximize_distance is false). Ties go to the lowest index.
std::size_t select_contextual_candidate(std::span<const double> reference,
                                        std::span<const std::span<const double>> candidates,
                                        bool maximize_distance = true);

/// Copy of `e` with timestamp ~ Uniform(t_lo, t_hi). Requires t_lo < t_hi.
TemporalEdge perturb_timestamp(const TemporalEdge& e, double t_lo, double t_hi, Rng& rng);

/// Copy of `e` whose message is replaced by the most dissimilar of K
/// candidates drawn without replacement from `pool`.
TemporalEdge perturb_message(const TemporalEdge& e, std::span<const std::span<const double>> pool,
                             std::size_t K, Rng& rng, bool maximize_distance = true);

/// Indices of the admissible second references for the event at
/// `reference_index`: among the `window` events nearest in time (ties
/// broken by lower index), those whose destination differs from the
/// reference's destination and source. The window doubles while nothing is
/// admissible, up to the split size.
std::vector<std::size_t> destination_candidates(const EventLog& split, std::size_t reference_index,
                                                std::size_t window);

struct StructuralPerturbation {
    TemporalEdge edge;
    std::size_t second_reference = 0;
};

/// S-C perturbation: (u, q, t, m^) where q is the destination of a second
/// reference drawn uniformly from destination_candidates and m^ comes from
/// perturb_message (kept unchanged for message-free graphs).
StructuralPerturbation perturb_destination(const EventLog& split, std::size_t reference_index,
                                           std::size_t window,
                                           std::span<const std::span<const double>> pool,
                                           std::size_t K, Rng& rng, bool maximize_distance = true);

/// T-S-C edge: distinct random endpoints, uniform timestamp in [t_lo, t_hi)
/// and a message drawn from `pool` (empty when the pool vectors are empty).
TemporalEdge random_edge(std::size_t node_count, double t_lo, double t_hi,
                         std::span<const std::span<const double>> pool, Rng& rng);

/// Linkage of an injected anomaly to the benign events it was derived from.
struct InjectionRecord {
    TemporalEdge anomaly;
    AnomalyLabel type = AnomalyLabel::kBenign;
    /// Index of the reference event in the input split (absent for T-S-C).
    std::optional<std::size_t> reference;
    /// Second reference of an S-C anomaly.
    std::optional<std::size_t> second_reference;
};

struct InjectionResult {
    EventLog log;
    std::vector<InjectionRecord> records;
};

/// ceil(rate * n) anomalies of config.anomaly_type, appended to the benign
/// split and stably re-sorted. Anomaly i uses its own derived random stream.
InjectionResult inject_detailed(const EventLog& split, const InjectionConfig& config);

EventLog inject(const EventLog& split, const InjectionConfig& config);

/// Number of anomalies inject() adds to a split of `split_size` events.
std::size_t anomaly_budget(double rate, std::size_t split_size);

}  // namespace ctdg

#include "ctdg/anomaly_inject.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

namespace ctdg {

void InjectionConfig::validate() const {
    if (!(rate > 0.0 && rate < 1.0)) throw Error(fmt::format("rate {} must lie in (0, 1)", rate));
    if (!is_anomalous(anomaly_type)) throw Error("anomaly_type must be one of t, c, tc, sc, tsc");
    if (K < 1) throw Error("K must be at least 1");
    if (W < 1) throw Error("W must be at least 1");
}

std::size_t anomaly_budget(double rate, std::size_t split_size) {
    // The tolerance keeps products such as 0.05 * 1000 from rounding up.
    return static_cast<std::size_t>(std::ceil(rate * static_cast<double>(split_size) - 1e-9));
}

ReferenceSampler::ReferenceSampler(const EventLog& split) {
    if (split.empty()) throw Error("cannot sample a reference edge from an empty split");
    std::map<std::pair<NodeId, NodeId>, std::size_t> slot;
    for (std::size_t i = 0; i < split.size(); ++i) {
        const TemporalEdge& e = split[i].edge;
        auto [it, inserted] = slot.try_emplace({e.source, e.destination}, pair_events_.size());
        if (inserted) pair_events_.emplace_back();
        pair_events_[it->second].push_back(i);
    }
    cumulative_.reserve(pair_events_.size());
    double total = 0.0;
    for (const auto& events : pair_events_) {
        total += 1.0 / std::sqrt(static_cast<double>(events.size()));
        cumulative_.push_back(total);
    }
}

std::size_t ReferenceSampler::sample(Rng& rng) const {
    const double u = uniform_real(rng, 0.0, cumulative_.back());
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    const auto& events = pair_events_[static_cast<std::size_t>(it - cumulative_.begin())];
    return events[uniform_index(rng, events.size())];
}

std::vector<std::pair<std::size_t, double>> ReferenceSampler::pair_probabilities() const {
    std::vector<std::pair<std::size_t, double>> out;
    double previous = 0.0;
    for (std::size_t p = 0; p < pair_events_.size(); ++p) {
        out.emplace_back(pair_events_[p].front(), (cumulative_[p] - previous) / cumulative_.back());
        previous = cumulative_[p];
    }
    return out;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::size_t select_contextual_candidate(std::span<const double> reference,
                                        std::span<const std::span<const double>> candidates,
                                        bool maximize_distance) {
    if (candidates.empty()) throw Error("no candidate messages to choose from");
    std::size_t best = 0;
    double best_sim = cosine_similarity(reference, candidates[0]);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const double sim = cosine_similarity(reference, candidates[i]);
        if (maximize_distance ? sim < best_sim : sim > best_sim) {
            best = i;
            best_sim = sim;
        }
    }
    return best;
}

TemporalEdge perturb_timestamp(const TemporalEdge& e, double t_lo, double t_hi, Rng& rng) {
    if (!(t_lo < t_hi)) {
        throw Error(fmt::format("degenerate time range [{}, {}] for timestamp perturbation", t_lo,
                                t_hi));
    }
    TemporalEdge out = e;
    out.timestamp = uniform_real(rng, t_lo, t_hi);
    return out;
}

TemporalEdge perturb_message(const TemporalEdge& e, std::span<const std::span<const double>> pool,
                             std::size_t K, Rng& rng, bool maximize_distance) {
    if (e.message.empty()) {
        throw Error("contextual anomalies unavailable: the graph has no edge messages");
    }
    if (K < 1 || pool.size() < K) {
        throw Error(fmt::format("message pool of {} cannot supply K = {} candidates", pool.size(), K));
    }
    std::vector<std::size_t> picked;
    picked.reserve(K);
    if (2 * K > pool.size()) {
        std::vector<std::size_t> order(pool.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        for (std::size_t i = 0; i < K; ++i) {
            std::swap(order[i], order[i + uniform_index(rng, order.size() - i)]);
            picked.push_back(order[i]);
        }
    } else {
        while (picked.size() < K) {
            const std::size_t idx = uniform_index(rng, pool.size());
            if (std::find(picked.begin(), picked.end(), idx) == picked.end()) picked.push_back(idx);
        }
    }
    std::vector<std::span<const double>> candidates;
    candidates.reserve(K);
    for (std::size_t idx : picked) candidates.push_back(pool[idx]);
    const std::size_t choice = select_contextual_candidate(e.message, candidates, maximize_distance);

    TemporalEdge out = e;
    out.message.assign(candidates[choice].begin(), candidates[choice].end());
    return out;
}

std::vector<std::size_t> destination_candidates(const EventLog& split, std::size_t reference_index,
                                                std::size_t window) {
    const std::size_t n = split.size();
    if (reference_index >= n) throw Error("reference index outside the split");
    if (window < 1) throw Error("window must be at least 1");
    if (n < window + 1) {
        throw Error(fmt::format("split of {} events is too small for a window of {}", n, window));
    }
    const TemporalEdge& ref = split[reference_index].edge;
    const double t = ref.timestamp;

    for (;;) {
        std::vector<std::size_t> admissible;
        std::size_t left = reference_index;  // next candidate on the left is left - 1
        std::size_t right = reference_index + 1;
        for (std::size_t taken = 0; taken < window; ++taken) {
            std::size_t chosen;
            if (left == 0) {
                chosen = right++;
            } else if (right >= n) {
                chosen = --left;
            } else if (t - split[left - 1].edge.timestamp <= split[right].edge.timestamp - t) {
                chosen = --left;
            } else {
                chosen = right++;
            }
            const TemporalEdge& c = split[chosen].edge;
            if (c.destination != ref.destination && c.destination != ref.source) {
                admissible.push_back(chosen);
            }
        }
        if (!admissible.empty()) {
            std::sort(admissible.begin(), admissible.end());
            return admissible;
        }
        if (window >= n - 1) {
            throw Error(fmt::format(
                "no event in the split offers a new destination for reference {}", reference_index));
        }
        window = std::min(2 * window, n - 1);
    }
}

StructuralPerturbation perturb_destination(const EventLog& split, std::size_t reference_index,
                                           std::size_t window,
                                           std::span<const std::span<const double>> pool,
                                           std::size_t K, Rng& rng, bool maximize_distance) {
    const auto candidates = destination_candidates(split, reference_index, window);
    const std::size_t second = candidates[uniform_index(rng, candidates.size())];
    StructuralPerturbation out{split[reference_index].edge, second};
    out.edge.destination = split[second].edge.destination;
    if (!out.edge.message.empty()) {
        out.edge = perturb_message(out.edge, pool, K, rng, maximize_distance);
    }
    return out;
}

TemporalEdge random_edge(std::size_t node_count, double t_lo, double t_hi,
                         std::span<const std::span<const double>> pool, Rng& rng) {
    if (node_count < 2) throw Error("random edges need at least two nodes");
    if (!(t_lo < t_hi)) {
        throw Error(fmt::format("degenerate time range [{}, {}] for a random edge", t_lo, t_hi));
    }
    TemporalEdge e;
    e.source = static_cast<NodeId>(uniform_index(rng, node_count));
    std::size_t dst = uniform_index(rng, node_count - 1);
    if (dst >= e.source) ++dst;
    e.destination = static_cast<NodeId>(dst);
    e.timestamp = uniform_real(rng, t_lo, t_hi);
    if (!pool.empty() && !pool.front().empty()) {
        const auto& m = pool[uniform_index(rng, pool.size())];
        e.message.assign(m.begin(), m.end());
    }
    return e;
}

InjectionResult inject_detailed(const EventLog& split, const InjectionConfig& config) {
    config.validate();
    if (split.anomaly_count() != 0) throw Error("injection expects a benign split");
    const AnomalyLabel type = config.anomaly_type;
    const bool contextual = type == AnomalyLabel::kContextual ||
                            type == AnomalyLabel::kTemporalContextual;
    if (contextual && split.message_dim() == 0) {
        throw Error("contextual anomalies unavailable: the graph has no edge messages");
    }

    InjectionResult result;
    const std::size_t count = anomaly_budget(config.rate, split.size());
    if (count == 0) {
        result.log = split;
        return result;
    }

    std::vector<std::span<const double>> pool;
    pool.reserve(split.size());
    for (const LabeledEdge& e : split.events()) pool.emplace_back(e.edge.message);
    const auto [t_lo, t_hi] = *split.time_range();

    std::optional<ReferenceSampler> sampler;
    if (type != AnomalyLabel::kTemporalStructuralContextual) sampler.emplace(split);

    result.records.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng = make_rng(config.seed, streams::kInjection, i);
        InjectionRecord record;
        record.type = type;
        if (sampler) record.reference = sampler->sample(rng);
        const TemporalEdge* ref = sampler ? &split[*record.reference].edge : nullptr;
        switch (type) {
            case AnomalyLabel::kTemporal:
                record.anomaly = perturb_timestamp(*ref, t_lo, t_hi, rng);
                break;
            case AnomalyLabel::kContextual:
                record.anomaly = perturb_message(*ref, pool, config.K, rng, config.maximize_distance);
                break;
            case AnomalyLabel::kTemporalContextual:
                record.anomaly = perturb_message(perturb_timestamp(*ref, t_lo, t_hi, rng), pool,
                                                 config.K, rng, config.maximize_distance);
                break;
            case AnomalyLabel::kStructuralContextual: {
                auto sc = perturb_destination(split, *record.reference, config.W, pool, config.K,
                                              rng, config.maximize_distance);
                record.anomaly = std::move(sc.edge);
                record.second_reference = sc.second_reference;
                break;
            }
            case AnomalyLabel::kTemporalStructuralContextual:
                record.anomaly = random_edge(split.node_count(), t_lo, t_hi, pool, rng);
                break;
            case AnomalyLabel::kBenign:
                break;
        }
        result.records.push_back(std::move(record));
    }

    std::vector<LabeledEdge> events = split.events();
    events.reserve(events.size() + count);
    for (const auto& r : result.records) events.push_back({r.anomaly, type});
    result.log = EventLog::build(std::move(events), split.node_count(), split.message_dim());
    return result;
}

EventLog inject(const EventLog& split, const InjectionConfig& config) {
    return inject_detailed(split, config).log;
}

}  // namespace ctdg

#include "ctdg/neg_sampler.hpp"

#include <fmt/format.h>

namespace ctdg {

std::string_view perturbation_name(PerturbationKind kind) {
    switch (kind) {
        case PerturbationKind::kDestination: return "destination";
        case PerturbationKind::kTimestamp: return "timestamp";
        case PerturbationKind::kMessage: return "message";
    }
    return "unknown";
}

namespace {

void check_batch(const Batch& batch, const NegativeSamplerOptions& options) {
    if (batch.node_count < 2) throw Error("negative sampling needs at least two nodes");
    if (options.strict_destination && batch.node_count < 3) {
        throw Error("strict destination sampling needs at least three nodes");
    }
    for (const TemporalEdge& e : batch.positives) {
        if (e.source >= batch.node_count || e.destination >= batch.node_count) {
            throw Error(fmt::format("positive edge ({}, {}) outside {} nodes", e.source,
                                    e.destination, batch.node_count));
        }
    }
}

NodeId draw_destination(const TemporalEdge& positive, std::size_t node_count, Rng& rng,
                        const NegativeSamplerOptions& options) {
    for (;;) {
        const auto z = static_cast<NodeId>(uniform_index(rng, node_count));
        if (!options.strict_destination || (z != positive.source && z != positive.destination)) {
            return z;
        }
    }
}

}  // namespace

std::vector<TemporalEdge> sample_negative_random(const Batch& batch, Rng& rng,
                                                 const NegativeSamplerOptions& options) {
    check_batch(batch, options);
    std::vector<TemporalEdge> out;
    out.reserve(batch.positives.size());
    for (const TemporalEdge& positive : batch.positives) {
        TemporalEdge negative = positive;
        negative.destination = draw_destination(positive, batch.node_count, rng, options);
        out.push_back(std::move(negative));
    }
    return out;
}

std::vector<NegativeEdge> sample_negative_mixed(const Batch& batch, Rng& rng,
                                                const NegativeSamplerOptions& options) {
    check_batch(batch, options);
    if (batch.t_hi < batch.t_lo) throw Error("batch time range is inverted");
    const std::size_t n = batch.positives.size();
    std::vector<NegativeEdge> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const TemporalEdge& positive = batch.positives[i];
        const std::size_t kinds = positive.message.empty() ? 2 : 3;
        auto kind = static_cast<PerturbationKind>(uniform_index(rng, kinds));
        if (kind == PerturbationKind::kMessage && n == 1) kind = PerturbationKind::kDestination;

        NegativeEdge negative{positive, kind};
        switch (kind) {
            case PerturbationKind::kDestination:
                negative.edge.destination = draw_destination(positive, batch.node_count, rng, options);
                break;
            case PerturbationKind::kTimestamp:
                negative.edge.timestamp = uniform_real(rng, batch.t_lo, batch.t_hi);
                break;
            case PerturbationKind::kMessage: {
                std::size_t j = uniform_index(rng, n - 1);
                if (j >= i) ++j;
                negative.edge.message = batch.positives[j].message;
                break;
            }
        }
        out.push_back(std::move(negative));
    }
    return out;
}

}  // namespace ctdg

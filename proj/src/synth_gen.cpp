#include "ctdg/synth_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <unordered_set>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/discrete_distribution.hpp>
#include <fmt/format.h>

namespace ctdg {

void GeneratorConfig::validate() const {
    if (communities < 1) throw Error("communities must be at least 1");
    if (node_count < communities) {
        throw Error(fmt::format("node_count {} must be at least communities {}", node_count,
                                communities));
    }
    if (node_count > std::numeric_limits<NodeId>::max()) throw Error("node_count too large");
    if (classes < 1) throw Error("classes must be at least 1");
    if (message_dim > 0 && message_dim % (classes * classes) != 0) {
        throw Error(fmt::format("message_dim {} must be divisible by classes^2 = {}", message_dim,
                                classes * classes));
    }
    if (!(avg_occurrences > 0.0) || !std::isfinite(avg_occurrences)) {
        throw Error("avg_occurrences must be positive");
    }
    if (!(time_span > 0.0) || !std::isfinite(time_span)) throw Error("time_span must be positive");
    if (!(span_mean > 0.0) || !std::isfinite(span_mean)) throw Error("span_mean must be positive");
    if (!(span_std >= 0.0) || !std::isfinite(span_std)) throw Error("span_std must be >= 0");
    if (!(timestamp_noise_fraction >= 0.0)) throw Error("timestamp_noise_fraction must be >= 0");
    if (!(message_noise >= 0.0)) throw Error("message_noise must be >= 0");
    if (!(intra_inter_ratio > 0.0)) throw Error("intra_inter_ratio must be positive");
}

std::size_t GeneratorConfig::static_edge_count() const {
    return static_cast<std::size_t>(
        std::ceil(static_cast<double>(temporal_edge_target) / avg_occurrences));
}

std::vector<std::uint32_t> assign_communities(std::size_t node_count, std::size_t communities) {
    std::vector<std::uint32_t> community(node_count);
    for (std::size_t i = 0; i < node_count; ++i) {
        community[i] = static_cast<std::uint32_t>(1 + (i * communities) / node_count);
    }
    return community;
}

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Draws `count` distinct pairs uniformly from a group. Dense requests
// enumerate the group and partially shuffle it; sparse ones reject repeats.
template <typename Draw, typename Enumerate>
void sample_distinct_pairs(std::size_t count, std::uint64_t group_size, Rng& rng, Draw draw,
                           Enumerate enumerate, std::vector<StaticEdge>& out) {
    if (count == 0) return;
    if (2 * static_cast<std::uint64_t>(count) > group_size) {
        std::vector<StaticEdge> all;
        all.reserve(group_size);
        enumerate(all);
        for (std::size_t i = 0; i < count; ++i) {
            std::swap(all[i], all[i + uniform_index(rng, all.size() - i)]);
            out.push_back(all[i]);
        }
        return;
    }
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(count * 2);
    while (seen.size() < count) {
        const StaticEdge e = draw();
        if (seen.insert(pair_key(e.source, e.destination)).second) out.push_back(e);
    }
}

}  // namespace

StaticGraph generate_static_graph(std::size_t node_count, std::size_t target_edges,
                                  std::size_t communities, double intra_inter_ratio, Rng& rng) {
    if (communities < 1 || node_count < communities) {
        throw Error("static graph needs node_count >= communities >= 1");
    }
    if (!(intra_inter_ratio > 0.0)) throw Error("intra_inter_ratio must be positive");
    const std::uint64_t n = node_count;
    const std::uint64_t total_pairs = n * (n - 1) / 2;
    if (target_edges > total_pairs) {
        throw Error(fmt::format("cannot place {} distinct edges on {} nodes (max {})", target_edges,
                                node_count, total_pairs));
    }

    StaticGraph graph;
    graph.community = assign_communities(node_count, communities);

    // Contiguous blocks: community c (1-based) spans [block_begin[c-1], block_begin[c]).
    std::vector<std::size_t> block_begin(communities + 1, node_count);
    for (std::size_t i = node_count; i-- > 0;) block_begin[graph.community[i] - 1] = i;
    std::vector<double> block_pairs(communities);
    std::uint64_t intra_pairs = 0;
    for (std::size_t c = 0; c < communities; ++c) {
        const std::uint64_t s = block_begin[c + 1] - block_begin[c];
        block_pairs[c] = static_cast<double>(s * (s - 1) / 2);
        intra_pairs += s * (s - 1) / 2;
    }
    const std::uint64_t inter_pairs = total_pairs - intra_pairs;

    // The intra-community share is Binomial(target, ratio / (ratio + 1)),
    // clamped to what each group can hold; pairs are then uniform within
    // their group, so the expected intra:inter count ratio is the requested one.
    std::size_t intra_count = 0;
    {
        const double p_intra = std::isinf(intra_inter_ratio)
                                   ? 1.0
                                   : intra_inter_ratio / (intra_inter_ratio + 1.0);
        if (target_edges > 0) {
            intra_count = p_intra >= 1.0
                              ? target_edges
                              : static_cast<std::size_t>(
                                    boost::random::binomial_distribution<long long, double>(
                                        static_cast<long long>(target_edges), p_intra)(rng));
        }
        const std::uint64_t min_intra = target_edges > inter_pairs ? target_edges - inter_pairs : 0;
        intra_count = static_cast<std::size_t>(
            std::clamp<std::uint64_t>(intra_count, min_intra, std::min<std::uint64_t>(intra_pairs, target_edges)));
    }
    const std::size_t inter_count = target_edges - intra_count;

    graph.edges.reserve(target_edges);
    if (intra_count > 0) {
        boost::random::discrete_distribution<std::size_t, double> pick_block(block_pairs.begin(),
                                                                             block_pairs.end());
        auto draw = [&]() {
            const std::size_t c = pick_block(rng);
            const std::size_t begin = block_begin[c];
            const std::size_t size = block_begin[c + 1] - begin;
            const std::size_t a = uniform_index(rng, size);
            std::size_t b = uniform_index(rng, size - 1);
            if (b >= a) ++b;
            return StaticEdge{static_cast<NodeId>(begin + a), static_cast<NodeId>(begin + b)};
        };
        auto enumerate = [&](std::vector<StaticEdge>& all) {
            for (std::size_t c = 0; c < communities; ++c) {
                for (std::size_t a = block_begin[c]; a < block_begin[c + 1]; ++a) {
                    for (std::size_t b = a + 1; b < block_begin[c + 1]; ++b) {
                        all.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
                    }
                }
            }
        };
        sample_distinct_pairs(intra_count, intra_pairs, rng, draw, enumerate, graph.edges);
    }
    if (inter_count > 0) {
        auto draw = [&]() {
            for (;;) {
                const std::size_t a = uniform_index(rng, node_count);
                const std::size_t b = uniform_index(rng, node_count);
                if (graph.community[a] != graph.community[b]) {
                    return StaticEdge{static_cast<NodeId>(a), static_cast<NodeId>(b)};
                }
            }
        };
        auto enumerate = [&](std::vector<StaticEdge>& all) {
            for (std::size_t a = 0; a < node_count; ++a) {
                for (std::size_t b = block_begin[graph.community[a]]; b < node_count; ++b) {
                    all.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
                }
            }
        };
        sample_distinct_pairs(inter_count, inter_pairs, rng, draw, enumerate, graph.edges);
    }
    return graph;
}

std::vector<double> expected_message(std::size_t j, std::size_t k, std::size_t classes,
                                     std::size_t message_dim) {
    if (classes < 1 || j < 1 || j > classes || k < 1 || k > classes) {
        throw Error(fmt::format("class pair ({}, {}) outside 1..{}", j, k, classes));
    }
    if (message_dim % (classes * classes) != 0) {
        throw Error(fmt::format("message_dim {} must be divisible by classes^2 = {}", message_dim,
                                classes * classes));
    }
    const std::size_t block = message_dim / (classes * classes);
    std::vector<double> mean(message_dim, 0.0);
    const std::size_t begin = block * (classes * (j - 1) + k - 1);
    std::fill(mean.begin() + static_cast<std::ptrdiff_t>(begin),
              mean.begin() + static_cast<std::ptrdiff_t>(begin + block), 1.0);
    return mean;
}

TimelineDraw draw_timeline(const GeneratorConfig& config, Rng& rng) {
    TimelineDraw draw;
    draw.occurrences = poisson(rng, config.avg_occurrences);

    const double m2 = config.span_mean * config.span_mean;
    const double s2 = config.span_std * config.span_std;
    const double log_mean = std::log(m2 / std::sqrt(m2 + s2));
    const double log_sd = std::sqrt(std::log1p(s2 / m2));
    auto sample_span = [&] {
        return log_sd > 0.0 ? lognormal(rng, log_mean, log_sd) : config.span_mean;
    };

    double span = sample_span();
    for (int attempt = 0; attempt < 100 && span >= config.time_span; ++attempt) span = sample_span();
    if (span >= config.time_span) {
        draw.span = config.time_span;
        draw.start = 0.0;
        return draw;
    }
    draw.span = span;
    draw.start = uniform_real(rng, 0.0, config.time_span - span);
    return draw;
}

std::vector<TemporalEdge> realize_timeline(const StaticEdge& edge, const TimelineDraw& draw,
                                           std::span<const double> mean_message,
                                           const GeneratorConfig& config, Rng& rng) {
    std::vector<TemporalEdge> out;
    if (draw.occurrences <= 0) return out;
    const auto count = static_cast<std::size_t>(draw.occurrences);
    out.reserve(count);
    const double noise_sd =
        config.timestamp_noise_fraction * draw.span / static_cast<double>(draw.occurrences);
    const double step = count > 1 ? draw.span / static_cast<double>(count - 1) : 0.0;

    for (std::size_t i = 0; i < count; ++i) {
        TemporalEdge e;
        e.source = edge.source;
        e.destination = edge.destination;
        double t = draw.start + static_cast<double>(i) * step;
        if (noise_sd > 0.0) t += noise_sd * standard_normal(rng);
        e.timestamp = std::clamp(t, 0.0, config.time_span);
        e.message.assign(mean_message.begin(), mean_message.end());
        if (config.message_noise > 0.0) {
            for (double& x : e.message) x += config.message_noise * standard_normal(rng);
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<TemporalEdge> sample_edge_timeline(const StaticEdge& edge,
                                               std::span<const double> mean_message,
                                               const GeneratorConfig& config, Rng& rng) {
    const TimelineDraw draw = draw_timeline(config, rng);
    return realize_timeline(edge, draw, mean_message, config, rng);
}

GeneratedGraph generate_detailed(const GeneratorConfig& config, unsigned threads) {
    config.validate();
    GeneratedGraph result;

    Rng static_rng = make_rng(config.seed, streams::kStaticGraph);
    result.static_graph = generate_static_graph(config.node_count, config.static_edge_count(),
                                                config.communities, config.intra_inter_ratio,
                                                static_rng);

    Rng class_rng = make_rng(config.seed, streams::kClasses);
    auto& node_class = result.static_graph.node_class;
    node_class.resize(config.node_count);
    for (auto& c : node_class) c = static_cast<std::uint32_t>(1 + uniform_index(class_rng, config.classes));

    const std::size_t C = config.classes;
    std::vector<std::vector<double>> means;
    if (config.message_dim > 0) {
        means.reserve(C * C);
        for (std::size_t j = 1; j <= C; ++j) {
            for (std::size_t k = 1; k <= C; ++k) {
                means.push_back(expected_message(j, k, C, config.message_dim));
            }
        }
    }

    const auto& edges = result.static_graph.edges;
    std::vector<std::vector<TemporalEdge>> timelines(edges.size());
    result.draws.resize(edges.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng = make_rng(config.seed, streams::kTimeline, i);
            const StaticEdge& e = edges[i];
            std::span<const double> mean;
            if (!means.empty()) {
                mean = means[(node_class[e.source] - 1) * C + (node_class[e.destination] - 1)];
            }
            result.draws[i] = draw_timeline(config, rng);
            timelines[i] = realize_timeline(e, result.draws[i], mean, config, rng);
        }
    };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, edges.size() / 64)));
    if (workers <= 1) {
        work(0, edges.size());
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (edges.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = std::min(edges.size(), w * chunk);
            const std::size_t end = std::min(edges.size(), begin + chunk);
            pool.emplace_back(work, begin, end);
        }
    }

    std::size_t total = 0;
    for (const auto& t : timelines) total += t.size();
    std::vector<LabeledEdge> events;
    events.reserve(total);
    for (auto& t : timelines) {
        for (auto& e : t) events.push_back({std::move(e), AnomalyLabel::kBenign});
        t.clear();
        t.shrink_to_fit();
    }
    result.log = EventLog::build(std::move(events), config.node_count, config.message_dim);
    return result;
}

EventLog generate(const GeneratorConfig& config, unsigned threads) {
    return generate_detailed(config, threads).log;
}

}  // namespace ctdg

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "ctdg/anomaly_inject.hpp"
#include "ctdg/synth_gen.hpp"

namespace ctdg {
namespace {

GeneratorConfig small_config(std::uint64_t seed = 1) {
    GeneratorConfig c;
    c.node_count = 100;
    c.temporal_edge_target = 10'000;
    c.seed = seed;
    return c;
}

double intra_fraction(const StaticGraph& g) {
    std::size_t intra = 0;
    for (const auto& e : g.edges) intra += g.community[e.source] == g.community[e.destination];
    return static_cast<double>(intra) / static_cast<double>(g.edges.size());
}

TEST(ExpectedMessageTest, BlockLayout) {
    EXPECT_EQ(expected_message(1, 1, 2, 8), (std::vector<double>{1, 1, 0, 0, 0, 0, 0, 0}));
    EXPECT_EQ(expected_message(1, 2, 2, 8), (std::vector<double>{0, 0, 1, 1, 0, 0, 0, 0}));
    EXPECT_EQ(expected_message(2, 2, 2, 8), (std::vector<double>{0, 0, 0, 0, 0, 0, 1, 1}));
}

TEST(ExpectedMessageTest, DistinctPairsAreOrthogonal) {
    const std::size_t C = 5, D = 100;
    for (std::size_t a = 0; a < C * C; ++a) {
        const auto ma = expected_message(a / C + 1, a % C + 1, C, D);
        EXPECT_EQ(std::accumulate(ma.begin(), ma.end(), 0.0), 4.0);
        for (std::size_t b = a + 1; b < C * C; ++b) {
            const auto mb = expected_message(b / C + 1, b % C + 1, C, D);
            EXPECT_EQ(std::inner_product(ma.begin(), ma.end(), mb.begin(), 0.0), 0.0);
        }
    }
}

TEST(ExpectedMessageTest, RejectsBadArguments) {
    EXPECT_THROW(expected_message(0, 1, 2, 8), Error);
    EXPECT_THROW(expected_message(1, 3, 2, 8), Error);
    EXPECT_THROW(expected_message(1, 1, 2, 6), Error);
}

TEST(StaticGraphTest, UnboundedRatioKeepsEdgesInsideCommunities) {
    Rng rng(1);
    const StaticGraph g = generate_static_graph(4, 2, 2, std::numeric_limits<double>::infinity(), rng);
    ASSERT_EQ(g.edges.size(), 2u);
    EXPECT_EQ(intra_fraction(g), 1.0);
}

TEST(StaticGraphTest, SingleCommunity) {
    Rng rng(2);
    const StaticGraph g = generate_static_graph(30, 100, 1, 6.0, rng);
    EXPECT_EQ(g.edges.size(), 100u);
    EXPECT_EQ(intra_fraction(g), 1.0);
}

TEST(StaticGraphTest, SimpleGraphWithExactBudget) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        // 380 of 435 possible pairs forces the dense enumeration path.
        for (std::size_t target : {10u, 300u, 380u, 435u}) {
            const StaticGraph g = generate_static_graph(30, target, 4, 6.0, rng);
            ASSERT_EQ(g.edges.size(), target);
            std::set<std::pair<NodeId, NodeId>> seen;
            for (const auto& e : g.edges) {
                EXPECT_NE(e.source, e.destination);
                EXPECT_TRUE(seen.insert(std::minmax(e.source, e.destination)).second);
            }
        }
    }
}

TEST(StaticGraphTest, CommunitiesNearEqual) {
    for (std::size_t n : {10u, 97u, 1000u}) {
        for (std::size_t m : {1u, 3u, 7u, 10u}) {
            std::map<std::uint32_t, std::size_t> sizes;
            for (auto c : assign_communities(n, m)) ++sizes[c];
            ASSERT_EQ(sizes.size(), m);
            std::size_t lo = n, hi = 0;
            for (auto [c, s] : sizes) {
                EXPECT_GE(c, 1u);
                EXPECT_LE(c, m);
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
            EXPECT_LE(hi - lo, 1u);
        }
    }
}

TEST(StaticGraphTest, InfeasibleBudget) {
    Rng rng(0);
    EXPECT_THROW(generate_static_graph(4, 7, 2, 6.0, rng), Error);
}

// Each static edge is intra-community with probability r/(r+1), so with
// budget to spare the intra count is Binomial(target, 6/7). Check the mean
// over 30 seeds against 6/7 within four standard errors and each run within
// five binomial standard deviations.
TEST(StaticGraphTest, IntraFractionMatchesRatio) {
    const std::size_t N = 100, M = 10, target = 300;
    const double p = 6.0 / 7.0;
    const double sd = std::sqrt(p * (1 - p) / static_cast<double>(target));
    double mean = 0.0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng(seed);
        const double f = intra_fraction(generate_static_graph(N, target, M, 6.0, rng));
        EXPECT_NEAR(f, p, 5 * sd) << "seed " << seed;
        mean += f / 30;
    }
    EXPECT_NEAR(mean, p, 4 * sd / std::sqrt(30.0));
}

TEST(TimelineTest, ZeroOccurrencesIsEmpty) {
    Rng rng(0);
    const GeneratorConfig c = small_config();
    EXPECT_TRUE(realize_timeline({0, 1}, {0, 10.0, 5.0}, {}, c, rng).empty());
}

TEST(TimelineTest, SingleOccurrenceAtStart) {
    Rng rng(0);
    GeneratorConfig c = small_config();
    c.timestamp_noise_fraction = 0.0;
    const auto t = realize_timeline({0, 1}, {1, 10.0, 5.0}, {}, c, rng);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].timestamp, 5.0);
}

TEST(TimelineTest, NoiseFreeEvenSpacing) {
    Rng rng(0);
    GeneratorConfig c = small_config();
    c.timestamp_noise_fraction = 0.0;
    c.message_noise = 0.0;
    c.classes = 2;
    c.message_dim = 8;
    const auto mean = expected_message(1, 2, 2, 8);
    const auto t = realize_timeline({3, 4}, {3, 10.0, 0.0}, mean, c, rng);
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(t[0].timestamp, 0.0);
    EXPECT_EQ(t[1].timestamp, 5.0);
    EXPECT_EQ(t[2].timestamp, 10.0);
    for (const auto& e : t) {
        EXPECT_EQ(e.message, mean);
        EXPECT_EQ(e.source, 3u);
        EXPECT_EQ(e.destination, 4u);
    }
}

TEST(TimelineTest, TimestampsClampedToHorizon) {
    Rng rng(4);
    GeneratorConfig c = small_config();
    c.time_span = 100.0;
    c.timestamp_noise_fraction = 50.0;  // jitter far beyond the span
    const auto t = realize_timeline({0, 1}, {200, 100.0, 0.0}, {}, c, rng);
    for (const auto& e : t) {
        EXPECT_GE(e.timestamp, 0.0);
        EXPECT_LE(e.timestamp, 100.0);
    }
}

TEST(TimelineTest, OversizedSpanIsClamped) {
    Rng rng(0);
    GeneratorConfig c = small_config();
    c.time_span = 10.0;
    c.span_mean = 1e3;
    c.span_std = 1.0;
    const TimelineDraw d = draw_timeline(c, rng);
    EXPECT_EQ(d.span, 10.0);
    EXPECT_EQ(d.start, 0.0);
}

TEST(GeneratorTest, NoEdgesGivesEmptyLog) {
    GeneratorConfig c = small_config();
    c.temporal_edge_target = 0;
    EXPECT_TRUE(generate(c).empty());
}

TEST(GeneratorTest, DeterministicAcrossRunsAndThreads) {
    const GeneratorConfig c = small_config(42);
    const EventLog a = generate(c, 1);
    const EventLog b = generate(c, 1);
    const EventLog d = generate(c, 4);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, d);
    EXPECT_NE(a, generate(small_config(43), 1));
}

TEST(GeneratorTest, MeanOccurrencesNearLambda) {
    const GeneratedGraph g = generate_detailed(small_config(7));
    ASSERT_EQ(g.static_graph.edges.size(), 200u);
    const double mean = static_cast<double>(g.log.size()) / 200.0;
    EXPECT_NEAR(mean, 50.0, 3.0);
}

TEST(GeneratorTest, TotalEventsConcentrate) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const EventLog log = generate(small_config(seed));
        EXPECT_NEAR(static_cast<double>(log.size()), 1e4, 5.0 * std::sqrt(1e4));
    }
}

TEST(GeneratorTest, LogInvariantsHold) {
    const EventLog log = generate(small_config(3));
    EXPECT_EQ(log.anomaly_count(), 0u);
    EXPECT_EQ(EventLog::build(log.events(), log.node_count(), log.message_dim()), log);
    for (const auto& e : log.events()) {
        EXPECT_LE(e.edge.timestamp, 1e8);
        EXPECT_EQ(e.edge.message.size(), 100u);
    }
}

TEST(GeneratorTest, SpanMomentsFollowConfig) {
    GeneratorConfig c = small_config(9);
    c.node_count = 1000;
    c.temporal_edge_target = 100'000;
    const GeneratedGraph g = generate_detailed(c);
    std::vector<double> spans;
    for (const auto& d : g.draws) spans.push_back(d.span / c.time_span);
    ASSERT_GE(spans.size(), 1000u);
    const double mean = std::accumulate(spans.begin(), spans.end(), 0.0) / spans.size();
    double ss = 0.0;
    for (double s : spans) ss += (s - mean) * (s - mean);
    const double sd = std::sqrt(ss / spans.size());
    EXPECT_GE(mean, 0.008);
    EXPECT_LE(mean, 0.012);
    EXPECT_GE(sd, 0.003);
    EXPECT_LE(sd, 0.007);
}

TEST(GeneratorTest, MessagesSeparateByClassPair) {
    const GeneratedGraph g = generate_detailed(small_config(5));
    const auto& cls = g.static_graph.node_class;
    // One representative message per class pair, compared with later ones.
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<const TemporalEdge*>> by_pair;
    for (const auto& e : g.log.events()) {
        by_pair[{cls[e.edge.source], cls[e.edge.destination]}].push_back(&e.edge);
    }
    double same = 0.0, cross = 0.0;
    std::size_t n_same = 0, n_cross = 0;
    for (auto a = by_pair.begin(); a != by_pair.end(); ++a) {
        const auto& ea = a->second;
        for (std::size_t i = 1; i < std::min<std::size_t>(ea.size(), 50); ++i) {
            same += cosine_similarity(ea[0]->message, ea[i]->message);
            ++n_same;
        }
        for (auto b = std::next(a); b != by_pair.end(); ++b) {
            cross += std::abs(cosine_similarity(ea[0]->message, b->second[0]->message));
            ++n_cross;
        }
    }
    ASSERT_GT(n_same, 0u);
    ASSERT_GT(n_cross, 0u);
    EXPECT_GE(same / n_same, 0.9);
    EXPECT_LE(cross / n_cross, 0.1);
}

TEST(GeneratorConfigTest, Validation) {
    GeneratorConfig c = small_config();
    c.message_dim = 30;
    EXPECT_THROW(c.validate(), Error);
    c = small_config();
    c.communities = 200;
    EXPECT_THROW(c.validate(), Error);
    c = small_config();
    c.avg_occurrences = 0.0;
    EXPECT_THROW(c.validate(), Error);
    c = small_config();
    c.message_dim = 0;
    EXPECT_NO_THROW(c.validate());
}

}  // namespace
}  // namespace ctdg

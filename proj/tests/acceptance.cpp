// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "cli_pipeline.hpp"
#include "ctdg/anomaly_inject.hpp"
#include "ctdg/config_json.hpp"
#include "ctdg/edgebank.hpp"
#include "ctdg/graph_stats.hpp"
#include "ctdg/metrics.hpp"
#include "ctdg/neg_sampler.hpp"
#include "ctdg/splits.hpp"
#include "ctdg/synth_gen.hpp"
#include "metric_oracles.hpp"

namespace {

using namespace ctdg;

struct Outcome {
    bool pass = false;
    std::string detail;
};

GeneratorConfig desk_config() {
    GeneratorConfig c;
    c.node_count = 1000;
    c.communities = 10;
    c.temporal_edge_target = 100'000;
    c.avg_occurrences = 50.0;
    c.classes = 5;
    c.message_dim = 100;
    c.message_noise = 0.05;
    c.time_span = 1e8;
    c.span_mean = 1e6;
    c.span_std = 5e5;
    c.seed = 1;
    return c;
}

const GeneratedGraph& desk_graph() {
    static const GeneratedGraph g = generate_detailed(desk_config());
    return g;
}

Outcome edgebank_reproduction() {
    const auto start = std::chrono::steady_clock::now();
    const EventLog log = generate(desk_config(), 1);
    const Splits s = chronological_split(log);
    const EventLog history[] = {s.train, s.val};
    EdgeBankMemory memory;
    memory.fit(concatenate(history));

    struct Range {
        AnomalyLabel type;
        double lo, hi;
    };
    const Range ranges[] = {{AnomalyLabel::kTemporalStructuralContextual, 0.95, 1.0},
                            {AnomalyLabel::kStructuralContextual, 0.90, 1.0},
                            {AnomalyLabel::kContextual, 0.45, 0.55},
                            {AnomalyLabel::kTemporal, 0.52, 0.72},
                            {AnomalyLabel::kTemporalContextual, 0.52, 0.72}};
    Outcome o{true, ""};
    for (const Range& r : ranges) {
        InjectionConfig ic;
        ic.anomaly_type = r.type;
        ic.seed = 7;
        const double a = auc(ScoredSet::from_stream(evaluate_stream(memory, inject(s.test, ic))));
        const bool ok = a >= r.lo && a <= r.hi;
        o.pass = o.pass && ok;
        o.detail += fmt::format("{}={:.4f} ", label_name(r.type), a);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.pass = o.pass && seconds <= 120.0;
    o.detail += fmt::format("runtime={:.1f}s (single thread)", seconds);
    return o;
}

Outcome generator_moments() {
    const GeneratorConfig c = desk_config();
    const GeneratedGraph& g = desk_graph();
    const double pairs = static_cast<double>(g.draws.size());
    double occ = 0.0, span = 0.0, span_sq = 0.0;
    for (const auto& d : g.draws) {
        occ += static_cast<double>(d.occurrences);
        span += d.span / c.time_span;
        span_sq += (d.span / c.time_span) * (d.span / c.time_span);
    }
    const double mean_occ = occ / pairs;
    const double span_mean = span / pairs;
    const double span_std = std::sqrt(span_sq / pairs - span_mean * span_mean);
    std::size_t intra = 0;
    for (const auto& e : g.static_graph.edges) {
        intra += g.static_graph.community[e.source] == g.static_graph.community[e.destination];
    }
    const double intra_frac = static_cast<double>(intra) / pairs;
    const double occ_tol = 3.0 * std::sqrt(c.avg_occurrences / pairs);

    const bool ok = g.log.size() >= 1000 && std::abs(mean_occ - c.avg_occurrences) <= occ_tol &&
                    span_mean >= 0.008 && span_mean <= 0.012 && span_std >= 0.003 &&
                    span_std <= 0.007 && std::abs(intra_frac - 6.0 / 7.0) <= 0.05;
    return {ok, fmt::format("events={} mean_occ={:.3f} (tol {:.3f}) span_mean={:.5f} span_std={:.5f} "
                            "intra={:.4f}",
                            g.log.size(), mean_occ, occ_tol, span_mean, span_std, intra_frac)};
}

Outcome message_separability() {
    const GeneratedGraph& g = desk_graph();
    const auto& cls = g.static_graph.node_class;
    Rng rng = make_rng(99, 0, 0);
    double within = 0.0, cross = 0.0;
    std::size_t n_within = 0, n_cross = 0;
    const std::size_t n = g.log.size();
    while (n_within < 20'000 || n_cross < 20'000) {
        const TemporalEdge& a = g.log[uniform_index(rng, n)].edge;
        const TemporalEdge& b = g.log[uniform_index(rng, n)].edge;
        if (&a == &b) continue;
        const bool same = cls[a.source] == cls[b.source] && cls[a.destination] == cls[b.destination];
        const double cs = cosine_similarity(a.message, b.message);
        if (same && n_within < 20'000) {
            within += cs;
            ++n_within;
        } else if (!same && n_cross < 20'000) {
            cross += std::abs(cs);
            ++n_cross;
        }
    }
    within /= static_cast<double>(n_within);
    cross /= static_cast<double>(n_cross);
    return {within >= 0.9 && cross <= 0.1,
            fmt::format("within={:.4f} cross={:.4f} over {} + {} pairs", within, cross, n_within, n_cross)};
}

Outcome metric_oracles() {
    Rng rng = make_rng(4, 0, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + uniform_index(rng, 999);
        const std::size_t levels = 1 + uniform_index(rng, 50);
        const double positive_rate = uniform_real(rng, 0.05, 0.95);
        std::vector<double> s(n);
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = trial % 2 ? standard_normal(rng) : static_cast<double>(uniform_index(rng, levels));
            y[i] = uniform_real(rng, 0.0, 1.0) < positive_rate;
        }
        y[0] = 1;
        y[1] = 0;
        const ScoredSet set = ScoredSet::from_binary(s, y);
        const std::size_t k = 1 + uniform_index(rng, n);
        const std::size_t positives = set.positives();
        worst = std::max({worst, std::abs(auc(set) - testing::oracle_auc(s, y)),
                          std::abs(average_precision(set) - testing::oracle_ap(s, y)),
                          std::abs(recall_at_k(set, k) - testing::oracle_recall(s, y, k)),
                          std::abs(recall_at_k(set) - testing::oracle_recall(s, y, positives))});
    }
    return {worst <= 1e-12, fmt::format("200 sets, max abs deviation {:.3g}", worst)};
}

Outcome injection_purity() {
    const EventLog& split = chronological_split(desk_graph().log).test;
    std::size_t violations = 0;
    std::string detail;
    const auto [t_lo, t_hi] = *split.time_range();
    for (AnomalyLabel type : kAnomalyTypes) {
        InjectionConfig ic;
        ic.anomaly_type = type;
        ic.rate = 1000.0 / static_cast<double>(split.size());
        ic.seed = 13;
        const InjectionResult r = inject_detailed(split, ic);
        for (const auto& rec : r.records) {
            if (type == AnomalyLabel::kTemporalStructuralContextual) {
                const TemporalEdge& e = rec.anomaly;
                violations += e.source == e.destination || e.timestamp < t_lo || e.timestamp > t_hi ||
                              e.message.size() != split.message_dim();
                continue;
            }
            const TemporalEdge& ref = split[*rec.reference].edge;
            const TemporalEdge& a = rec.anomaly;
            const bool src = a.source != ref.source, dst = a.destination != ref.destination,
                       ts = a.timestamp != ref.timestamp, msg = a.message != ref.message;
            bool ok = false;
            switch (type) {
                case AnomalyLabel::kTemporal: ok = !src && !dst && ts && !msg; break;
                case AnomalyLabel::kContextual: ok = !src && !dst && !ts && msg; break;
                case AnomalyLabel::kTemporalContextual: ok = !src && !dst && ts && msg; break;
                case AnomalyLabel::kStructuralContextual: ok = !src && dst && !ts && msg; break;
                default: break;
            }
            violations += !ok;
        }
        std::size_t labeled = 0;
        for (const auto& e : r.log.events()) labeled += e.label == type;
        violations += labeled != r.records.size();
        detail += fmt::format("{}:{} ", label_name(type), r.records.size());
        if (r.records.size() < 1000) ++violations;
    }
    return {violations == 0, detail + fmt::format("violations={}", violations)};
}

Outcome mixed_negatives() {
    const EventLog& train = chronological_split(desk_graph().log).train;
    std::vector<TemporalEdge> positives;
    for (std::size_t i = 0; i < 30'000; ++i) positives.push_back(train[i].edge);
    const auto [t_lo, t_hi] = *train.time_range();
    const Batch batch{positives, train.node_count(), t_lo, t_hi};

    Rng rng = make_rng(5, 0, 0);
    const auto negatives = sample_negative_mixed(batch, rng);
    std::array<double, 3> freq{};
    for (const auto& n : negatives) freq[static_cast<std::size_t>(n.kind)] += 1.0 / 30'000.0;
    bool ok = true;
    for (double f : freq) ok = ok && std::abs(f - 1.0 / 3.0) <= 0.02;

    // Exactness is checked with destinations that avoid the positive's endpoints.
    Rng strict_rng = make_rng(5, 0, 1);
    const auto strict = sample_negative_mixed(batch, strict_rng, {.strict_destination = true});
    std::size_t violations = 0;
    for (std::size_t run = 0; run < 2; ++run) {
        const auto& set = run == 0 ? negatives : strict;
        for (std::size_t i = 0; i < set.size(); ++i) {
            const TemporalEdge& p = positives[i];
            const TemporalEdge& q = set[i].edge;
            const bool src = q.source != p.source, dst = q.destination != p.destination,
                       ts = q.timestamp != p.timestamp, msg = q.message != p.message;
            const bool exact_field = [&] {
                switch (set[i].kind) {
                    case PerturbationKind::kDestination: return dst;
                    case PerturbationKind::kTimestamp: return ts;
                    case PerturbationKind::kMessage: return msg;
                }
                return false;
            }();
            const int changed = src + dst + ts + msg;
            // Undeclared fields never change; the declared one must change in strict mode.
            if (changed > 1 || (changed == 1 && !exact_field) || (run == 1 && !exact_field)) {
                ++violations;
            }
        }
    }
    return {ok && violations == 0,
            fmt::format("dst={:.4f} ts={:.4f} msg={:.4f} violations={}", freq[0], freq[1], freq[2],
                        violations)};
}

Outcome determinism(const std::filesystem::path& workdir) {
    const std::string config = generator_config_to_json(desk_config());
    const auto a = testing::run_pipeline(workdir / "run_a", config);
    const auto b = testing::run_pipeline(workdir / "run_b", config);
    std::size_t differing = 0;
    for (const auto& [name, content] : a) {
        const auto it = b.find(name);
        if (it == b.end() || it->second != content) ++differing;
    }
    const bool ok = a.size() == b.size() && differing == 0 && a.count("report.csv");
    return {ok, fmt::format("{} artifacts compared, {} differ", a.size(), differing)};
}

Outcome noise_free_stats() {
    GeneratorConfig c = desk_config();
    c.timestamp_noise_fraction = 0.0;
    c.message_noise = 0.0;
    const StatsReport r = compute_stats(generate(c));
    double worst_gap = 0.0, worst_msg = 0.0;
    for (const auto& s : r.inter_event_std) worst_gap = std::max(worst_gap, s.value);
    for (const auto& s : r.message_std) worst_msg = std::max(worst_msg, s.value);
    const double jdm = r.joint_degree.sum();
    const bool ok = worst_gap <= 1e-6 * c.time_span && worst_msg == 0.0 &&
                    std::abs(jdm - 1.0) <= 1e-9 && !r.inter_event_std.empty() && !r.message_std.empty();
    return {ok, fmt::format("max inter-event std={:.3g} max message std={:.3g} jdm sum-1={:.3g}",
                            worst_gap, worst_msg, jdm - 1.0)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app("Acceptance checks");
    std::string workdir = (std::filesystem::temp_directory_path() / "ctdg_acceptance").string();
    app.add_option("--workdir", workdir, "Scratch directory for pipeline artifacts");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"EdgeBank per-type AUC at desk scale", edgebank_reproduction},
        {"generator moments", generator_moments},
        {"message separability", message_separability},
        {"metric oracle equivalence", metric_oracles},
        {"injection type purity", injection_purity},
        {"mixed negative sampler", mixed_negatives},
        {"pipeline determinism", [&] { return determinism(workdir); }},
        {"noise-free stats", noise_free_stats},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << fmt::format("[{}] {} {}: {}", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                                 o.detail)
                  << std::endl;
    }
    std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

#include "ctdg/graph_stats.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>
#include "json.hpp"

#include "ctdg/csv_io.hpp"

namespace ctdg {

namespace {

std::uint64_t undirected_key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

NodeId key_first(std::uint64_t key) { return static_cast<NodeId>(key >> 32); }
NodeId key_second(std::uint64_t key) { return static_cast<NodeId>(key & 0xffffffffULL); }

std::vector<std::uint64_t> static_pairs(const EventLog& log) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> pairs;
    for (const LabeledEdge& e : log.events()) {
        const auto k = undirected_key(e.edge.source, e.edge.destination);
        if (seen.insert(k).second) pairs.push_back(k);
    }
    return pairs;
}

std::unordered_map<NodeId, std::size_t> degrees(const std::vector<std::uint64_t>& pairs) {
    std::unordered_map<NodeId, std::size_t> deg;
    for (auto k : pairs) {
        ++deg[key_first(k)];
        ++deg[key_second(k)];  // a self-loop adds two
    }
    return deg;
}

// Event indices grouped by unordered pair, pairs in order of first appearance.
std::vector<std::pair<std::uint64_t, std::vector<std::size_t>>> occurrences(const EventLog& log) {
    std::unordered_map<std::uint64_t, std::size_t> slot;
    std::vector<std::pair<std::uint64_t, std::vector<std::size_t>>> groups;
    for (std::size_t i = 0; i < log.size(); ++i) {
        const auto k = undirected_key(log[i].edge.source, log[i].edge.destination);
        auto [it, inserted] = slot.try_emplace(k, groups.size());
        if (inserted) groups.push_back({k, {}});
        groups[it->second].second.push_back(i);
    }
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return groups;
}

double population_std(std::span<const double> xs) {
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / n);
}

}  // namespace

double JointDegreeMatrix::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

DegreeHistogram degree_distribution(const EventLog& log) {
    DegreeHistogram hist;
    for (const auto& [node, d] : degrees(static_pairs(log))) ++hist[d];
    return hist;
}

JointDegreeMatrix joint_degree_matrix(const EventLog& log) {
    const auto pairs = static_pairs(log);
    if (pairs.empty()) throw Error("joint degree matrix of an empty graph is undefined");
    const auto deg = degrees(pairs);
    std::size_t max_degree = 0;
    for (const auto& [node, d] : deg) max_degree = std::max(max_degree, d);

    JointDegreeMatrix m;
    m.dim = max_degree + 1;
    m.values.assign(m.dim * m.dim, 0.0);
    const double weight = 1.0 / static_cast<double>(pairs.size());
    for (auto k : pairs) {
        const std::size_t a = deg.at(key_first(k));
        const std::size_t b = deg.at(key_second(k));
        if (a == b) {
            m.values[a * m.dim + b] += weight;
        } else {
            m.values[a * m.dim + b] += 0.5 * weight;
            m.values[b * m.dim + a] += 0.5 * weight;
        }
    }
    return m;
}

std::vector<PairStatistic> message_std_per_edge(const EventLog& log) {
    const std::size_t dim = log.message_dim();
    if (dim == 0) throw Error("message statistics need a graph with edge messages");
    std::vector<PairStatistic> out;
    std::vector<double> column;
    for (const auto& [key, events] : occurrences(log)) {
        if (events.size() < 2) continue;
        double total = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            column.clear();
            for (std::size_t i : events) column.push_back(log[i].edge.message[d]);
            total += population_std(column);
        }
        out.push_back({key_first(key), key_second(key), total / static_cast<double>(dim)});
    }
    return out;
}

std::vector<PairStatistic> inter_event_time_std(const EventLog& log) {
    std::vector<PairStatistic> out;
    std::vector<double> gaps;
    for (const auto& [key, events] : occurrences(log)) {
        if (events.size() < 3) continue;
        gaps.clear();
        for (std::size_t i = 1; i < events.size(); ++i) {
            gaps.push_back(log[events[i]].edge.timestamp - log[events[i - 1]].edge.timestamp);
        }
        out.push_back({key_first(key), key_second(key), population_std(gaps)});
    }
    return out;
}

StatsReport compute_stats(const EventLog& log) {
    StatsReport report;
    report.degree_histogram = degree_distribution(log);
    if (!log.empty()) report.joint_degree = joint_degree_matrix(log);
    if (log.message_dim() > 0) report.message_std = message_std_per_edge(log);
    report.inter_event_std = inter_event_time_std(log);
    return report;
}

namespace {

nlohmann::ordered_json describe(std::vector<double> xs) {
    nlohmann::ordered_json j;
    j["count"] = xs.size();
    if (xs.empty()) return j;
    std::sort(xs.begin(), xs.end());
    // Linear interpolation between order statistics.
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(xs.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, xs.size() - 1);
        return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
    };
    j["min"] = xs.front();
    j["q25"] = quantile(0.25);
    j["median"] = quantile(0.5);
    j["q75"] = quantile(0.75);
    j["max"] = xs.back();
    j["mean"] = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    return j;
}

std::vector<double> values_of(const std::vector<PairStatistic>& stats) {
    std::vector<double> out;
    out.reserve(stats.size());
    for (const auto& s : stats) out.push_back(s.value);
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
    out << content;
    if (!out) throw Error(fmt::format("failed writing '{}'", path.string()));
}

std::string pair_csv(const std::vector<PairStatistic>& stats) {
    std::string out = "node_a,node_b,std\n";
    for (const auto& s : stats) out += fmt::format("{},{},{}\n", s.first, s.second, format_real(s.value));
    return out;
}

}  // namespace

std::string stats_summary_json(const StatsReport& report) {
    nlohmann::ordered_json j;
    std::vector<double> degree_values;
    std::size_t edges2 = 0;
    for (const auto& [d, count] : report.degree_histogram) {
        degree_values.insert(degree_values.end(), count, static_cast<double>(d));
        edges2 += d * count;
    }
    j["nodes_with_edges"] = degree_values.size();
    j["static_edges"] = edges2 / 2;
    j["degree"] = describe(std::move(degree_values));
    j["joint_degree_sum"] = report.joint_degree.sum();
    j["message_std"] = describe(values_of(report.message_std));
    j["inter_event_std"] = describe(values_of(report.inter_event_std));
    return j.dump(2) + "\n";
}

void write_stats(const StatsReport& report, const std::string& directory) {
    const std::filesystem::path dir(directory);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(fmt::format("cannot create '{}': {}", directory, ec.message()));

    std::string hist = "degree,count\n";
    for (const auto& [d, c] : report.degree_histogram) hist += fmt::format("{},{}\n", d, c);
    write_file(dir / "degree_histogram.csv", hist);

    std::string jdm = "degree_i,degree_j,frequency\n";
    const auto& m = report.joint_degree;
    for (std::size_t i = 0; i < m.dim; ++i) {
        for (std::size_t k = 0; k < m.dim; ++k) {
            if (m.at(i, k) != 0.0) jdm += fmt::format("{},{},{}\n", i, k, format_real(m.at(i, k)));
        }
    }
    write_file(dir / "joint_degree.csv", jdm);
    write_file(dir / "message_std.csv", pair_csv(report.message_std));
    write_file(dir / "inter_event_std.csv", pair_csv(report.inter_event_std));
    write_file(dir / "summary.json", stats_summary_json(report));
}

}  // namespace ctdg

#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctdg/event_log.hpp"

namespace ctdg {

/// Degree -> number of nodes, on the undirected static projection. Nodes
/// without edges are not counted.
using DegreeHistogram = std::map<std::size_t, std::size_t>;

DegreeHistogram degree_distribution(const EventLog& log);

/// Dense square matrix indexed by degree (row/column 0 unused).
struct JointDegreeMatrix {
    std::size_t dim = 0;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const {
        return i < dim && j < dim ? values[i * dim + j] : 0.0;
    }
    double sum() const;
};

/// Relative frequency of static edges joining degree-i and degree-j nodes,
/// symmetrized. Throws Error for a log without edges.
JointDegreeMatrix joint_degree_matrix(const EventLog& log);

/// A per-pair statistic; the pair is unordered with first <= second.
struct PairStatistic {
    NodeId first = 0;
    NodeId second = 0;
    double value = 0.0;
};

/// For pairs seen at least twice: population std of each message dimension
/// across occurrences, averaged over dimensions. Throws Error when the log
/// carries no messages.
std::vector<PairStatistic> message_std_per_edge(const EventLog& log);

/// For pairs seen at least three times: population std of the gaps between
/// consecutive occurrences.
std::vector<PairStatistic> inter_event_time_std(const EventLog& log);

struct StatsReport {
    DegreeHistogram degree_histogram;
    JointDegreeMatrix joint_degree;
    std::vector<PairStatistic> message_std;
    std::vector<PairStatistic> inter_event_std;
};

StatsReport compute_stats(const EventLog& log);

/// Writes degree_histogram.csv, joint_degree.csv, message_std.csv,
/// inter_event_std.csv and summary.json into `directory`.
void write_stats(const StatsReport& report, const std::string& directory);

/// JSON summary (count, min, q25, median, q75, max, mean) of each sequence.
std::string stats_summary_json(const StatsReport& report);

}  // namespace ctdg

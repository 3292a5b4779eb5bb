#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctdg/edgebank.hpp"
#include "ctdg/event_log.hpp"

namespace ctdg {

/// Parallel score / type columns; an entry is positive iff its type is an
/// anomaly type.
struct ScoredSet {
    std::vector<double> scores;
    std::vector<AnomalyLabel> types;

    std::size_t size() const { return scores.size(); }
    std::size_t positives() const;
    void add(double score, AnomalyLabel type) {
        scores.push_back(score);
        types.push_back(type);
    }

    static ScoredSet from_stream(std::span<const ScoredEvent> events);
    /// Convenience for binary labels (1 = anomaly, reported as type T).
    static ScoredSet from_binary(std::span<const double> scores, std::span<const int> labels);
};

/// Mann-Whitney AUC with half credit for ties.
double auc(const ScoredSet& s);

/// Mean precision at the rank of each positive. Ranking sorts scores
/// descending, ties broken by original index.
double average_precision(const ScoredSet& s);

/// Fraction of positives among the top-k of the same ranking; k defaults to
/// the positive count.
double recall_at_k(const ScoredSet& s, std::optional<std::size_t> k = std::nullopt);

struct MetricSummary {
    double mean = 0.0;
    /// Sample standard deviation; 0 for a single run.
    double std = 0.0;
};

struct TypeReportRow {
    AnomalyLabel type = AnomalyLabel::kBenign;
    std::size_t runs = 0;
    MetricSummary auc;
    MetricSummary ap;
    MetricSummary recall;
};

struct TypeReport {
    std::vector<TypeReportRow> rows;
    std::vector<std::string> warnings;
};

/// Each anomaly type is evaluated against the benign events of the same run
/// only, then aggregated across runs (e.g. repeated injection seeds).
TypeReport per_type_report(std::span<const ScoredSet> runs);

MetricSummary summarize(std::span<const double> values);

/// CSV columns: type,auc_mean,auc_std,ap_mean,ap_std,recall_mean,recall_std.
std::string report_csv(const TypeReport& report);
std::string report_table(const TypeReport& report);

}  // namespace ctdg

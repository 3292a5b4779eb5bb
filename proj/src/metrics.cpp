#include "ctdg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "ctdg/csv_io.hpp"

namespace ctdg {

std::size_t ScoredSet::positives() const {
    return static_cast<std::size_t>(std::count_if(types.begin(), types.end(), is_anomalous));
}

ScoredSet ScoredSet::from_stream(std::span<const ScoredEvent> events) {
    ScoredSet s;
    s.scores.reserve(events.size());
    s.types.reserve(events.size());
    for (const ScoredEvent& e : events) s.add(e.score, e.label);
    return s;
}

ScoredSet ScoredSet::from_binary(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw Error("scores and labels differ in length");
    ScoredSet s;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        s.add(scores[i], labels[i] ? AnomalyLabel::kTemporal : AnomalyLabel::kBenign);
    }
    return s;
}

namespace {

void check_lengths(const ScoredSet& s) {
    if (s.scores.size() != s.types.size()) throw Error("score and label columns differ in length");
}

// Descending score, ascending index among ties.
std::vector<std::size_t> ranking(const ScoredSet& s) {
    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return s.scores[a] > s.scores[b]; });
    return order;
}

}  // namespace

double auc(const ScoredSet& s) {
    check_lengths(s);
    const std::size_t pos = s.positives();
    const std::size_t neg = s.size() - pos;
    if (pos == 0 || neg == 0) throw Error("AUC needs at least one positive and one negative");

    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return s.scores[a] < s.scores[b]; });

    // Counts stay integral (or half-integral), hence exact in double.
    double credit = 0.0;
    double negatives_below = 0.0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        double group_pos = 0.0, group_neg = 0.0;
        while (j < order.size() && s.scores[order[j]] == s.scores[order[i]]) {
            (is_anomalous(s.types[order[j]]) ? group_pos : group_neg) += 1.0;
            ++j;
        }
        credit += group_pos * negatives_below + 0.5 * group_pos * group_neg;
        negatives_below += group_neg;
        i = j;
    }
    return credit / (static_cast<double>(pos) * static_cast<double>(neg));
}

double average_precision(const ScoredSet& s) {
    check_lengths(s);
    const std::size_t pos = s.positives();
    if (pos == 0) throw Error("average precision needs at least one positive");
    double sum = 0.0;
    std::size_t hits = 0;
    const auto order = ranking(s);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        if (is_anomalous(s.types[order[rank]])) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(rank + 1);
        }
    }
    return sum / static_cast<double>(pos);
}

double recall_at_k(const ScoredSet& s, std::optional<std::size_t> k) {
    check_lengths(s);
    const std::size_t pos = s.positives();
    if (pos == 0) throw Error("recall@k needs at least one positive");
    const std::size_t top = k.value_or(pos);
    if (top < 1 || top > s.size()) {
        throw Error(fmt::format("k = {} outside 1..{}", top, s.size()));
    }
    const auto order = ranking(s);
    std::size_t hits = 0;
    for (std::size_t r = 0; r < top; ++r) hits += is_anomalous(s.types[order[r]]) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(pos);
}

MetricSummary summarize(std::span<const double> values) {
    MetricSummary out;
    if (values.empty()) return out;
    const double n = static_cast<double>(values.size());
    // Shifting by the first value keeps identical runs at exactly zero spread.
    const double shift = values.front();
    double offset = 0.0;
    for (double v : values) offset += v - shift;
    offset /= n;
    out.mean = shift + offset;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - shift - offset) * (v - shift - offset);
        out.std = std::sqrt(ss / (n - 1.0));
    }
    return out;
}

TypeReport per_type_report(std::span<const ScoredSet> runs) {
    TypeReport report;
    for (AnomalyLabel type : kAnomalyTypes) {
        std::vector<double> aucs, aps, recalls;
        for (std::size_t r = 0; r < runs.size(); ++r) {
            const ScoredSet& run = runs[r];
            check_lengths(run);
            ScoredSet subset;
            std::size_t typed = 0, benign = 0;
            for (std::size_t i = 0; i < run.size(); ++i) {
                if (run.types[i] == type || run.types[i] == AnomalyLabel::kBenign) {
                    subset.add(run.scores[i], run.types[i]);
                    (run.types[i] == type ? typed : benign) += 1;
                }
            }
            if (typed == 0) continue;
            if (benign == 0) {
                report.warnings.push_back(
                    fmt::format("run {}: no benign events, skipping type {}", r, label_name(type)));
                continue;
            }
            aucs.push_back(auc(subset));
            aps.push_back(average_precision(subset));
            recalls.push_back(recall_at_k(subset));
        }
        if (aucs.empty()) continue;
        report.rows.push_back({type, aucs.size(), summarize(aucs), summarize(aps), summarize(recalls)});
    }
    if (report.rows.empty()) report.warnings.push_back("no anomalous events in any run");
    return report;
}

std::string report_csv(const TypeReport& report) {
    std::string out = "type,auc_mean,auc_std,ap_mean,ap_std,recall_mean,recall_std\n";
    for (const auto& row : report.rows) {
        out += fmt::format("{},{},{},{},{},{},{}\n", label_name(row.type),
                           format_real(row.auc.mean), format_real(row.auc.std),
                           format_real(row.ap.mean), format_real(row.ap.std),
                           format_real(row.recall.mean), format_real(row.recall.std));
    }
    return out;
}

std::string report_table(const TypeReport& report) {
    std::string out = fmt::format("{:<6} {:>5} {:>16} {:>16} {:>16}\n", "type", "runs", "AUC",
                                  "AP", "Recall@k");
    auto cell = [](const MetricSummary& m) {
        return fmt::format("{:.2f} ± {:.2f}", 100.0 * m.mean, 100.0 * m.std);
    };
    for (const auto& row : report.rows) {
        out += fmt::format("{:<6} {:>5} {:>16} {:>16} {:>16}\n", label_name(row.type), row.runs,
                           cell(row.auc), cell(row.ap), cell(row.recall));
    }
    return out;
}

}  // namespace ctdg

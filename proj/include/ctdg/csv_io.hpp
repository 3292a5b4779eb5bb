#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctdg/edgebank.hpp"
#include "ctdg/event_log.hpp"
#include "ctdg/metrics.hpp"

namespace ctdg {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_real(double value);
/// Strict parse of a whole field; throws Error on trailing garbage.
double parse_real(std::string_view text);

/// Dataset file: header `src,dst,ts,label,f0,...,f{D-1}`, one event per row.
void write_csv(const EventLog& log, const std::string& path);
std::string to_csv(const EventLog& log);

struct CsvReadOptions {
    /// Node universe size; defaults to the largest id in the file plus one.
    std::optional<std::size_t> node_count;
    /// Receives non-fatal diagnostics such as re-sorted input.
    std::function<void(const std::string&)> on_warning;
};

EventLog read_csv(const std::string& path, const CsvReadOptions& options = {});
EventLog parse_csv(std::string_view text, const CsvReadOptions& options = {},
                   std::string_view source_name = "<memory>");

/// Score file: header `score,label,type` where label is the 0/1 anomaly flag
/// and type the anomaly type name.
void write_scores(std::span<const ScoredEvent> scores, const std::string& path);
std::string scores_to_csv(std::span<const ScoredEvent> scores);
ScoredSet read_scores(const std::string& path);
ScoredSet parse_scores(std::string_view text, std::string_view source_name = "<memory>");

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace ctdg

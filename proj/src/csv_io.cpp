#include "ctdg/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace ctdg {

std::string format_real(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

double parse_real(std::string_view text) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto result = std::from_chars(text.data(), end, value);
    if (result.ec != std::errc() || result.ptr != end) {
        throw Error(fmt::format("'{}' is not a number", text));
    }
    return value;
}

namespace {

unsigned long long parse_unsigned(std::string_view text) {
    unsigned long long value = 0;
    const char* end = text.data() + text.size();
    const auto result = std::from_chars(text.data(), end, value);
    if (result.ec != std::errc() || result.ptr != end) {
        throw Error(fmt::format("'{}' is not a non-negative integer", text));
    }
    return value;
}

long long parse_signed(std::string_view text) {
    long long value = 0;
    const char* end = text.data() + text.size();
    const auto result = std::from_chars(text.data(), end, value);
    if (result.ec != std::errc() || result.ptr != end) {
        throw Error(fmt::format("'{}' is not an integer", text));
    }
    return value;
}

void split_fields(std::string_view line, std::vector<std::string_view>& fields) {
    fields.clear();
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

// Yields lines without their terminator; tolerates CRLF.
class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}
    bool next(std::string_view& line) {
        if (pos_ >= text_.size()) return false;
        std::size_t end = text_.find('\n', pos_);
        if (end == std::string_view::npos) end = text_.size();
        line = text_.substr(pos_, end - pos_);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos_ = end + 1;
        ++number_;
        return true;
    }
    std::size_t number() const { return number_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t number_ = 0;
};

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(fmt::format("cannot open '{}' for reading", path));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(fmt::format("failed reading '{}'", path));
    return std::move(buffer).str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot open '{}' for writing", path));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(fmt::format("failed writing '{}'", path));
}

std::string to_csv(const EventLog& log) {
    std::string out = "src,dst,ts,label";
    for (std::size_t d = 0; d < log.message_dim(); ++d) out += fmt::format(",f{}", d);
    out += '\n';
    for (const LabeledEdge& le : log.events()) {
        const TemporalEdge& e = le.edge;
        out += fmt::format("{},{},{},{}", e.source, e.destination, format_real(e.timestamp),
                           label_code(le.label));
        for (double x : e.message) {
            out += ',';
            out += format_real(x);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const EventLog& log, const std::string& path) { write_text_file(path, to_csv(log)); }

EventLog parse_csv(std::string_view text, const CsvReadOptions& options,
                   std::string_view source_name) {
    LineReader lines(text);
    std::string_view line;
    if (!lines.next(line)) throw Error(fmt::format("{}: missing header", source_name));
    std::vector<std::string_view> fields;
    split_fields(line, fields);
    if (fields.size() < 4 || fields[0] != "src" || fields[1] != "dst" || fields[2] != "ts" ||
        fields[3] != "label") {
        throw Error(fmt::format("{}:1: header must start with src,dst,ts,label", source_name));
    }
    const std::size_t dim = fields.size() - 4;
    for (std::size_t d = 0; d < dim; ++d) {
        if (fields[4 + d] != fmt::format("f{}", d)) {
            throw Error(fmt::format("{}:1: expected feature column f{}, got '{}'", source_name, d,
                                    fields[4 + d]));
        }
    }

    std::vector<LabeledEdge> events;
    std::size_t max_node = 0;
    bool sorted = true;
    while (lines.next(line)) {
        if (line.empty()) continue;
        split_fields(line, fields);
        const std::size_t line_no = lines.number();
        if (fields.size() != dim + 4) {
            throw Error(fmt::format("{}:{}: expected {} columns, found {}", source_name, line_no,
                                    dim + 4, fields.size()));
        }
        try {
            LabeledEdge le;
            const auto src = parse_unsigned(fields[0]);
            const auto dst = parse_unsigned(fields[1]);
            if (src > std::numeric_limits<NodeId>::max() || dst > std::numeric_limits<NodeId>::max()) {
                throw Error("node id too large");
            }
            le.edge.source = static_cast<NodeId>(src);
            le.edge.destination = static_cast<NodeId>(dst);
            le.edge.timestamp = parse_real(fields[2]);
            le.label = label_from_code(parse_signed(fields[3]));
            le.edge.message.resize(dim);
            for (std::size_t d = 0; d < dim; ++d) le.edge.message[d] = parse_real(fields[4 + d]);
            max_node = std::max<std::size_t>(max_node, std::max(src, dst));
            if (!events.empty() && le.edge.timestamp < events.back().edge.timestamp) sorted = false;
            events.push_back(std::move(le));
        } catch (const Error& err) {
            throw Error(fmt::format("{}:{}: {}", source_name, line_no, err.what()));
        }
    }
    if (!sorted && options.on_warning) {
        options.on_warning(fmt::format("{}: rows not in timestamp order; sorted on load", source_name));
    }
    const std::size_t inferred = events.empty() ? 0 : max_node + 1;
    std::size_t node_count = options.node_count.value_or(inferred);
    if (node_count < inferred) {
        throw Error(fmt::format("{}: node id {} exceeds the declared node count {}", source_name,
                                max_node, node_count));
    }
    return EventLog::build(std::move(events), node_count, dim);
}

EventLog read_csv(const std::string& path, const CsvReadOptions& options) {
    return parse_csv(read_text_file(path), options, path);
}

std::string scores_to_csv(std::span<const ScoredEvent> scores) {
    std::string out = "score,label,type\n";
    for (const ScoredEvent& s : scores) {
        out += fmt::format("{},{},{}\n", format_real(s.score), is_anomalous(s.label) ? 1 : 0,
                           label_name(s.label));
    }
    return out;
}

void write_scores(std::span<const ScoredEvent> scores, const std::string& path) {
    write_text_file(path, scores_to_csv(scores));
}

ScoredSet parse_scores(std::string_view text, std::string_view source_name) {
    LineReader lines(text);
    std::string_view line;
    if (!lines.next(line) || line != "score,label,type") {
        throw Error(fmt::format("{}:1: header must be score,label,type", source_name));
    }
    ScoredSet set;
    std::vector<std::string_view> fields;
    while (lines.next(line)) {
        if (line.empty()) continue;
        split_fields(line, fields);
        if (fields.size() != 3) {
            throw Error(fmt::format("{}:{}: expected 3 columns, found {}", source_name,
                                    lines.number(), fields.size()));
        }
        try {
            const double score = parse_real(fields[0]);
            const long long flag = parse_signed(fields[1]);
            const AnomalyLabel type = parse_label(fields[2]);
            if ((flag != 0 && flag != 1) || (flag == 1) != is_anomalous(type)) {
                throw Error("label flag disagrees with type");
            }
            set.add(score, type);
        } catch (const Error& err) {
            throw Error(fmt::format("{}:{}: {}", source_name, lines.number(), err.what()));
        }
    }
    return set;
}

ScoredSet read_scores(const std::string& path) { return parse_scores(read_text_file(path), path); }

}  // namespace ctdg

#include "ctdg/splits.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

namespace ctdg {

void SplitSpec::validate() const {
    if (!(train > 0.0) || !(val > 0.0) || !(test > 0.0)) {
        throw Error(fmt::format("split fractions must be positive, got {},{},{}", train, val, test));
    }
    if (std::abs(train + val + test - 1.0) > 1e-9) {
        throw Error(fmt::format("split fractions must sum to 1, got {}", train + val + test));
    }
}

SplitSpec parse_split_spec(std::string_view text) {
    double parts[3];
    std::size_t count = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        if (count == 3) throw Error(fmt::format("split '{}' needs exactly three fractions", text));
        const std::string piece(text.substr(start, comma - start));
        try {
            std::size_t used = 0;
            parts[count] = std::stod(piece, &used);
            if (used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::exception&) {
            throw Error(fmt::format("split '{}': '{}' is not a number", text, piece));
        }
        ++count;
        start = comma + 1;
    }
    if (count != 3) throw Error(fmt::format("split '{}' needs exactly three fractions", text));
    SplitSpec spec{parts[0], parts[1], parts[2]};
    spec.validate();
    return spec;
}

namespace {

EventLog slice(const EventLog& log, std::size_t begin, std::size_t end) {
    return EventLog::from_sorted_slice(std::span(log.events()).subspan(begin, end - begin),
                                       log.node_count(), log.message_dim());
}

}  // namespace

Splits chronological_split(const EventLog& log, const SplitSpec& spec) {
    spec.validate();
    const std::size_t n = log.size();
    const auto first = static_cast<std::size_t>(std::floor(static_cast<double>(n) * spec.train));
    const auto second =
        static_cast<std::size_t>(std::floor(static_cast<double>(n) * (spec.train + spec.val)));
    const std::size_t b1 = std::min(first, n);
    const std::size_t b2 = std::clamp(second, b1, n);
    return {slice(log, 0, b1), slice(log, b1, b2), slice(log, b2, n)};
}

Splits organic_split(const EventLog& log) {
    const auto& events = log.events();
    std::vector<std::size_t> anomalies;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (is_anomalous(events[i].label)) anomalies.push_back(i);
    }
    if (anomalies.size() < 2) {
        throw Error(fmt::format(
            "organic split needs at least two anomalous events, found {}; use a chronological split",
            anomalies.size()));
    }

    const double first_time = events[anomalies.front()].edge.timestamp;
    std::size_t train_end = 0;
    while (train_end < events.size() && events[train_end].edge.timestamp < first_time) ++train_end;

    // Every anomaly lies in the remainder because none precedes first_time.
    const std::size_t total = anomalies.size();
    const std::size_t val_anomalies = (total + 1) / 2;
    const std::size_t val_end = anomalies[val_anomalies];
    return {slice(log, 0, train_end), slice(log, train_end, val_end),
            slice(log, val_end, events.size())};
}

}  // namespace ctdg

#pragma once

#include "ctdg/event_log.hpp"

namespace ctdg {

/// Fractions of a chronological train/validation/test partition.
struct SplitSpec {
    double train = 0.70;
    double val = 0.15;
    double test = 0.15;

    /// Throws Error unless all fractions are positive and sum to 1 within 1e-9.
    void validate() const;
};

/// Parses "0.7,0.15,0.15".
SplitSpec parse_split_spec(std::string_view text);

struct Splits {
    EventLog train;
    EventLog val;
    EventLog test;
};

/// Contiguous partition by event index with boundaries floor(n*train) and
/// floor(n*(train+val)). Every piece keeps the parent's node_count and
/// message_dim.
Splits chronological_split(const EventLog& log, const SplitSpec& spec = {});

/// Split for logs with labeled organic anomalies: train holds every event
/// strictly before the first anomaly's timestamp; the remainder is cut where
/// the (ceil(A/2)+1)-th anomaly begins, so val gets ceil(A/2) anomalies and
/// test gets floor(A/2). Requires at least two anomalies.
Splits organic_split(const EventLog& log);

}  // namespace ctdg

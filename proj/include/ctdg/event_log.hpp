#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ctdg {

using NodeId = std::uint32_t;

/// Raised for any contract violation on user-supplied data or parameters.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Edge anomaly taxonomy. The numeric codes are the on-disk label codes.
enum class AnomalyLabel : std::uint8_t {
    kBenign = 0,
    kTemporal = 1,            // T
    kContextual = 2,          // C
    kTemporalContextual = 3,  // T-C
    kStructuralContextual = 4,  // S-C
    kTemporalStructuralContextual = 5,  // T-S-C
};

inline constexpr AnomalyLabel kAnomalyTypes[] = {
    AnomalyLabel::kTemporal, AnomalyLabel::kContextual, AnomalyLabel::kTemporalContextual,
    AnomalyLabel::kStructuralContextual, AnomalyLabel::kTemporalStructuralContextual};

/// Short lowercase name: "benign", "t", "c", "tc", "sc", "tsc".
std::string_view label_name(AnomalyLabel label);
/// Inverse of label_name; also accepts "t-c", "s-c", "t-s-c" and upper case.
AnomalyLabel parse_label(std::string_view name);
/// Maps an integer code 0..5 to a label; throws Error otherwise.
AnomalyLabel label_from_code(long long code);
inline int label_code(AnomalyLabel label) { return static_cast<int>(label); }
inline bool is_anomalous(AnomalyLabel label) { return label != AnomalyLabel::kBenign; }

/// One interaction (u, v, t, m).
struct TemporalEdge {
    NodeId source = 0;
    NodeId destination = 0;
    double timestamp = 0.0;
    std::vector<double> message;

    bool operator==(const TemporalEdge&) const = default;
};

struct LabeledEdge {
    TemporalEdge edge;
    AnomalyLabel label = AnomalyLabel::kBenign;

    bool operator==(const LabeledEdge&) const = default;
};

/// Chronologically sorted, validated sequence of labeled interactions.
///
/// Immutable after construction; safe for concurrent reads.
class EventLog {
public:
    EventLog() = default;

    /// Validates and stably sorts `events` by timestamp. Throws Error naming
    /// the offending input index for negative or non-finite timestamps,
    /// out-of-range node ids and message-dimension mismatches.
    static EventLog build(std::vector<LabeledEdge> events, std::size_t node_count,
                          std::size_t message_dim);

    /// Wraps events already known to be valid and sorted (e.g. a contiguous
    /// slice of another log).
    static EventLog from_sorted_slice(std::span<const LabeledEdge> events, std::size_t node_count,
                                      std::size_t message_dim);

    const std::vector<LabeledEdge>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }
    const LabeledEdge& operator[](std::size_t i) const { return events_[i]; }
    std::size_t node_count() const { return node_count_; }
    std::size_t message_dim() const { return message_dim_; }

    std::size_t anomaly_count() const;
    /// [min, max] timestamp; nullopt for an empty log.
    std::optional<std::pair<double, double>> time_range() const;

    bool operator==(const EventLog&) const = default;

private:
    EventLog(std::vector<LabeledEdge> events, std::size_t node_count, std::size_t message_dim)
        : events_(std::move(events)), node_count_(node_count), message_dim_(message_dim) {}

    std::vector<LabeledEdge> events_;
    std::size_t node_count_ = 0;
    std::size_t message_dim_ = 0;
};

/// Concatenates logs that share node_count and message_dim. The result is
/// re-sorted, so the inputs need not be consecutive in time.
EventLog concatenate(std::span<const EventLog> logs);

}  // namespace ctdg

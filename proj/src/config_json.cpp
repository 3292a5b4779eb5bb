#include "ctdg/config_json.hpp"

#include <fmt/format.h>

#include "json.hpp"

namespace ctdg {

using nlohmann::ordered_json;

namespace {

ordered_json parse_object(std::string_view text, std::string_view what) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw Error(fmt::format("{}: invalid JSON: {}", what, e.what()));
    }
    if (!j.is_object()) throw Error(fmt::format("{}: expected a JSON object", what));
    return j;
}

template <typename T>
void read_field(const ordered_json& j, const char* name, T& out) {
    const auto it = j.find(name);
    if (it == j.end()) return;
    try {
        if constexpr (std::is_same_v<T, bool>) {
            if (!it->is_boolean()) throw Error("expected true or false");
        } else if constexpr (std::is_unsigned_v<T>) {
            if (!it->is_number_unsigned()) {
                throw Error("expected a non-negative integer");
            }
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!it->is_number()) throw Error("expected a number");
        }
        out = it->get<T>();
    } catch (const std::exception& e) {
        throw Error(fmt::format("field '{}': {}", name, e.what()));
    }
}

void reject_unknown(const ordered_json& j, std::initializer_list<std::string_view> known,
                    std::string_view what) {
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw Error(fmt::format("{}: unknown field '{}'", what, key));
        }
    }
}

}  // namespace

std::string generator_config_to_json(const GeneratorConfig& c) {
    ordered_json j;
    j["node_count"] = c.node_count;
    j["temporal_edge_target"] = c.temporal_edge_target;
    j["communities"] = c.communities;
    j["avg_occurrences"] = c.avg_occurrences;
    j["time_span"] = c.time_span;
    j["span_mean"] = c.span_mean;
    j["span_std"] = c.span_std;
    j["timestamp_noise_fraction"] = c.timestamp_noise_fraction;
    j["classes"] = c.classes;
    j["message_dim"] = c.message_dim;
    j["message_noise"] = c.message_noise;
    j["intra_inter_ratio"] = c.intra_inter_ratio;
    j["seed"] = c.seed;
    return j.dump(2) + "\n";
}

GeneratorConfig generator_config_from_json(std::string_view text) {
    const auto j = parse_object(text, "generator config");
    reject_unknown(j,
                   {"node_count", "temporal_edge_target", "communities", "avg_occurrences",
                    "time_span", "span_mean", "span_std", "timestamp_noise_fraction", "classes",
                    "message_dim", "message_noise", "intra_inter_ratio", "seed"},
                   "generator config");
    GeneratorConfig c;
    read_field(j, "node_count", c.node_count);
    read_field(j, "temporal_edge_target", c.temporal_edge_target);
    read_field(j, "communities", c.communities);
    read_field(j, "avg_occurrences", c.avg_occurrences);
    read_field(j, "time_span", c.time_span);
    read_field(j, "span_mean", c.span_mean);
    read_field(j, "span_std", c.span_std);
    read_field(j, "timestamp_noise_fraction", c.timestamp_noise_fraction);
    read_field(j, "classes", c.classes);
    read_field(j, "message_dim", c.message_dim);
    read_field(j, "message_noise", c.message_noise);
    read_field(j, "intra_inter_ratio", c.intra_inter_ratio);
    read_field(j, "seed", c.seed);
    c.validate();
    return c;
}

std::string injection_config_to_json(const InjectionConfig& c) {
    ordered_json j;
    j["rate"] = c.rate;
    j["anomaly_type"] = std::string(label_name(c.anomaly_type));
    j["K"] = c.K;
    j["W"] = c.W;
    j["seed"] = c.seed;
    j["maximize_distance"] = c.maximize_distance;
    return j.dump(2) + "\n";
}

InjectionConfig injection_config_from_json(std::string_view text) {
    const auto j = parse_object(text, "injection config");
    reject_unknown(j, {"rate", "anomaly_type", "K", "W", "seed", "maximize_distance"},
                   "injection config");
    InjectionConfig c;
    read_field(j, "rate", c.rate);
    if (const auto it = j.find("anomaly_type"); it != j.end()) {
        if (!it->is_string()) throw Error("field 'anomaly_type': expected a string");
        c.anomaly_type = parse_label(it->get<std::string>());
    }
    read_field(j, "K", c.K);
    read_field(j, "W", c.W);
    read_field(j, "seed", c.seed);
    read_field(j, "maximize_distance", c.maximize_distance);
    c.validate();
    return c;
}

}  // namespace ctdg

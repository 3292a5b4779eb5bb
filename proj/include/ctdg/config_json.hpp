#pragma once

#include <string>
#include <string_view>

#include "ctdg/anomaly_inject.hpp"
#include "ctdg/synth_gen.hpp"

namespace ctdg {

/// JSON documents use the struct field names verbatim. Missing fields keep
/// their defaults; unknown fields are rejected.
std::string generator_config_to_json(const GeneratorConfig& config);
GeneratorConfig generator_config_from_json(std::string_view text);

std::string injection_config_to_json(const InjectionConfig& config);
InjectionConfig injection_config_from_json(std::string_view text);

}  // namespace ctdg

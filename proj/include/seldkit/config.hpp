#pragma once

#include <string>

#include "seldkit/augment.hpp"
#include "seldkit/metrics.hpp"
#include "seldkit/salsa.hpp"
#include "seldkit/stft.hpp"

namespace seld {

/// Aggregated tool configuration. Defaults mirror the dataset and feature
/// conventions baked into the sub-configs.
struct ToolConfig {
    StftConfig stft;
    SalsaConfig salsa;
    CutoutConfig cutout;
    SpecAugmentConfig spec_augment;
    double ss_dropout_p = 0.25;
    MetricsConfig metrics;
};

// Throws ConfigError when any sub-config invariant is violated.
void validate_tool_config(const ToolConfig& cfg);

/// Flat `key = value` text with [stft], [salsa], [augment] and [metrics]
/// sections. Unknown keys are rejected. Values parsed on top of `base`, so
/// a partial file overrides only what it names.
ToolConfig parse_tool_config(const std::string& text,
                             const ToolConfig& base = {});
ToolConfig read_tool_config(const std::string& path,
                            const ToolConfig& base = {});

}  // namespace seld

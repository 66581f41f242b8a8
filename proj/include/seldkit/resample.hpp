#pragma once

#include "seldkit/types.hpp"

namespace seld {

/// Band-limited sample-rate conversion, each channel independently.
/// Returns the input unchanged when the rates already match.
/// Kernel: 64-tap windowed sinc, Kaiser beta = 8.
/// Throws ConfigError for a non-positive target rate.
MultichannelAudio resample_if_needed(const MultichannelAudio& audio,
                                     int target_rate);

}  // namespace seld

#pragma once

#include <string>

#include "seldkit/salsa.hpp"

namespace seld {

/// SALSAFT1 feature file, little-endian throughout:
///   bytes 0-7   magic "SALSAFT1"
///   u32 x 4     version (= 1), channels, frames, bins
///   u32         frame rate in centi-fps (8000 = 80.00 fps)
///   payload     float32 values in [channel][frame][bin] order
///   u64         checksum: XOR over the payload read as 64-bit words,
///               zero-padded at the tail
///
/// The single-source mask is not stored; on read it is recovered as the bins
/// whose channel-4 value is nonzero, which holds for every feature this
/// library writes (the stored eigenvalue-ratio channel is strictly positive
/// on single-source bins and exactly zero elsewhere).
inline constexpr char kFeatureMagic[8] = {'S', 'A', 'L', 'S',
                                          'A', 'F', 'T', '1'};
inline constexpr std::uint32_t kFeatureVersion = 1;

void write_feature(const SalsaFeature& feat, const std::string& path);

/// The file does not record the feature format; callers that know they are
/// handling MIC features pass it explicitly.
SalsaFeature read_feature(const std::string& path,
                          SalsaFormat format = SalsaFormat::Foa);

}  // namespace seld

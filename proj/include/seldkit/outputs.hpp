#pragma once

#include <array>
#include <vector>

#include "seldkit/types.hpp"

namespace seld {

/// The two class-wise output encodings. SEDXYZ carries explicit class
/// activities next to Cartesian direction vectors; ACCDOA folds the activity
/// into the direction-vector norm.
enum class OutputFormat { SedXyz, Accdoa };

/// Per-frame model output: one activity and one direction vector per class.
struct SeldFrameOutput {
    std::array<double, kNumClasses> activity{};
    std::array<std::array<double, 3>, kNumClasses> doa{};
};

/// Ground-truth encoding at the label rate. Active (frame, class) pairs get
/// activity 1 and the unit direction (x = cos el cos az, y = cos el sin az,
/// z = sin el); ACCDOA scales the vector by the activity. When two tracks of
/// one class share a frame only the lowest track index is kept; class-wise
/// formats cannot represent the second instance.
std::vector<SeldFrameOutput> encode_labels(
    const std::vector<EventAnnotation>& events, int num_frames,
    OutputFormat format);

struct DecodeResult {
    std::vector<EventAnnotation> events;
    // active frames whose direction vector had zero norm (decoded as az 0,
    // el 0)
    int zero_norm_frames = 0;
};

/// Thresholded decoding: a class is active when activity > threshold
/// (SEDXYZ) or |doa| > threshold (ACCDOA). Azimuth comes from atan2(y, x)
/// wrapped to [-180, 180), elevation from asin(z/|doa|) clamped to
/// [-45, 45]. Track index is always 0. threshold must lie in (0, 1).
DecodeResult decode_outputs(const std::vector<SeldFrameOutput>& outputs,
                            OutputFormat format, double threshold = 0.3);

/// Nearest-neighbor temporal upsampling: each frame repeated `factor` times.
std::vector<SeldFrameOutput> upsample_outputs(
    const std::vector<SeldFrameOutput>& outputs, int factor);

}  // namespace seld

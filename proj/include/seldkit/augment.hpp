#pragma once

#include <cstdint>
#include <vector>

#include "seldkit/outputs.hpp"
#include "seldkit/salsa.hpp"
#include "seldkit/types.hpp"

namespace seld {

/// One of the 16 label-consistent FOA axis transforms: an optional X/Y swap
/// followed by per-axis sign flips. Pattern 0 is the identity; the set is
/// closed under composition and inversion.
struct SpatialPattern {
    bool swap_xy = false;
    bool neg_x = false;
    bool neg_y = false;
    bool neg_z = false;

    int id() const {
        return (swap_xy ? 1 : 0) | (neg_x ? 2 : 0) | (neg_y ? 4 : 0) |
               (neg_z ? 8 : 0);
    }
    static SpatialPattern from_id(int id);

    bool operator==(const SpatialPattern&) const = default;
};

inline constexpr int kNumSpatialPatterns = 16;

SpatialPattern inverse_pattern(const SpatialPattern& p);

/// Applies the pattern to a Cartesian direction, swap first, then sign
/// flips. This is the single definition the feature, label and TTA paths all
/// share.
Vec3 apply_pattern_direction(const SpatialPattern& p, const Vec3& v);

/// Feature-domain transform: spectrogram channels 1 and 3 swap with swap_xy
/// (W and Z spectra are unaffected, magnitudes ignore sign flips); spatial
/// channels follow the axis transform; the eigenvalue-ratio channel is left
/// untouched. FOA features only.
SalsaFeature apply_spatial_pattern_feature(const SalsaFeature& feat,
                                           const SpatialPattern& p);

/// Label-domain transform of the same pattern:
/// swap_xy: az -> 90 - az, then neg_x: az -> 180 - az, then neg_y: az -> -az,
/// and neg_z: el -> -el, with the azimuth wrapped back into [-180, 180).
std::vector<EventAnnotation> apply_spatial_pattern_labels(
    const std::vector<EventAnnotation>& events, const SpatialPattern& p);

enum class MaskKind { Cutout, TimeMask, FreqMask, SsDropout };

/// A deterministic mask placement. Cutout covers the rectangle
/// [frame_begin, frame_end) x [bin_begin, bin_end); time and frequency masks
/// are full-height and full-width stripes of the same rectangle. The fill
/// value applies to the spectrogram channels; channels 4-7 are zeroed and
/// their bins leave the single-source mask.
struct MaskSpec {
    MaskKind kind = MaskKind::Cutout;
    int frame_begin = 0;
    int frame_end = 0;
    int bin_begin = 0;
    int bin_end = 0;
    float fill = kSpectrogramFloorDb;

    static constexpr float kSpectrogramFloorDb = -120.0f;
};

// Throws ConfigError when the geometry exceeds the tensor bounds.
void apply_mask(SalsaFeature& feat, const MaskSpec& mask);

struct CutoutConfig {
    int min_time = 1;
    int max_time = 40;  // frames
    int min_freq = 1;
    int max_freq = 32;  // bins
};

/// One random rectangle over all 8 channels; deterministic given the seed.
SalsaFeature random_cutout(const SalsaFeature& feat, std::uint64_t seed,
                           const CutoutConfig& cfg = {});

struct SpecAugmentConfig {
    int max_time_width = 32;  // frames
    int max_freq_width = 16;  // bins
    int num_time_masks = 1;
    int num_freq_masks = 1;
};

/// Full-height time stripes and full-width frequency stripes, deterministic
/// given the seed.
SalsaFeature spec_augment(const SalsaFeature& feat, std::uint64_t seed,
                          const SpecAugmentConfig& cfg = {});

/// Drops each single-source bin independently with probability p, zeroing
/// channels 4-7 there and clearing the mask. 0 <= p <= 1.
SalsaFeature ss_bin_dropout(const SalsaFeature& feat, std::uint64_t seed,
                            double p);

/// All 16 pattern transforms of a feature, indexed by pattern id.
std::vector<SalsaFeature> tta_expand(const SalsaFeature& feat);

/// Folds 16 per-pattern model outputs back: each sequence's direction
/// vectors are mapped through the inverse pattern, then activities and
/// directions are averaged per frame and class. outputs[i] must correspond
/// to pattern id i and all sequences must share one frame count.
std::vector<SeldFrameOutput> tta_fold(
    const std::vector<std::vector<SeldFrameOutput>>& outputs);

/// Fold over an explicit pattern subset; outputs[i] pairs with
/// pattern_ids[i]. A single identity pattern degenerates to the plain
/// prediction.
std::vector<SeldFrameOutput> tta_fold(
    const std::vector<std::vector<SeldFrameOutput>>& outputs,
    const std::vector<int>& pattern_ids);

}  // namespace seld

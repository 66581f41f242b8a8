#pragma once

#include <array>
#include <optional>
#include <vector>

#include "seldkit/eigen4.hpp"
#include "seldkit/stft.hpp"
#include "seldkit/types.hpp"

namespace seld {

enum class SalsaFormat { Foa, Mic };

/// Parameters of the single-source bin selection and of the spatial-channel
/// normalization.
struct SalsaConfig {
    // per-frequency noise floor: this quantile of the clip's channel-0
    // log-power across frames
    double noise_floor_percentile = 0.05;
    double magnitude_threshold_db = 5.0;
    // eigenvalue-ratio gate; a bin is single-source when lambda1/lambda2
    // exceeds this
    double coherence_threshold = 5.0;
    int smoothing_time = 3;  // frames, odd
    int smoothing_freq = 3;  // bins, odd
    double drr_clip_min = 1.0;
    double drr_clip_max = 100.0;
    double spatial_clip_min = -4.0;
    double spatial_clip_max = 4.0;
    SalsaFormat format = SalsaFormat::Foa;
    // highest bin (exclusive) eligible for spatial channels; -1 disables the
    // cutoff
    int max_spatial_bin = -1;
};

void validate_salsa_config(const SalsaConfig& cfg);

/// Boolean [frame][bin] mask.
struct BinMask {
    int num_frames = 0;
    int num_bins = 0;
    std::vector<std::uint8_t> data;

    bool get(int f, int b) const {
        return data[static_cast<std::size_t>(f) * num_bins + b] != 0;
    }
    void set(int f, int b, bool v) {
        data[static_cast<std::size_t>(f) * num_bins + b] = v ? 1 : 0;
    }
    std::size_t count() const;
};

/// The assembled 8-channel feature tensor. Channel roles:
///   0-3  log-power spectrograms in (W, Y, Z, X) channel order for FOA
///   4    log10 of the clipped top-two eigenvalue ratio on single-source bins
///   5-7  normalized principal-eigenvector components, (Y, Z, X) responses
///        for FOA, per-pair phase differences for MIC
/// Channels 4-7 are exactly zero wherever ss_mask is false.
struct SalsaFeature {
    RealTensor3 data;  // 8 channels
    BinMask ss_mask;
    double frame_rate = 0.0;
    SalsaFormat format = SalsaFormat::Foa;

    int num_frames() const { return data.num_frames; }
    int num_bins() const { return data.num_bins; }
};

inline constexpr int kSalsaChannels = 8;
inline constexpr int kDrrChannel = 4;
inline constexpr int kFirstSpatialChannel = 5;

/// Covariance of the channel vector over the smoothing_time x smoothing_freq
/// neighborhood centered at (frame, bin), truncated at tensor edges.
/// Hermitian positive semidefinite by construction. Requires 4 channels.
HermitianMatrix4 estimate_covariance(const ComplexSpectrogram& spec, int frame,
                                     int bin, const SalsaConfig& cfg);

/// Per-frequency noise-floor test on a log-power channel: a bin passes when
/// its value exceeds the clip-wide noise_floor_percentile quantile of that
/// frequency by more than magnitude_threshold_db.
BinMask magnitude_test(const RealTensor3& log_power_tensor, int channel,
                       const SalsaConfig& cfg);

struct CoherenceResult {
    bool passes = false;
    double drr = 0.0;  // ratio clipped to [drr_clip_min, drr_clip_max]
};

/// Ratio of the two largest eigenvalues with a 1e-6 floor guard on the
/// denominator. Non-positive lambda1 fails the test with drr at the clip
/// minimum.
CoherenceResult coherence_test(const EigenPair& eig, const SalsaConfig& cfg);

/// Removes the reference-channel redundancy from a phase-fixed principal
/// eigenvector. FOA: real parts of v/v[0] components 1..3, giving the
/// (Y, Z, X) intensity ratios. MIC: phase of v[m]*conj(v[0]) divided by the
/// bin's normalized angular frequency, approximating the arrival-time
/// difference in samples. Values are clipped to the spatial clip range.
/// Returns nullopt when the reference component is too small (FOA) or the
/// bin has no usable phase slope (MIC bin 0); such bins are treated as
/// failing the coherence test.
std::optional<std::array<double, 3>> normalize_principal_vector(
    const EigenPair& eig, SalsaFormat format, const SalsaConfig& cfg, int bin,
    int num_bins);

/// Full pipeline: log-power channels for all four inputs, magnitude and
/// coherence tests, and the spatial channels on single-source bins.
/// Requires 4-channel audio at the configured sample rate.
SalsaFeature extract_salsa(const MultichannelAudio& audio,
                           const StftConfig& stft_cfg,
                           const SalsaConfig& salsa_cfg);

/// Same pipeline starting from an existing spectrogram.
SalsaFeature extract_salsa_from_spectrogram(const ComplexSpectrogram& spec,
                                            const SalsaConfig& salsa_cfg);

}  // namespace seld

#include "seldkit/salsa.hpp"

#include <algorithm>
#include <cmath>

namespace seld {
namespace {

constexpr double kEigenRatioGuard = 1e-6;
constexpr double kReferenceMagnitudeGuard = 1e-6;

double quantile(std::vector<double>& values, double q) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

}  // namespace

std::size_t BinMask::count() const {
    std::size_t n = 0;
    for (const auto v : data) n += v ? 1 : 0;
    return n;
}

void validate_salsa_config(const SalsaConfig& cfg) {
    if (cfg.noise_floor_percentile < 0.0 || cfg.noise_floor_percentile > 1.0) {
        throw ConfigError("salsa: noise floor percentile must be in [0, 1]");
    }
    if (cfg.coherence_threshold <= 1.0) {
        throw ConfigError("salsa: coherence threshold must be > 1");
    }
    if (cfg.smoothing_time < 1 || cfg.smoothing_time % 2 == 0 ||
        cfg.smoothing_freq < 1 || cfg.smoothing_freq % 2 == 0) {
        throw ConfigError("salsa: smoothing windows must be odd and >= 1");
    }
    if (cfg.drr_clip_min < 1.0 || cfg.drr_clip_max <= cfg.drr_clip_min) {
        throw ConfigError("salsa: drr clip range must satisfy 1 <= min < max");
    }
    if (cfg.spatial_clip_max <= cfg.spatial_clip_min) {
        throw ConfigError("salsa: spatial clip range is empty");
    }
}

HermitianMatrix4 estimate_covariance(const ComplexSpectrogram& spec, int frame,
                                     int bin, const SalsaConfig& cfg) {
    if (spec.num_channels != 4) {
        throw ConfigError("covariance: exactly 4 channels required");
    }
    const int ht = cfg.smoothing_time / 2;
    const int hf = cfg.smoothing_freq / 2;
    const int f_lo = std::max(0, frame - ht);
    const int f_hi = std::min(spec.num_frames - 1, frame + ht);
    const int b_lo = std::max(0, bin - hf);
    const int b_hi = std::min(spec.num_bins - 1, bin + hf);

    HermitianMatrix4 r;
    int count = 0;
    for (int f = f_lo; f <= f_hi; ++f) {
        for (int b = b_lo; b <= b_hi; ++b) {
            std::array<Complex, 4> x;
            for (int c = 0; c < 4; ++c) {
                const auto v = spec.at(c, f, b);
                x[static_cast<std::size_t>(c)] = Complex(v.real(), v.imag());
            }
            accumulate_outer(r, x);
            ++count;
        }
    }
    if (count > 0) {
        const double inv = 1.0 / count;
        for (auto& v : r.m) v *= inv;
    }
    return r;
}

BinMask magnitude_test(const RealTensor3& log_power_tensor, int channel,
                       const SalsaConfig& cfg) {
    BinMask mask;
    mask.num_frames = log_power_tensor.num_frames;
    mask.num_bins = log_power_tensor.num_bins;
    mask.data.assign(
        static_cast<std::size_t>(mask.num_frames) * mask.num_bins, 0);

    std::vector<double> column(static_cast<std::size_t>(mask.num_frames));
    for (int b = 0; b < mask.num_bins; ++b) {
        for (int f = 0; f < mask.num_frames; ++f) {
            column[static_cast<std::size_t>(f)] =
                log_power_tensor.at(channel, f, b);
        }
        std::vector<double> sorted = column;
        const double floor_db = quantile(sorted, cfg.noise_floor_percentile);
        const double gate = floor_db + cfg.magnitude_threshold_db;
        for (int f = 0; f < mask.num_frames; ++f) {
            mask.set(f, b, column[static_cast<std::size_t>(f)] > gate);
        }
    }
    return mask;
}

CoherenceResult coherence_test(const EigenPair& eig, const SalsaConfig& cfg) {
    CoherenceResult out;
    const double l1 = eig.values[0];
    const double l2 = eig.values[1];
    if (l1 <= 0.0) {
        out.passes = false;
        out.drr = cfg.drr_clip_min;
        return out;
    }
    const double ratio = l1 / std::max(l2, kEigenRatioGuard * l1);
    out.passes = ratio > cfg.coherence_threshold;
    out.drr = std::clamp(ratio, cfg.drr_clip_min, cfg.drr_clip_max);
    return out;
}

std::optional<std::array<double, 3>> normalize_principal_vector(
    const EigenPair& eig, SalsaFormat format, const SalsaConfig& cfg, int bin,
    int num_bins) {
    const auto& v = eig.principal;
    std::array<double, 3> out{};
    if (format == SalsaFormat::Foa) {
        double norm = 0.0;
        for (const auto& x : v) norm += std::norm(x);
        norm = std::sqrt(norm);
        const double ref_mag = std::abs(v[0]);
        if (ref_mag < kReferenceMagnitudeGuard * norm || ref_mag == 0.0) {
            return std::nullopt;
        }
        for (int i = 0; i < 3; ++i) {
            const Complex ratio = v[static_cast<std::size_t>(i + 1)] / v[0];
            out[static_cast<std::size_t>(i)] = std::clamp(
                ratio.real(), cfg.spatial_clip_min, cfg.spatial_clip_max);
        }
        return out;
    }

    // MIC: inter-channel phase difference scaled by the bin's normalized
    // angular frequency 2*pi*bin/n_fft, with n_fft = 2*(num_bins-1).
    if (bin <= 0 || num_bins < 2) {
        return std::nullopt;
    }
    if (std::abs(v[0]) == 0.0) {
        return std::nullopt;
    }
    const double omega =
        2.0 * kPi * static_cast<double>(bin) / (2.0 * (num_bins - 1));
    for (int i = 0; i < 3; ++i) {
        const double phase =
            std::arg(v[static_cast<std::size_t>(i + 1)] * std::conj(v[0]));
        out[static_cast<std::size_t>(i)] = std::clamp(
            phase / omega, cfg.spatial_clip_min, cfg.spatial_clip_max);
    }
    return out;
}

SalsaFeature extract_salsa_from_spectrogram(const ComplexSpectrogram& spec,
                                            const SalsaConfig& salsa_cfg) {
    validate_salsa_config(salsa_cfg);
    if (spec.num_channels != 4) {
        throw ConfigError("salsa: exactly 4 input channels required");
    }

    const RealTensor3 lp = log_power(spec);

    SalsaFeature feat;
    feat.frame_rate = spec.frame_rate;
    feat.format = salsa_cfg.format;
    feat.data.num_channels = kSalsaChannels;
    feat.data.num_frames = spec.num_frames;
    feat.data.num_bins = spec.num_bins;
    feat.data.data.assign(static_cast<std::size_t>(kSalsaChannels) *
                              spec.num_frames * spec.num_bins,
                          0.0f);
    feat.ss_mask.num_frames = spec.num_frames;
    feat.ss_mask.num_bins = spec.num_bins;
    feat.ss_mask.data.assign(
        static_cast<std::size_t>(spec.num_frames) * spec.num_bins, 0);

    for (int c = 0; c < 4; ++c) {
        for (int f = 0; f < spec.num_frames; ++f) {
            for (int b = 0; b < spec.num_bins; ++b) {
                feat.data.at(c, f, b) = lp.at(c, f, b);
            }
        }
    }

    const BinMask candidates = magnitude_test(lp, 0, salsa_cfg);
    const int bin_limit = salsa_cfg.max_spatial_bin >= 0
                              ? std::min(salsa_cfg.max_spatial_bin,
                                         spec.num_bins)
                              : spec.num_bins;

    for (int f = 0; f < spec.num_frames; ++f) {
        for (int b = 0; b < bin_limit; ++b) {
            if (!candidates.get(f, b)) continue;
            const HermitianMatrix4 r =
                estimate_covariance(spec, f, b, salsa_cfg);
            const EigenPair eig = eigen_4x4_hermitian(r);
            const CoherenceResult coh = coherence_test(eig, salsa_cfg);
            if (!coh.passes) continue;
            const auto spatial = normalize_principal_vector(
                eig, salsa_cfg.format, salsa_cfg, b, spec.num_bins);
            if (!spatial) continue;

            feat.ss_mask.set(f, b, true);
            feat.data.at(kDrrChannel, f, b) =
                static_cast<float>(std::log10(coh.drr));
            for (int i = 0; i < 3; ++i) {
                feat.data.at(kFirstSpatialChannel + i, f, b) =
                    static_cast<float>((*spatial)[static_cast<std::size_t>(i)]);
            }
        }
    }
    return feat;
}

SalsaFeature extract_salsa(const MultichannelAudio& audio,
                           const StftConfig& stft_cfg,
                           const SalsaConfig& salsa_cfg) {
    if (audio.num_channels() != 4) {
        throw ConfigError("salsa: exactly 4 input channels required");
    }
    return extract_salsa_from_spectrogram(stft(audio, stft_cfg), salsa_cfg);
}

}  // namespace seld

#include "seldkit/augment.hpp"

#include <algorithm>
#include <cmath>

#include "seldkit/random.hpp"

namespace seld {

SpatialPattern SpatialPattern::from_id(int id) {
    if (id < 0 || id >= kNumSpatialPatterns) {
        throw ConfigError("spatial pattern id must lie in [0, 16)");
    }
    SpatialPattern p;
    p.swap_xy = (id & 1) != 0;
    p.neg_x = (id & 2) != 0;
    p.neg_y = (id & 4) != 0;
    p.neg_z = (id & 8) != 0;
    return p;
}

SpatialPattern inverse_pattern(const SpatialPattern& p) {
    // (S P)^-1 = P S P: the swap persists and the x/y flips trade places
    // when a swap is present.
    SpatialPattern inv = p;
    if (p.swap_xy) {
        inv.neg_x = p.neg_y;
        inv.neg_y = p.neg_x;
    }
    return inv;
}

Vec3 apply_pattern_direction(const SpatialPattern& p, const Vec3& v) {
    Vec3 out = v;
    if (p.swap_xy) std::swap(out.x, out.y);
    if (p.neg_x) out.x = -out.x;
    if (p.neg_y) out.y = -out.y;
    if (p.neg_z) out.z = -out.z;
    return out;
}

SalsaFeature apply_spatial_pattern_feature(const SalsaFeature& feat,
                                           const SpatialPattern& p) {
    if (feat.format != SalsaFormat::Foa) {
        throw UnsupportedError(
            "spatial patterns are defined for FOA features only");
    }
    SalsaFeature out = feat;
    const int frames = feat.num_frames();
    const int bins = feat.num_bins();

    // channel layout: 0..3 = (W, Y, Z, X) spectra, 5..7 = (y, z, x) responses
    for (int f = 0; f < frames; ++f) {
        for (int b = 0; b < bins; ++b) {
            if (p.swap_xy) {
                std::swap(out.data.at(1, f, b), out.data.at(3, f, b));
                std::swap(out.data.at(5, f, b), out.data.at(7, f, b));
            }
            if (p.neg_x) out.data.at(7, f, b) = -out.data.at(7, f, b);
            if (p.neg_y) out.data.at(5, f, b) = -out.data.at(5, f, b);
            if (p.neg_z) out.data.at(6, f, b) = -out.data.at(6, f, b);
        }
    }
    return out;
}

std::vector<EventAnnotation> apply_spatial_pattern_labels(
    const std::vector<EventAnnotation>& events, const SpatialPattern& p) {
    std::vector<EventAnnotation> out;
    out.reserve(events.size());
    for (const auto& e : events) {
        double az = e.azimuth_deg;
        double el = e.elevation_deg;
        if (p.swap_xy) az = 90.0 - az;
        if (p.neg_x) az = 180.0 - az;
        if (p.neg_y) az = -az;
        if (p.neg_z) el = -el;
        EventAnnotation m = e;
        m.azimuth_deg = wrap_azimuth_deg(az);
        m.elevation_deg = el;
        out.push_back(m);
    }
    return out;
}

void apply_mask(SalsaFeature& feat, const MaskSpec& mask) {
    if (mask.kind == MaskKind::SsDropout) {
        throw ConfigError(
            "single-source dropout is drawn per bin; use ss_bin_dropout");
    }
    int f0 = mask.frame_begin, f1 = mask.frame_end;
    int b0 = mask.bin_begin, b1 = mask.bin_end;
    if (mask.kind == MaskKind::TimeMask) {
        b0 = 0;
        b1 = feat.num_bins();
    } else if (mask.kind == MaskKind::FreqMask) {
        f0 = 0;
        f1 = feat.num_frames();
    }
    if (f0 < 0 || f1 > feat.num_frames() || b0 < 0 || b1 > feat.num_bins() ||
        f0 > f1 || b0 > b1) {
        throw ConfigError("mask geometry outside tensor bounds");
    }
    for (int f = f0; f < f1; ++f) {
        for (int b = b0; b < b1; ++b) {
            for (int c = 0; c < 4; ++c) {
                feat.data.at(c, f, b) = mask.fill;
            }
            for (int c = 4; c < kSalsaChannels; ++c) {
                feat.data.at(c, f, b) = 0.0f;
            }
            feat.ss_mask.set(f, b, false);
        }
    }
}

SalsaFeature random_cutout(const SalsaFeature& feat, std::uint64_t seed,
                           const CutoutConfig& cfg) {
    if (cfg.min_time > cfg.max_time || cfg.min_freq > cfg.max_freq ||
        cfg.min_time < 0 || cfg.min_freq < 0) {
        throw ConfigError("cutout size ranges are invalid");
    }
    SalsaFeature out = feat;
    RandomStream rng(seed);
    const int dt = static_cast<int>(rng.next_int(
        std::min(cfg.min_time, feat.num_frames()),
        std::min(cfg.max_time, feat.num_frames())));
    const int db = static_cast<int>(rng.next_int(
        std::min(cfg.min_freq, feat.num_bins()),
        std::min(cfg.max_freq, feat.num_bins())));
    MaskSpec mask;
    mask.kind = MaskKind::Cutout;
    mask.frame_begin = static_cast<int>(rng.next_int(0, feat.num_frames() - dt));
    mask.frame_end = mask.frame_begin + dt;
    mask.bin_begin = static_cast<int>(rng.next_int(0, feat.num_bins() - db));
    mask.bin_end = mask.bin_begin + db;
    apply_mask(out, mask);
    return out;
}

SalsaFeature spec_augment(const SalsaFeature& feat, std::uint64_t seed,
                          const SpecAugmentConfig& cfg) {
    if (cfg.max_time_width < 0 || cfg.max_freq_width < 0 ||
        cfg.num_time_masks < 0 || cfg.num_freq_masks < 0) {
        throw ConfigError("spec augment widths and counts must be >= 0");
    }
    SalsaFeature out = feat;
    RandomStream rng(seed);
    for (int i = 0; i < cfg.num_time_masks; ++i) {
        const int width = static_cast<int>(
            rng.next_int(0, std::min(cfg.max_time_width, feat.num_frames())));
        MaskSpec mask;
        mask.kind = MaskKind::TimeMask;
        mask.frame_begin =
            static_cast<int>(rng.next_int(0, feat.num_frames() - width));
        mask.frame_end = mask.frame_begin + width;
        apply_mask(out, mask);
    }
    for (int i = 0; i < cfg.num_freq_masks; ++i) {
        const int width = static_cast<int>(
            rng.next_int(0, std::min(cfg.max_freq_width, feat.num_bins())));
        MaskSpec mask;
        mask.kind = MaskKind::FreqMask;
        mask.bin_begin =
            static_cast<int>(rng.next_int(0, feat.num_bins() - width));
        mask.bin_end = mask.bin_begin + width;
        apply_mask(out, mask);
    }
    return out;
}

SalsaFeature ss_bin_dropout(const SalsaFeature& feat, std::uint64_t seed,
                            double p) {
    if (p < 0.0 || p > 1.0) {
        throw ConfigError("dropout probability must lie in [0, 1]");
    }
    SalsaFeature out = feat;
    RandomStream rng(seed);
    for (int f = 0; f < feat.num_frames(); ++f) {
        for (int b = 0; b < feat.num_bins(); ++b) {
            if (!out.ss_mask.get(f, b)) continue;
            if (rng.next_unit() < p) {
                for (int c = 4; c < kSalsaChannels; ++c) {
                    out.data.at(c, f, b) = 0.0f;
                }
                out.ss_mask.set(f, b, false);
            }
        }
    }
    return out;
}

std::vector<SalsaFeature> tta_expand(const SalsaFeature& feat) {
    std::vector<SalsaFeature> out;
    out.reserve(kNumSpatialPatterns);
    for (int id = 0; id < kNumSpatialPatterns; ++id) {
        out.push_back(
            apply_spatial_pattern_feature(feat, SpatialPattern::from_id(id)));
    }
    return out;
}

std::vector<SeldFrameOutput> tta_fold(
    const std::vector<std::vector<SeldFrameOutput>>& outputs,
    const std::vector<int>& pattern_ids) {
    if (outputs.empty() || outputs.size() != pattern_ids.size()) {
        throw ConfigError(
            "tta_fold: need one pattern id per output sequence");
    }
    const std::size_t frames = outputs[0].size();
    for (const auto& seq : outputs) {
        if (seq.size() != frames) {
            throw ConfigError("tta_fold: sequences differ in frame count");
        }
    }

    std::vector<SeldFrameOutput> folded(frames);
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        const SpatialPattern inv =
            inverse_pattern(SpatialPattern::from_id(pattern_ids[i]));
        const auto& seq = outputs[i];
        for (std::size_t f = 0; f < frames; ++f) {
            for (std::size_t c = 0; c < kNumClasses; ++c) {
                const auto& d = seq[f].doa[c];
                const Vec3 mapped =
                    apply_pattern_direction(inv, Vec3{d[0], d[1], d[2]});
                folded[f].activity[c] += seq[f].activity[c];
                folded[f].doa[c][0] += mapped.x;
                folded[f].doa[c][1] += mapped.y;
                folded[f].doa[c][2] += mapped.z;
            }
        }
    }
    const double inv_n = 1.0 / static_cast<double>(outputs.size());
    for (auto& frame : folded) {
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            frame.activity[c] *= inv_n;
            for (auto& v : frame.doa[c]) v *= inv_n;
        }
    }
    return folded;
}

std::vector<SeldFrameOutput> tta_fold(
    const std::vector<std::vector<SeldFrameOutput>>& outputs) {
    if (outputs.size() != kNumSpatialPatterns) {
        throw ConfigError("tta_fold expects one output sequence per pattern");
    }
    std::vector<int> ids(kNumSpatialPatterns);
    for (int id = 0; id < kNumSpatialPatterns; ++id) {
        ids[static_cast<std::size_t>(id)] = id;
    }
    return tta_fold(outputs, ids);
}

}  // namespace seld

#include "seldkit/outputs.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace seld {

std::vector<SeldFrameOutput> encode_labels(
    const std::vector<EventAnnotation>& events, int num_frames,
    OutputFormat format) {
    if (num_frames < 0) {
        throw ConfigError("encode_labels: negative frame count");
    }
    // lowest track index wins per (frame, class)
    std::map<std::pair<int, int>, const EventAnnotation*> chosen;
    for (const auto& e : events) {
        if (e.frame >= num_frames) {
            throw ConfigError("encode_labels: frame index beyond frame count");
        }
        auto [it, inserted] = chosen.try_emplace({e.frame, e.class_index}, &e);
        if (!inserted && e.track < it->second->track) {
            it->second = &e;
        }
    }

    std::vector<SeldFrameOutput> out(static_cast<std::size_t>(num_frames));
    for (const auto& [key, event] : chosen) {
        auto& frame = out[static_cast<std::size_t>(key.first)];
        const auto c = static_cast<std::size_t>(key.second);
        const Vec3 d =
            direction_from_angles(event->azimuth_deg, event->elevation_deg);
        frame.activity[c] = 1.0;
        frame.doa[c] = {d.x, d.y, d.z};
        // for ACCDOA the activity of 1 leaves the unit vector unscaled; the
        // activity array is kept for symmetry with SEDXYZ
    }
    if (format == OutputFormat::Accdoa) {
        for (auto& frame : out) {
            for (std::size_t c = 0; c < kNumClasses; ++c) {
                for (auto& v : frame.doa[c]) v *= frame.activity[c];
            }
        }
    }
    return out;
}

DecodeResult decode_outputs(const std::vector<SeldFrameOutput>& outputs,
                            OutputFormat format, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw ConfigError("decode: threshold must lie in (0, 1)");
    }
    DecodeResult result;
    for (std::size_t f = 0; f < outputs.size(); ++f) {
        const auto& frame = outputs[f];
        for (int c = 0; c < kNumClasses; ++c) {
            const auto& d = frame.doa[static_cast<std::size_t>(c)];
            const double norm =
                std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
            const double activity =
                format == OutputFormat::SedXyz
                    ? frame.activity[static_cast<std::size_t>(c)]
                    : norm;
            if (!(activity > threshold)) continue;

            double az = 0.0, el = 0.0;
            if (norm > 0.0) {
                angles_from_direction(Vec3{d[0], d[1], d[2]}, az, el);
                el = std::clamp(el, kElevationMinDeg, kElevationMaxDeg);
            } else {
                ++result.zero_norm_frames;
            }
            result.events.push_back(make_annotation(static_cast<int>(f), c, 0,
                                                    az, el));
        }
    }
    return result;
}

std::vector<SeldFrameOutput> upsample_outputs(
    const std::vector<SeldFrameOutput>& outputs, int factor) {
    if (factor < 1) {
        throw ConfigError("upsample: factor must be >= 1");
    }
    std::vector<SeldFrameOutput> out;
    out.reserve(outputs.size() * static_cast<std::size_t>(factor));
    for (const auto& frame : outputs) {
        for (int i = 0; i < factor; ++i) {
            out.push_back(frame);
        }
    }
    return out;
}

}  // namespace seld

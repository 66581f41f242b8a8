#include "seldkit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "seldkit/random.hpp"

namespace seld {
namespace {

constexpr int kBandpassTaps = 257;

double bessel_i0(double x) {
    double sum = 1.0;
    double term = 1.0;
    const double half_x = x / 2.0;
    for (int k = 1; k < 64; ++k) {
        term *= (half_x / k) * (half_x / k);
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = kPi * x;
    return std::sin(px) / px;
}

std::vector<double> bandpass_kernel(double low_hz, double high_hz,
                                    int sample_rate) {
    const int half = kBandpassTaps / 2;
    const double f_lo = std::max(0.0, low_hz / sample_rate);
    const double f_hi = std::min(0.4999, high_hz / sample_rate);
    const double i0_beta = bessel_i0(8.0);
    std::vector<double> h(kBandpassTaps);
    for (int i = 0; i < kBandpassTaps; ++i) {
        const double u = static_cast<double>(i - half);
        const double t = u / half;
        const double w = bessel_i0(8.0 * std::sqrt(std::max(0.0, 1.0 - t * t))) /
                         i0_beta;
        h[static_cast<std::size_t>(i)] =
            (2.0 * f_hi * sinc(2.0 * f_hi * u) -
             2.0 * f_lo * sinc(2.0 * f_lo * u)) *
            w;
    }
    return h;
}

std::vector<double> render_source_signal(const SceneSource& src,
                                         std::int64_t n_samples,
                                         int sample_rate, RandomStream rng) {
    std::vector<double> s(static_cast<std::size_t>(n_samples), 0.0);
    const auto first =
        static_cast<std::int64_t>(std::ceil(src.onset_s * sample_rate));
    const auto last = std::min(
        n_samples,
        static_cast<std::int64_t>(std::ceil(src.offset_s * sample_rate)));
    if (first >= last) return s;

    switch (src.signal) {
        case SourceSignal::Sine:
            for (std::int64_t i = std::max<std::int64_t>(first, 0); i < last;
                 ++i) {
                const double t = static_cast<double>(i) / sample_rate;
                s[static_cast<std::size_t>(i)] =
                    std::sin(2.0 * kPi * src.sine_freq_hz * t);
            }
            break;
        case SourceSignal::WhiteNoise:
            for (std::int64_t i = std::max<std::int64_t>(first, 0); i < last;
                 ++i) {
                s[static_cast<std::size_t>(i)] = rng.next_gaussian();
            }
            break;
        case SourceSignal::FilteredNoise: {
            std::vector<double> w(static_cast<std::size_t>(last - first));
            for (auto& x : w) x = rng.next_gaussian();
            const std::vector<double> h =
                bandpass_kernel(src.band_low_hz, src.band_high_hz, sample_rate);
            const int half = kBandpassTaps / 2;
            double power = 0.0;
            for (std::int64_t i = first; i < last; ++i) {
                double acc = 0.0;
                for (int k = 0; k < kBandpassTaps; ++k) {
                    const std::int64_t j = i - first + half - k;
                    if (j >= 0 && j < last - first) {
                        acc += h[static_cast<std::size_t>(k)] *
                               w[static_cast<std::size_t>(j)];
                    }
                }
                s[static_cast<std::size_t>(i)] = acc;
                power += acc * acc;
            }
            // unit RMS over the active span so gain_db is comparable across
            // signal kinds
            power /= static_cast<double>(last - first);
            if (power > 0.0) {
                const double scale = 1.0 / std::sqrt(power);
                for (std::int64_t i = first; i < last; ++i) {
                    s[static_cast<std::size_t>(i)] *= scale;
                }
            }
            break;
        }
    }

    const double gain = std::pow(10.0, src.gain_db / 20.0);
    for (auto& x : s) x *= gain;
    return s;
}

Vec3 slerp(const Vec3& a, const Vec3& b, double t) {
    const double dot =
        std::clamp(a.x * b.x + a.y * b.y + a.z * b.z, -1.0, 1.0);
    const double omega = std::acos(dot);
    if (omega < 1e-9) {
        Vec3 v{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t,
               a.z + (b.z - a.z) * t};
        const double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
        if (n > 0.0) {
            v.x /= n;
            v.y /= n;
            v.z /= n;
        }
        return v;
    }
    const double sa = std::sin((1.0 - t) * omega) / std::sin(omega);
    const double sb = std::sin(t * omega) / std::sin(omega);
    return Vec3{sa * a.x + sb * b.x, sa * a.y + sb * b.y, sa * a.z + sb * b.z};
}

}  // namespace

void trajectory_angles_at(const SceneSource& source, double time_s,
                          double& az_deg, double& el_deg) {
    const auto& kp = source.trajectory;
    if (kp.empty()) {
        throw ConfigError("scene source has no trajectory keypoints");
    }
    if (kp.size() == 1 || time_s <= kp.front().time_s) {
        az_deg = kp.front().azimuth_deg;
        el_deg = kp.front().elevation_deg;
        return;
    }
    if (time_s >= kp.back().time_s) {
        az_deg = kp.back().azimuth_deg;
        el_deg = kp.back().elevation_deg;
        return;
    }
    std::size_t hi = 1;
    while (hi < kp.size() && kp[hi].time_s < time_s) ++hi;
    const auto& a = kp[hi - 1];
    const auto& b = kp[hi];
    const double span = b.time_s - a.time_s;
    const double t = span > 0.0 ? (time_s - a.time_s) / span : 0.0;
    if (a.azimuth_deg == b.azimuth_deg && a.elevation_deg == b.elevation_deg) {
        az_deg = a.azimuth_deg;
        el_deg = a.elevation_deg;
        return;
    }
    const Vec3 va = direction_from_angles(a.azimuth_deg, a.elevation_deg);
    const Vec3 vb = direction_from_angles(b.azimuth_deg, b.elevation_deg);
    angles_from_direction(slerp(va, vb, t), az_deg, el_deg);
}

void validate_scene(const SceneSpec& spec) {
    if (spec.duration_s <= 0.0) {
        throw ConfigError("scene duration must be positive");
    }
    if (spec.sample_rate <= 0) {
        throw ConfigError("scene sample rate must be positive");
    }
    for (const auto& src : spec.sources) {
        if (!(src.onset_s < src.offset_s) || src.offset_s > spec.duration_s ||
            src.onset_s < 0.0) {
            throw ConfigError(
                "scene source must satisfy 0 <= onset < offset <= duration");
        }
        if (src.class_index < -1 || src.class_index >= kNumClasses) {
            throw ConfigError("scene source class out of range");
        }
        if (src.trajectory.empty()) {
            throw ConfigError("scene source has no trajectory keypoints");
        }
        for (const auto& k : src.trajectory) {
            if (k.elevation_deg < kElevationMinDeg ||
                k.elevation_deg > kElevationMaxDeg) {
                throw ConfigError("trajectory elevation out of range [-45, 45]");
            }
            if (k.azimuth_deg < -360.0 || k.azimuth_deg >= 360.0) {
                throw ConfigError("trajectory azimuth out of range");
            }
        }
    }
}

std::pair<MultichannelAudio, std::vector<EventAnnotation>> render_foa(
    const SceneSpec& spec) {
    validate_scene(spec);
    const auto n = static_cast<std::int64_t>(
        std::llround(spec.duration_s * spec.sample_rate));

    std::vector<std::vector<double>> mix(
        4, std::vector<double>(static_cast<std::size_t>(n), 0.0));
    RandomStream root(spec.seed);

    for (std::size_t si = 0; si < spec.sources.size(); ++si) {
        const auto& src = spec.sources[si];
        const std::vector<double> s = render_source_signal(
            src, n, spec.sample_rate, root.fork(1000 + si));
        const auto first = static_cast<std::int64_t>(
            std::ceil(src.onset_s * spec.sample_rate));
        const auto last = std::min(
            n, static_cast<std::int64_t>(
                   std::ceil(src.offset_s * spec.sample_rate)));
        for (std::int64_t i = std::max<std::int64_t>(first, 0); i < last; ++i) {
            const double t = static_cast<double>(i) / spec.sample_rate;
            double az, el;
            trajectory_angles_at(src, t, az, el);
            const double az_r = deg_to_rad(az);
            const double el_r = deg_to_rad(el);
            const double x = s[static_cast<std::size_t>(i)];
            mix[0][static_cast<std::size_t>(i)] += spec.w_gain * x;
            mix[1][static_cast<std::size_t>(i)] +=
                std::sin(az_r) * std::cos(el_r) * x;
            mix[2][static_cast<std::size_t>(i)] += std::sin(el_r) * x;
            mix[3][static_cast<std::size_t>(i)] +=
                std::cos(az_r) * std::cos(el_r) * x;
        }
    }

    const double noise_amp = std::pow(10.0, spec.noise_floor_db / 20.0);
    if (noise_amp > 0.0) {
        for (int c = 0; c < 4; ++c) {
            RandomStream rng = root.fork(static_cast<std::uint64_t>(c));
            for (std::int64_t i = 0; i < n; ++i) {
                mix[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)] +=
                    noise_amp * rng.next_gaussian();
            }
        }
    }

    MultichannelAudio audio;
    audio.sample_rate = spec.sample_rate;
    audio.channels.assign(4, std::vector<float>(static_cast<std::size_t>(n)));
    for (int c = 0; c < 4; ++c) {
        for (std::int64_t i = 0; i < n; ++i) {
            audio.channels[static_cast<std::size_t>(c)]
                          [static_cast<std::size_t>(i)] = static_cast<float>(
                mix[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)]);
        }
    }

    // labels at 10 fps; frame k covers time k/10
    std::vector<EventAnnotation> events;
    std::vector<int> track_of_source(spec.sources.size(), 0);
    std::vector<int> next_track(static_cast<std::size_t>(kNumClasses), 0);
    for (std::size_t si = 0; si < spec.sources.size(); ++si) {
        const int cls = spec.sources[si].class_index;
        if (cls >= 0) {
            track_of_source[si] = next_track[static_cast<std::size_t>(cls)]++;
        }
    }
    const auto num_label_frames = static_cast<int>(
        std::llround(spec.duration_s * kLabelFps));
    for (std::size_t si = 0; si < spec.sources.size(); ++si) {
        const auto& src = spec.sources[si];
        if (src.class_index < 0) continue;  // unlabeled interferer
        for (int k = 0; k < num_label_frames; ++k) {
            const double t = static_cast<double>(k) / kLabelFps;
            if (t < src.onset_s || t >= src.offset_s) continue;
            double az, el;
            trajectory_angles_at(src, t, az, el);
            events.push_back(make_annotation(k, src.class_index,
                                             track_of_source[si], az, el));
        }
    }
    sort_annotations(events);
    return {std::move(audio), std::move(events)};
}

void doa_from_spatial_channels(const SalsaFeature& feat, int frame_begin,
                               int frame_end, double& az_deg, double& el_deg) {
    frame_begin = std::max(0, frame_begin);
    frame_end = std::min(frame_end, feat.num_frames());

    std::vector<double> ys, zs, xs;
    for (int f = frame_begin; f < frame_end; ++f) {
        for (int b = 0; b < feat.num_bins(); ++b) {
            if (!feat.ss_mask.get(f, b)) continue;
            ys.push_back(feat.data.at(kFirstSpatialChannel + 0, f, b));
            zs.push_back(feat.data.at(kFirstSpatialChannel + 1, f, b));
            xs.push_back(feat.data.at(kFirstSpatialChannel + 2, f, b));
        }
    }
    if (ys.empty()) {
        throw EstimateError("no single-source bins in the requested range");
    }
    auto median = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        const std::size_t m = v.size() / 2;
        return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
    };
    const double y = median(ys);
    const double z = median(zs);
    const double x = median(xs);
    az_deg = wrap_azimuth_deg(rad_to_deg(std::atan2(y, x)));
    el_deg = rad_to_deg(std::asin(std::clamp(z, -1.0, 1.0)));
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& value, int line_no) {
    if (value == "-inf") return -std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError("scene line " + std::to_string(line_no) +
                         ": bad number '" + value + "'");
    }
}

long parse_long(const std::string& value, int line_no) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError("scene line " + std::to_string(line_no) +
                         ": bad integer '" + value + "'");
    }
}

}  // namespace

SceneSpec parse_scene_spec(const std::string& text) {
    SceneSpec spec;
    spec.duration_s = 0.0;
    SceneSource* current = nullptr;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t == "[source]") {
            spec.sources.emplace_back();
            current = &spec.sources.back();
            continue;
        }
        if (t.front() == '[') {
            throw ParseError("scene line " + std::to_string(line_no) +
                             ": unknown section " + t);
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ParseError("scene line " + std::to_string(line_no) +
                             ": expected key = value");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));

        if (current == nullptr) {
            if (key == "duration") {
                spec.duration_s = parse_double(value, line_no);
            } else if (key == "noise_floor_db") {
                spec.noise_floor_db = parse_double(value, line_no);
            } else if (key == "seed") {
                spec.seed = static_cast<std::uint64_t>(parse_long(value, line_no));
            } else if (key == "sample_rate") {
                spec.sample_rate = static_cast<int>(parse_long(value, line_no));
            } else if (key == "w_gain") {
                spec.w_gain = parse_double(value, line_no);
            } else {
                throw ParseError("scene line " + std::to_string(line_no) +
                                 ": unknown key '" + key + "'");
            }
            continue;
        }

        if (key == "class") {
            current->class_index = static_cast<int>(parse_long(value, line_no));
        } else if (key == "onset") {
            current->onset_s = parse_double(value, line_no);
        } else if (key == "offset") {
            current->offset_s = parse_double(value, line_no);
        } else if (key == "gain_db") {
            current->gain_db = parse_double(value, line_no);
        } else if (key == "signal") {
            if (value == "white") {
                current->signal = SourceSignal::WhiteNoise;
            } else if (value.rfind("sine:", 0) == 0) {
                current->signal = SourceSignal::Sine;
                current->sine_freq_hz = parse_double(value.substr(5), line_no);
            } else if (value.rfind("band:", 0) == 0) {
                const auto colon = value.find(':', 5);
                if (colon == std::string::npos) {
                    throw ParseError("scene line " + std::to_string(line_no) +
                                     ": band signal needs band:<lo>:<hi>");
                }
                current->signal = SourceSignal::FilteredNoise;
                current->band_low_hz =
                    parse_double(value.substr(5, colon - 5), line_no);
                current->band_high_hz =
                    parse_double(value.substr(colon + 1), line_no);
            } else {
                throw ParseError("scene line " + std::to_string(line_no) +
                                 ": unknown signal '" + value + "'");
            }
        } else if (key == "keypoint") {
            std::istringstream kp(value);
            TrajectoryKeypoint k;
            if (!(kp >> k.time_s >> k.azimuth_deg >> k.elevation_deg)) {
                throw ParseError("scene line " + std::to_string(line_no) +
                                 ": keypoint needs '<time> <az> <el>'");
            }
            current->trajectory.push_back(k);
        } else if (key == "az") {
            if (current->trajectory.empty()) {
                current->trajectory.push_back({0.0, 0.0, 0.0});
            }
            current->trajectory[0].azimuth_deg = parse_double(value, line_no);
        } else if (key == "el") {
            if (current->trajectory.empty()) {
                current->trajectory.push_back({0.0, 0.0, 0.0});
            }
            current->trajectory[0].elevation_deg = parse_double(value, line_no);
        } else {
            throw ParseError("scene line " + std::to_string(line_no) +
                             ": unknown key '" + key + "'");
        }
    }

    try {
        validate_scene(spec);
    } catch (const ConfigError& e) {
        throw ParseError(std::string("scene spec invalid: ") + e.what());
    }
    return spec;
}

SceneSpec read_scene_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open scene spec: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene_spec(buf.str());
}

}  // namespace seld

#include "seldkit/types.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace seld {

double deg_to_rad(double deg) { return deg * kPi / 180.0; }
double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

double wrap_azimuth_deg(double az) {
    while (az >= 180.0) az -= 360.0;
    while (az < -180.0) az += 360.0;
    return az;
}

Vec3 direction_from_angles(double az_deg, double el_deg) {
    const double az = deg_to_rad(az_deg);
    const double el = deg_to_rad(el_deg);
    return Vec3{std::cos(el) * std::cos(az), std::cos(el) * std::sin(az),
                std::sin(el)};
}

void angles_from_direction(const Vec3& v, double& az_deg, double& el_deg) {
    const double norm = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    if (norm == 0.0) {
        az_deg = 0.0;
        el_deg = 0.0;
        return;
    }
    az_deg = wrap_azimuth_deg(rad_to_deg(std::atan2(v.y, v.x)));
    el_deg = rad_to_deg(std::asin(std::clamp(v.z / norm, -1.0, 1.0)));
}

double angular_distance_deg(double az_a_deg, double el_a_deg, double az_b_deg,
                            double el_b_deg) {
    const Vec3 a = direction_from_angles(az_a_deg, el_a_deg);
    const Vec3 b = direction_from_angles(az_b_deg, el_b_deg);
    const double dot = a.x * b.x + a.y * b.y + a.z * b.z;
    return rad_to_deg(std::acos(std::clamp(dot, -1.0, 1.0)));
}

void validate_audio(const MultichannelAudio& audio) {
    if (audio.sample_rate <= 0) {
        throw ConfigError("audio sample rate must be positive");
    }
    for (const auto& ch : audio.channels) {
        if (ch.size() != audio.channels[0].size()) {
            throw ConfigError("audio channels differ in length");
        }
    }
}

EventAnnotation make_annotation(int frame, int class_index, int track,
                                double azimuth_deg, double elevation_deg) {
    if (frame < 0) {
        throw RangeError("frame index must be non-negative");
    }
    if (class_index < 0 || class_index >= kNumClasses) {
        throw RangeError("class index out of range [0, 12)");
    }
    if (track < 0) {
        throw RangeError("track index must be non-negative");
    }
    if (elevation_deg < kElevationMinDeg || elevation_deg > kElevationMaxDeg) {
        throw RangeError("elevation out of range [-45, 45]");
    }
    EventAnnotation e;
    e.frame = frame;
    e.class_index = class_index;
    e.track = track;
    e.azimuth_deg = wrap_azimuth_deg(azimuth_deg);
    e.elevation_deg = elevation_deg;
    return e;
}

void sort_annotations(std::vector<EventAnnotation>& events) {
    std::stable_sort(events.begin(), events.end(),
                     [](const EventAnnotation& a, const EventAnnotation& b) {
                         return std::tie(a.frame, a.class_index, a.track) <
                                std::tie(b.frame, b.class_index, b.track);
                     });
}

}  // namespace seld

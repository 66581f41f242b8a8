#pragma once

#include <cstdint>
#include <vector>

#include "seldkit/errors.hpp"

namespace seld {

// Dataset conventions: 12 target classes, labels at 10 fps, azimuth in
// [-180, 180) and elevation in [-45, 45] degrees.
inline constexpr int kNumClasses = 12;
inline constexpr int kLabelFps = 10;
inline constexpr double kElevationMinDeg = -45.0;
inline constexpr double kElevationMaxDeg = 45.0;
inline constexpr int kDefaultSampleRate = 24000;

inline constexpr double kPi = 3.14159265358979323846;

double deg_to_rad(double deg);
double rad_to_deg(double rad);

// Wraps an azimuth into [-180, 180). Exact for integer-valued inputs.
double wrap_azimuth_deg(double az);

// Direction vector, x front, y left, z up.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

Vec3 direction_from_angles(double az_deg, double el_deg);

// az = atan2(y, x) wrapped to [-180, 180), el = asin(z / |v|).
// A zero vector yields (0, 0).
void angles_from_direction(const Vec3& v, double& az_deg, double& el_deg);

// Great-circle angle between two (az, el) directions, degrees in [0, 180].
double angular_distance_deg(double az_a_deg, double el_a_deg, double az_b_deg,
                            double el_b_deg);

/// Time-domain sample buffer, channel-major layout [channel][sample].
/// All channels have identical length.
struct MultichannelAudio {
    std::vector<std::vector<float>> channels;
    int sample_rate = 0;

    int num_channels() const { return static_cast<int>(channels.size()); }
    std::int64_t num_samples() const {
        return channels.empty() ? 0
                                : static_cast<std::int64_t>(channels[0].size());
    }
    double duration_s() const {
        return sample_rate > 0
                   ? static_cast<double>(num_samples()) / sample_rate
                   : 0.0;
    }
};

// Throws ConfigError unless all channels have equal length and the sample
// rate is positive.
void validate_audio(const MultichannelAudio& audio);

/// One sound-event frame label at the 10 fps label rate.
struct EventAnnotation {
    int frame = 0;
    int class_index = 0;
    int track = 0;
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;

    bool operator==(const EventAnnotation&) const = default;
};

// Builds an annotation with the azimuth wrapped into [-180, 180).
// Throws RangeError for elevation outside [-45, 45], class outside [0, 12),
// negative frame or track.
EventAnnotation make_annotation(int frame, int class_index, int track,
                                double azimuth_deg, double elevation_deg);

// Sorts by (frame, class, track).
void sort_annotations(std::vector<EventAnnotation>& events);

}  // namespace seld

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "seldkit/salsa.hpp"
#include "seldkit/types.hpp"

namespace seld {

enum class SourceSignal { WhiteNoise, Sine, FilteredNoise };

struct TrajectoryKeypoint {
    double time_s = 0.0;
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;
};

struct SceneSource {
    // class -1 renders as an unlabeled interferer and is excluded from the
    // returned annotations
    int class_index = 0;
    double onset_s = 0.0;
    double offset_s = 0.0;
    std::vector<TrajectoryKeypoint> trajectory;
    SourceSignal signal = SourceSignal::WhiteNoise;
    double sine_freq_hz = 1000.0;
    double band_low_hz = 500.0;
    double band_high_hz = 4000.0;
    double gain_db = 0.0;
};

/// Anechoic scene description. Rendering is deterministic given the seed.
struct SceneSpec {
    double duration_s = 1.0;
    std::vector<SceneSource> sources;
    // diffuse per-channel white noise level; -inf renders no noise at all
    double noise_floor_db = -std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    int sample_rate = kDefaultSampleRate;
    double w_gain = 1.0;  // omni-channel encoding gain
};

void validate_scene(const SceneSpec& spec);

/// Renders 4-channel audio in (W, Y, Z, X) order using the first-order
/// panning gains (w_gain, sin az cos el, sin el, cos az cos el), summed over
/// sources, plus the diffuse noise floor. Annotations are sampled from the
/// trajectory at the 10 fps label rate; trajectories move along great
/// circles between keypoints.
std::pair<MultichannelAudio, std::vector<EventAnnotation>> render_foa(
    const SceneSpec& spec);

/// Direction at an arbitrary time, for tests and label sampling.
void trajectory_angles_at(const SceneSource& source, double time_s,
                          double& az_deg, double& el_deg);

/// Median direction read off the spatial feature channels over the
/// single-source bins of feature frames [frame_begin, frame_end).
/// Throws EstimateError when the range holds no such bins.
void doa_from_spatial_channels(const SalsaFeature& feat, int frame_begin,
                               int frame_end, double& az_deg, double& el_deg);

/// Scene spec text format: flat `key = value` lines, one [source] section
/// per source. See the project README for the key list.
SceneSpec parse_scene_spec(const std::string& text);
SceneSpec read_scene_spec(const std::string& path);

}  // namespace seld

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "seldkit/synth.hpp"

using namespace seld;

namespace {

SceneSpec single_source_scene(double az, double el, std::uint64_t seed,
                              SourceSignal signal = SourceSignal::WhiteNoise,
                              double noise_floor_db =
                                  -std::numeric_limits<double>::infinity()) {
    SceneSpec spec;
    spec.duration_s = 2.0;
    spec.seed = seed;
    spec.noise_floor_db = noise_floor_db;
    SceneSource src;
    src.class_index = 3;
    src.onset_s = 0.3;
    src.offset_s = 1.7;
    src.signal = signal;
    src.trajectory = {{0.0, az, el}};
    spec.sources.push_back(src);
    return spec;
}

}  // namespace

TEST_CASE("front source puts identical signal on W and X, nothing on Y/Z") {
    const auto [audio, events] = render_foa(single_source_scene(0.0, 0.0, 1));
    REQUIRE(audio.num_channels() == 4);
    REQUIRE(audio.sample_rate == 24000);
    for (std::int64_t i = 0; i < audio.num_samples(); ++i) {
        REQUIRE(audio.channels[3][i] == audio.channels[0][i]);  // X == W
        REQUIRE(audio.channels[1][i] == 0.0f);                   // Y
        REQUIRE(audio.channels[2][i] == 0.0f);                   // Z
    }
    // onset 0.3 offset 1.7 at 10 fps: frames 3..16
    REQUIRE(!events.empty());
    CHECK(events.front().frame == 3);
    CHECK(events.back().frame == 16);
    CHECK(events.size() == 14);
}

TEST_CASE("lateral source puts the signal on Y only") {
    const auto [audio, events] = render_foa(single_source_scene(90.0, 0.0, 2));
    bool any_nonzero = false;
    for (std::int64_t i = 0; i < audio.num_samples(); ++i) {
        REQUIRE(std::abs(audio.channels[1][i] - audio.channels[0][i]) <=
                1e-6f * std::abs(audio.channels[0][i]));
        REQUIRE(std::abs(audio.channels[3][i]) <=
                1e-9f * std::abs(audio.channels[0][i]) + 1e-12f);
        REQUIRE(audio.channels[2][i] == 0.0f);
        any_nonzero = any_nonzero || audio.channels[0][i] != 0.0f;
    }
    CHECK(any_nonzero);
    CHECK(!events.empty());
}

TEST_CASE("zero sources renders noise only with empty annotations") {
    SceneSpec spec;
    spec.duration_s = 0.5;
    spec.noise_floor_db = -20.0;
    spec.seed = 3;
    const auto [audio, events] = render_foa(spec);
    CHECK(events.empty());
    double power = 0.0;
    for (const float x : audio.channels[0]) {
        power += static_cast<double>(x) * x;
    }
    power /= static_cast<double>(audio.num_samples());
    // -20 dB noise floor has power 0.01
    CHECK(power == doctest::Approx(0.01).epsilon(0.1));
}

TEST_CASE("rendering is deterministic for a fixed seed") {
    const auto spec = single_source_scene(25.0, -10.0, 77,
                                          SourceSignal::WhiteNoise, -30.0);
    const auto [a1, e1] = render_foa(spec);
    const auto [a2, e2] = render_foa(spec);
    CHECK(a1.channels == a2.channels);
    CHECK(e1 == e2);

    auto other = spec;
    other.seed = 78;
    const auto [a3, e3] = render_foa(other);
    CHECK(a1.channels != a3.channels);
}

TEST_CASE("moving source annotations follow the trajectory") {
    SceneSpec spec;
    spec.duration_s = 2.0;
    spec.seed = 5;
    SceneSource src;
    src.class_index = 1;
    src.onset_s = 0.0;
    src.offset_s = 2.0;
    src.signal = SourceSignal::Sine;
    src.sine_freq_hz = 500.0;
    src.trajectory = {{0.0, -60.0, 0.0}, {2.0, 60.0, 0.0}};
    spec.sources.push_back(src);
    const auto [audio, events] = render_foa(spec);
    REQUIRE(events.size() == 20);
    CHECK(events.front().azimuth_deg == doctest::Approx(-60.0).epsilon(1e-9));
    // t = 1.0 is the great-circle midpoint
    CHECK(events[10].azimuth_deg == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(events.back().azimuth_deg > 50.0);
    for (const auto& e : events) {
        CHECK(e.elevation_deg == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("interferer class -1 is rendered but not annotated") {
    SceneSpec spec = single_source_scene(10.0, 5.0, 9);
    SceneSource interferer = spec.sources[0];
    interferer.class_index = -1;
    interferer.trajectory = {{0.0, -120.0, -20.0}};
    spec.sources.push_back(interferer);
    const auto [audio, events] = render_foa(spec);
    for (const auto& e : events) {
        CHECK(e.class_index == 3);
    }
    // the interferer adds energy somewhere off the first source's axis
    bool z_nonzero = false;
    for (const float x : audio.channels[2]) {
        if (x != 0.0f) {
            z_nonzero = true;
            break;
        }
    }
    CHECK(z_nonzero);
}

TEST_CASE("overlapping same-class sources get per-class track indices") {
    SceneSpec spec;
    spec.duration_s = 1.0;
    spec.seed = 13;
    SceneSource a;
    a.class_index = 6;
    a.onset_s = 0.0;
    a.offset_s = 1.0;
    a.signal = SourceSignal::Sine;
    a.sine_freq_hz = 700.0;
    a.trajectory = {{0.0, 45.0, 0.0}};
    SceneSource b = a;
    b.sine_freq_hz = 2100.0;
    b.trajectory = {{0.0, -45.0, 0.0}};
    SceneSource c = a;
    c.class_index = 2;
    spec.sources = {a, b, c};

    const auto [audio, events] = render_foa(spec);
    int tracks_class6[2] = {0, 0};
    for (const auto& e : events) {
        if (e.class_index == 6) {
            REQUIRE(e.track >= 0);
            REQUIRE(e.track <= 1);
            ++tracks_class6[e.track];
        } else {
            CHECK(e.track == 0);
        }
    }
    CHECK(tracks_class6[0] == 10);
    CHECK(tracks_class6[1] == 10);
}

TEST_CASE("invalid scenes are rejected") {
    SceneSpec spec = single_source_scene(0.0, 0.0, 1);
    spec.sources[0].offset_s = 5.0;  // beyond duration
    CHECK_THROWS_AS(render_foa(spec), ConfigError);

    spec = single_source_scene(0.0, 0.0, 1);
    spec.sources[0].trajectory[0].elevation_deg = 80.0;
    CHECK_THROWS_AS(render_foa(spec), ConfigError);

    spec = single_source_scene(0.0, 0.0, 1);
    spec.sources[0].trajectory.clear();
    CHECK_THROWS_AS(render_foa(spec), ConfigError);
}

TEST_CASE("doa_from_spatial_channels on hand-built features") {
    SalsaFeature feat;
    feat.data.num_channels = kSalsaChannels;
    feat.data.num_frames = 1;
    feat.data.num_bins = 4;
    feat.data.data.assign(8 * 4, 0.0f);
    feat.ss_mask.num_frames = 1;
    feat.ss_mask.num_bins = 4;
    feat.ss_mask.data.assign(4, 0);

    SUBCASE("no single-source bins raises") {
        double az, el;
        CHECK_THROWS_AS(doa_from_spatial_channels(feat, 0, 1, az, el),
                        EstimateError);
    }

    SUBCASE("channels (0,0,1) decode to front") {
        feat.ss_mask.set(0, 1, true);
        feat.data.at(7, 0, 1) = 1.0f;  // x response
        double az, el;
        doa_from_spatial_channels(feat, 0, 1, az, el);
        CHECK(az == doctest::Approx(0.0));
        CHECK(el == doctest::Approx(0.0));
    }

    SUBCASE("channels (1,0,0) decode to the left") {
        feat.ss_mask.set(0, 2, true);
        feat.data.at(5, 0, 2) = 1.0f;  // y response
        double az, el;
        doa_from_spatial_channels(feat, 0, 2, az, el);
        CHECK(az == doctest::Approx(90.0));
        CHECK(el == doctest::Approx(0.0));
    }
}

TEST_CASE("scene spec text parses sources, signals and keypoints") {
    const std::string text = R"(# demo scene
duration = 2.5
noise_floor_db = -25
seed = 42

[source]
class = 4
onset = 0.2
offset = 2.0
signal = band:500:4000
gain_db = -3
keypoint = 0.0 30 10
keypoint = 2.0 60 -5

[source]
class = 7
onset = 1.0
offset = 2.5
signal = sine:1250
az = -90
el = 20
)";
    const SceneSpec spec = parse_scene_spec(text);
    CHECK(spec.duration_s == doctest::Approx(2.5));
    CHECK(spec.noise_floor_db == doctest::Approx(-25.0));
    CHECK(spec.seed == 42);
    REQUIRE(spec.sources.size() == 2);
    CHECK(spec.sources[0].signal == SourceSignal::FilteredNoise);
    CHECK(spec.sources[0].band_low_hz == doctest::Approx(500.0));
    CHECK(spec.sources[0].band_high_hz == doctest::Approx(4000.0));
    REQUIRE(spec.sources[0].trajectory.size() == 2);
    CHECK(spec.sources[0].trajectory[1].azimuth_deg == doctest::Approx(60.0));
    CHECK(spec.sources[1].signal == SourceSignal::Sine);
    CHECK(spec.sources[1].sine_freq_hz == doctest::Approx(1250.0));
    CHECK(spec.sources[1].trajectory[0].azimuth_deg == doctest::Approx(-90.0));
    CHECK(spec.sources[1].trajectory[0].elevation_deg == doctest::Approx(20.0));
}

TEST_CASE("scene spec parse errors carry line context") {
    CHECK_THROWS_AS(parse_scene_spec("duration = two\n"), ParseError);
    CHECK_THROWS_AS(parse_scene_spec("bogus_key = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_scene_spec("duration = 1\n[source]\nclass = 0\n"
                                     "onset = 0\noffset = 2\naz = 0\n"),
                    ParseError);  // offset beyond duration
}

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "seldkit/random.hpp"
#include "seldkit/stft.hpp"

using namespace seld;

namespace {

MultichannelAudio mono(std::vector<float> samples, int rate = 24000) {
    MultichannelAudio a;
    a.sample_rate = rate;
    a.channels.push_back(std::move(samples));
    return a;
}

}  // namespace

TEST_CASE("default stft grid: 257 bins at 80 fps") {
    const StftConfig cfg;
    CHECK(cfg.sample_rate == 24000);
    CHECK(cfg.win_length == 512);
    CHECK(cfg.hop_length == 300);
    CHECK(cfg.n_fft == 512);
    CHECK(cfg.num_bins() == 257);
    CHECK(cfg.frame_rate() == doctest::Approx(80.0));
}

TEST_CASE("stft of 60 s at 24 kHz yields 4801 frames x 257 bins") {
    MultichannelAudio a;
    a.sample_rate = 24000;
    a.channels.assign(4, std::vector<float>(1440000, 0.0f));
    const auto spec = stft(a, StftConfig{});
    CHECK(spec.num_channels == 4);
    CHECK(spec.num_frames == 4801);
    CHECK(spec.num_bins == 257);
    CHECK(spec.frame_rate == doctest::Approx(80.0));
}

TEST_CASE("stft of all-zero input is all zero") {
    const auto spec = stft(mono(std::vector<float>(3000, 0.0f)), StftConfig{});
    for (const auto& v : spec.data) {
        CHECK(v == std::complex<float>(0.0f, 0.0f));
    }
}

TEST_CASE("stft sample-rate mismatch is a config error") {
    CHECK_THROWS_AS(stft(mono({0.0f}, 48000), StftConfig{}), ConfigError);
}

TEST_CASE("stft config invariants are enforced") {
    StftConfig cfg;
    cfg.n_fft = 256;  // < win_length
    CHECK_THROWS_AS(validate_stft_config(cfg), ConfigError);
    cfg = StftConfig{};
    cfg.hop_length = 600;  // > win_length
    CHECK_THROWS_AS(validate_stft_config(cfg), ConfigError);
    cfg = StftConfig{};
    cfg.n_fft = 500;  // not a power of two
    CHECK_THROWS_AS(validate_stft_config(cfg), ConfigError);
}

TEST_CASE("1500 Hz sine peaks at bin 32 in every interior frame") {
    const double freq = 1500.0;
    std::vector<float> s(24000);
    for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = static_cast<float>(
            std::sin(2.0 * kPi * freq * static_cast<double>(i) / 24000.0));
    }
    const auto spec = stft(mono(std::move(s)), StftConfig{});
    const int expected_bin =
        static_cast<int>(std::lround(freq * 512.0 / 24000.0));
    REQUIRE(expected_bin == 32);
    for (int f = 2; f < spec.num_frames - 2; ++f) {
        int best = 0;
        float best_mag = -1.0f;
        for (int b = 0; b < spec.num_bins; ++b) {
            const float mag = std::abs(spec.at(0, f, b));
            if (mag > best_mag) {
                best_mag = mag;
                best = b;
            }
        }
        REQUIRE(best == expected_bin);
    }
}

TEST_CASE("stft is linear in the input") {
    RandomStream rng(17);
    std::vector<float> s(2400);
    for (auto& x : s) x = static_cast<float>(rng.next_range(-1.0, 1.0));
    std::vector<float> s3(s);
    for (auto& x : s3) x *= 3.0f;

    const auto a = stft(mono(std::move(s)), StftConfig{});
    const auto b = stft(mono(std::move(s3)), StftConfig{});
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        CHECK(std::abs(b.data[i] - 3.0f * a.data[i]) <=
              1e-4f * std::max(1.0f, std::abs(b.data[i])));
    }
}

TEST_CASE("frame count formula matches a naive framing loop") {
    const StftConfig cfg;
    for (const std::int64_t n :
         {0LL, 1LL, 299LL, 300LL, 301LL, 512LL, 599LL, 600LL, 8999LL,
          1440000LL}) {
        MultichannelAudio a;
        a.sample_rate = 24000;
        a.channels.assign(1, std::vector<float>(static_cast<std::size_t>(n),
                                                0.1f));
        const auto spec = stft(a, cfg);
        CHECK(spec.num_frames ==
              oracle::naive_centered_frame_count(n, cfg.hop_length));
        CHECK(spec.num_frames == static_cast<int>(n / cfg.hop_length) + 1);
    }
}

TEST_CASE("white-noise spectral power tracks time-domain power") {
    RandomStream rng(23);
    const std::int64_t n = 480000;  // 20 s
    std::vector<float> s(static_cast<std::size_t>(n));
    double time_power = 0.0;
    for (auto& x : s) {
        x = static_cast<float>(rng.next_gaussian());
        time_power += static_cast<double>(x) * x;
    }
    time_power /= static_cast<double>(n);

    const StftConfig cfg;
    const auto spec = stft(mono(std::move(s)), cfg);

    // window energy correction: sum over the full FFT of |X|^2 equals
    // n_fft * sum(w^2) * power for white noise
    double window_sq = 0.0;
    for (int i = 0; i < cfg.win_length; ++i) {
        const double w = 0.5 - 0.5 * std::cos(2.0 * kPi * i / cfg.win_length);
        window_sq += w * w;
    }

    double spec_power = 0.0;
    for (int f = 0; f < spec.num_frames; ++f) {
        double frame_sum = 0.0;
        for (int b = 0; b < spec.num_bins; ++b) {
            const double m2 = std::norm(std::complex<double>(
                spec.at(0, f, b).real(), spec.at(0, f, b).imag()));
            const bool interior = (b != 0 && b != spec.num_bins - 1);
            frame_sum += interior ? 2.0 * m2 : m2;
        }
        spec_power += frame_sum / (static_cast<double>(cfg.n_fft) * window_sq);
    }
    spec_power /= static_cast<double>(spec.num_frames);

    CHECK(spec_power == doctest::Approx(time_power).epsilon(0.05));
}

TEST_CASE("log power maps known magnitudes to dB") {
    ComplexSpectrogram spec;
    spec.num_channels = 1;
    spec.num_frames = 1;
    spec.num_bins = 3;
    spec.frame_rate = 80.0;
    spec.data = {{1.0f, 0.0f}, {0.0f, 0.0f}, {10.0f, 0.0f}};
    const auto lp = log_power(spec);
    CHECK(lp.at(0, 0, 0) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(lp.at(0, 0, 1) == doctest::Approx(-120.0));
    CHECK(lp.at(0, 0, 2) == doctest::Approx(20.0).epsilon(1e-6));
    for (const float v : lp.data) {
        CHECK(std::isfinite(v));
    }
}

#include "seldkit/stft.hpp"

#include <cmath>

namespace seld {
namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Reflects an index into [0, n) without repeating the edge sample
// (numpy-style "reflect"). n == 0 has no valid index; callers treat the
// sample as zero. n == 1 maps everything to 0.
std::int64_t mirror_index(std::int64_t i, std::int64_t n) {
    if (n <= 1) return 0;
    const std::int64_t period = 2 * (n - 1);
    std::int64_t m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - m;
}

std::vector<double> make_window(const StftConfig& cfg) {
    std::vector<double> w(static_cast<std::size_t>(cfg.win_length));
    // periodic Hann
    for (int i = 0; i < cfg.win_length; ++i) {
        w[static_cast<std::size_t>(i)] =
            0.5 - 0.5 * std::cos(2.0 * kPi * i / cfg.win_length);
    }
    return w;
}

}  // namespace

void validate_stft_config(const StftConfig& cfg) {
    if (cfg.sample_rate <= 0) {
        throw ConfigError("stft: sample rate must be positive");
    }
    if (cfg.win_length < 1 || cfg.hop_length < 1) {
        throw ConfigError("stft: window and hop must be >= 1");
    }
    if (cfg.n_fft < cfg.win_length) {
        throw ConfigError("stft: n_fft must be >= win_length");
    }
    if (cfg.hop_length > cfg.win_length) {
        throw ConfigError("stft: hop_length must be <= win_length");
    }
    if (!is_power_of_two(cfg.n_fft)) {
        throw ConfigError("stft: n_fft must be a power of two");
    }
}

void fft_radix2(std::vector<std::complex<double>>& buf) {
    const std::size_t n = buf.size();
    if (n <= 1) return;
    if ((n & (n - 1)) != 0) {
        throw ConfigError("fft size must be a power of two");
    }
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(buf[i], buf[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = buf[i + k];
                const std::complex<double> v = buf[i + k + len / 2] * w;
                buf[i + k] = u + v;
                buf[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

ComplexSpectrogram stft(const MultichannelAudio& audio, const StftConfig& cfg) {
    validate_stft_config(cfg);
    validate_audio(audio);
    if (audio.num_channels() < 1) {
        throw ConfigError("stft: at least one channel required");
    }
    if (audio.sample_rate != cfg.sample_rate) {
        throw ConfigError("stft: audio sample rate " +
                          std::to_string(audio.sample_rate) +
                          " does not match configured " +
                          std::to_string(cfg.sample_rate));
    }

    const std::int64_t n = audio.num_samples();
    const int num_frames = static_cast<int>(n / cfg.hop_length) + 1;
    const int num_bins = cfg.num_bins();
    const int pad = cfg.win_length / 2;

    ComplexSpectrogram spec;
    spec.num_channels = audio.num_channels();
    spec.num_frames = num_frames;
    spec.num_bins = num_bins;
    spec.frame_rate = cfg.frame_rate();
    spec.data.assign(static_cast<std::size_t>(spec.num_channels) * num_frames *
                         num_bins,
                     std::complex<float>(0.0f, 0.0f));

    const std::vector<double> window = make_window(cfg);
    std::vector<std::complex<double>> frame(
        static_cast<std::size_t>(cfg.n_fft));

    for (int c = 0; c < spec.num_channels; ++c) {
        const auto& samples = audio.channels[static_cast<std::size_t>(c)];
        for (int f = 0; f < num_frames; ++f) {
            const std::int64_t start =
                static_cast<std::int64_t>(f) * cfg.hop_length - pad;
            std::fill(frame.begin(), frame.end(),
                      std::complex<double>(0.0, 0.0));
            for (int i = 0; i < cfg.win_length; ++i) {
                double x = 0.0;
                if (n > 0) {
                    x = samples[static_cast<std::size_t>(
                        mirror_index(start + i, n))];
                }
                frame[static_cast<std::size_t>(i)] =
                    x * window[static_cast<std::size_t>(i)];
            }
            fft_radix2(frame);
            for (int b = 0; b < num_bins; ++b) {
                spec.at(c, f, b) = std::complex<float>(
                    static_cast<float>(frame[static_cast<std::size_t>(b)].real()),
                    static_cast<float>(frame[static_cast<std::size_t>(b)].imag()));
            }
        }
    }
    return spec;
}

RealTensor3 log_power(const ComplexSpectrogram& spec) {
    RealTensor3 out;
    out.num_channels = spec.num_channels;
    out.num_frames = spec.num_frames;
    out.num_bins = spec.num_bins;
    out.data.resize(spec.data.size());
    for (std::size_t i = 0; i < spec.data.size(); ++i) {
        const double re = spec.data[i].real();
        const double im = spec.data[i].imag();
        out.data[i] = static_cast<float>(
            10.0 * std::log10(re * re + im * im + kLogPowerEpsilon));
    }
    return out;
}

}  // namespace seld

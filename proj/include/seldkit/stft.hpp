#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "seldkit/types.hpp"

namespace seld {

enum class WindowKind { Hann };

/// Time-frequency grid. Defaults: 24 kHz, 512-sample window, 300-sample hop,
/// 512 FFT points, Hann window, giving a 257-bin one-sided spectrum at 80 fps.
struct StftConfig {
    int sample_rate = kDefaultSampleRate;
    int win_length = 512;
    int hop_length = 300;
    int n_fft = 512;
    WindowKind window = WindowKind::Hann;

    int num_bins() const { return n_fft / 2 + 1; }
    double frame_rate() const {
        return static_cast<double>(sample_rate) / hop_length;
    }
};

// Throws ConfigError unless n_fft >= win_length >= hop_length >= 1 and
// n_fft is a power of two.
void validate_stft_config(const StftConfig& cfg);

/// One-sided complex STFT, layout [channel][frame][bin].
struct ComplexSpectrogram {
    int num_channels = 0;
    int num_frames = 0;
    int num_bins = 0;
    double frame_rate = 0.0;
    std::vector<std::complex<float>> data;

    std::complex<float>& at(int c, int f, int b) {
        return data[(static_cast<std::size_t>(c) * num_frames + f) * num_bins +
                    b];
    }
    const std::complex<float>& at(int c, int f, int b) const {
        return data[(static_cast<std::size_t>(c) * num_frames + f) * num_bins +
                    b];
    }
};

/// Real-valued tensor, layout [channel][frame][bin].
struct RealTensor3 {
    int num_channels = 0;
    int num_frames = 0;
    int num_bins = 0;
    std::vector<float> data;

    float& at(int c, int f, int b) {
        return data[(static_cast<std::size_t>(c) * num_frames + f) * num_bins +
                    b];
    }
    float at(int c, int f, int b) const {
        return data[(static_cast<std::size_t>(c) * num_frames + f) * num_bins +
                    b];
    }
};

/// Centered multichannel STFT with reflection padding of win_length/2 on each
/// side, so frame k is aligned with time k * hop_length. Frame count is
/// floor(N / hop_length) + 1 for any input length N >= 0.
/// Throws ConfigError on a sample-rate mismatch or no channels.
ComplexSpectrogram stft(const MultichannelAudio& audio, const StftConfig& cfg);

// ~ -120 dB, reached where the spectrum is exactly zero.
inline constexpr double kLogPowerEpsilon = 1e-12;

/// Element-wise 10*log10(|X|^2 + 1e-12); finite everywhere.
RealTensor3 log_power(const ComplexSpectrogram& spec);

/// In-place radix-2 FFT used by the framer; exposed for tests.
/// size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& buf);

}  // namespace seld

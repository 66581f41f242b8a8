#include "seldkit/resample.hpp"

#include <cmath>
#include <vector>

namespace seld {
namespace {

constexpr int kHalfTaps = 32;  // 64-tap kernel
constexpr double kKaiserBeta = 8.0;

double bessel_i0(double x) {
    // power series, converges quickly for the argument range used here
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

double kaiser(double t) {
    // t in [-1, 1]
    if (t < -1.0 || t > 1.0) return 0.0;
    return bessel_i0(kKaiserBeta * std::sqrt(1.0 - t * t)) /
           bessel_i0(kKaiserBeta);
}

double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = 3.14159265358979323846 * x;
    return std::sin(px) / px;
}

}  // namespace

MultichannelAudio resample_if_needed(const MultichannelAudio& audio,
                                     int target_rate) {
    if (target_rate <= 0) {
        throw ConfigError("target sample rate must be positive");
    }
    validate_audio(audio);
    if (audio.sample_rate == target_rate) {
        return audio;
    }

    const double ratio =
        static_cast<double>(target_rate) / audio.sample_rate;
    const double cutoff = std::min(1.0, ratio);  // relative to input Nyquist
    const std::int64_t in_len = audio.num_samples();
    const auto out_len =
        static_cast<std::int64_t>(std::llround(in_len * ratio));

    MultichannelAudio out;
    out.sample_rate = target_rate;
    out.channels.assign(audio.channels.size(),
                        std::vector<float>(static_cast<std::size_t>(out_len)));

    std::vector<double> taps(2 * kHalfTaps + 1);
    for (std::size_t c = 0; c < audio.channels.size(); ++c) {
        const auto& in = audio.channels[c];
        auto& dst = out.channels[c];
        for (std::int64_t n = 0; n < out_len; ++n) {
            const double center = static_cast<double>(n) / ratio;
            const auto k0 = static_cast<std::int64_t>(std::ceil(center)) -
                            kHalfTaps;
            double acc = 0.0;
            double norm = 0.0;
            for (std::int64_t k = k0; k < k0 + 2 * kHalfTaps; ++k) {
                const double u = static_cast<double>(k) - center;
                const double w =
                    cutoff * sinc(cutoff * u) * kaiser(u / kHalfTaps);
                norm += w;
                if (k >= 0 && k < in_len) {
                    acc += w * in[static_cast<std::size_t>(k)];
                }
            }
            dst[static_cast<std::size_t>(n)] =
                norm != 0.0 ? static_cast<float>(acc / norm) : 0.0f;
        }
    }
    return out;
}

}  // namespace seld

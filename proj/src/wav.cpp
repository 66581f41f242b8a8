#include "seldkit/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace seld {
namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) |
           static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 |
           static_cast<std::uint32_t>(p[3]) << 24;
}

std::uint16_t read_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | p[1] << 8);
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
}

struct FmtInfo {
    std::uint16_t format_tag = 0;
    int channels = 0;
    int sample_rate = 0;
    int bits_per_sample = 0;
    int block_align = 0;
};

float decode_sample(const std::uint8_t* p, const FmtInfo& fmt) {
    switch (fmt.bits_per_sample) {
        case 16: {
            const std::int16_t v =
                static_cast<std::int16_t>(p[0] | p[1] << 8);
            return static_cast<float>(v) / 32768.0f;
        }
        case 24: {
            std::int32_t v = p[0] | p[1] << 8 | p[2] << 16;
            if (v & 0x800000) v |= ~0xFFFFFF;  // sign extend
            return static_cast<float>(v) / 8388608.0f;
        }
        case 32: {
            if (fmt.format_tag == kFormatFloat) {
                float f;
                std::uint32_t bits = read_u32(p);
                std::memcpy(&f, &bits, sizeof(f));
                return f;
            }
            const std::int32_t v = static_cast<std::int32_t>(read_u32(p));
            return static_cast<float>(static_cast<double>(v) / 2147483648.0);
        }
        default:
            return 0.0f;
    }
}

}  // namespace

MultichannelAudio read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open WAV file: " + path);
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        throw FormatError("not a RIFF/WAVE file: " + path);
    }

    FmtInfo fmt;
    bool have_fmt = false;
    std::size_t data_offset = 0;
    std::size_t data_size = 0;
    bool have_data = false;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
        std::size_t chunk_size = read_u32(bytes.data() + pos + 4);
        const std::size_t body = pos + 8;
        chunk_size = std::min(chunk_size, bytes.size() - body);

        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (chunk_size < 16) {
                throw FormatError("fmt chunk too small");
            }
            const std::uint8_t* p = bytes.data() + body;
            fmt.format_tag = read_u16(p);
            fmt.channels = read_u16(p + 2);
            fmt.sample_rate = static_cast<int>(read_u32(p + 4));
            fmt.block_align = read_u16(p + 12);
            fmt.bits_per_sample = read_u16(p + 14);
            if (fmt.format_tag == kFormatExtensible) {
                if (chunk_size < 40) {
                    throw FormatError("extensible fmt chunk too small");
                }
                // SubFormat GUID starts at offset 24; first two bytes carry
                // the wrapped format tag.
                fmt.format_tag = read_u16(p + 24);
            }
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            data_offset = body;
            data_size = chunk_size;
            have_data = true;
        }
        pos = body + chunk_size + (chunk_size & 1);  // chunks are word aligned
    }

    if (!have_fmt || !have_data) {
        throw FormatError("missing fmt or data chunk: " + path);
    }
    if (fmt.channels <= 0 || fmt.sample_rate <= 0) {
        throw FormatError("invalid channel count or sample rate");
    }
    if (fmt.format_tag != kFormatPcm && fmt.format_tag != kFormatFloat) {
        throw UnsupportedError("unsupported WAV codec tag " +
                               std::to_string(fmt.format_tag));
    }
    if (fmt.format_tag == kFormatFloat && fmt.bits_per_sample != 32) {
        throw UnsupportedError("only 32-bit float WAV is supported");
    }
    if (fmt.format_tag == kFormatPcm && fmt.bits_per_sample != 16 &&
        fmt.bits_per_sample != 24 && fmt.bits_per_sample != 32) {
        throw UnsupportedError("unsupported PCM bit depth " +
                               std::to_string(fmt.bits_per_sample));
    }

    const int bytes_per_sample = fmt.bits_per_sample / 8;
    const int frame_bytes = fmt.block_align > 0
                                ? fmt.block_align
                                : bytes_per_sample * fmt.channels;
    if (frame_bytes < bytes_per_sample * fmt.channels) {
        throw FormatError("block alignment smaller than frame size");
    }
    const std::size_t num_frames = frame_bytes > 0 ? data_size / frame_bytes : 0;

    MultichannelAudio audio;
    audio.sample_rate = fmt.sample_rate;
    audio.channels.assign(fmt.channels, std::vector<float>(num_frames));
    for (std::size_t f = 0; f < num_frames; ++f) {
        const std::uint8_t* frame = bytes.data() + data_offset + f * frame_bytes;
        for (int c = 0; c < fmt.channels; ++c) {
            audio.channels[c][f] =
                decode_sample(frame + c * bytes_per_sample, fmt);
        }
    }
    return audio;
}

void write_wav(const MultichannelAudio& audio, const std::string& path,
               WavSampleFormat format) {
    validate_audio(audio);
    const int channels = audio.num_channels();
    const std::int64_t frames = audio.num_samples();

    int bits = 0;
    std::uint16_t tag = kFormatPcm;
    switch (format) {
        case WavSampleFormat::Int16: bits = 16; break;
        case WavSampleFormat::Int24: bits = 24; break;
        case WavSampleFormat::Int32: bits = 32; break;
        case WavSampleFormat::Float32:
            bits = 32;
            tag = kFormatFloat;
            break;
    }
    const int bytes_per_sample = bits / 8;
    const std::uint32_t data_size =
        static_cast<std::uint32_t>(frames * channels * bytes_per_sample);

    std::vector<std::uint8_t> out;
    out.reserve(44 + data_size);
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    put_u32(out, 36 + data_size);
    out.insert(out.end(), {'W', 'A', 'V', 'E'});
    out.insert(out.end(), {'f', 'm', 't', ' '});
    put_u32(out, 16);
    put_u16(out, tag);
    put_u16(out, static_cast<std::uint16_t>(channels));
    put_u32(out, static_cast<std::uint32_t>(audio.sample_rate));
    put_u32(out, static_cast<std::uint32_t>(audio.sample_rate) * channels *
                     bytes_per_sample);
    put_u16(out, static_cast<std::uint16_t>(channels * bytes_per_sample));
    put_u16(out, static_cast<std::uint16_t>(bits));
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    put_u32(out, data_size);

    for (std::int64_t f = 0; f < frames; ++f) {
        for (int c = 0; c < channels; ++c) {
            const float x = audio.channels[c][static_cast<std::size_t>(f)];
            switch (format) {
                case WavSampleFormat::Int16: {
                    const double s = std::clamp(static_cast<double>(x), -1.0, 1.0);
                    const auto v = static_cast<std::int16_t>(
                        std::lround(s * 32767.0));
                    put_u16(out, static_cast<std::uint16_t>(v));
                    break;
                }
                case WavSampleFormat::Int24: {
                    const double s = std::clamp(static_cast<double>(x), -1.0, 1.0);
                    const auto v = static_cast<std::int32_t>(
                        std::lround(s * 8388607.0));
                    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
                    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
                    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
                    break;
                }
                case WavSampleFormat::Int32: {
                    const double s = std::clamp(static_cast<double>(x), -1.0, 1.0);
                    const auto v = static_cast<std::int32_t>(
                        std::llround(s * 2147483647.0));
                    put_u32(out, static_cast<std::uint32_t>(v));
                    break;
                }
                case WavSampleFormat::Float32: {
                    std::uint32_t bitsv;
                    std::memcpy(&bitsv, &x, sizeof(bitsv));
                    put_u32(out, bitsv);
                    break;
                }
            }
        }
    }

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw WriteError("cannot open for writing: " + path);
    }
    os.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
    if (!os) {
        throw WriteError("short write: " + path);
    }
}

}  // namespace seld

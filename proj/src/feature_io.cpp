#include "seldkit/feature_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

namespace seld {
namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

std::uint32_t read_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) |
           static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 |
           static_cast<std::uint32_t>(p[3]) << 24;
}

std::uint64_t xor_fold(const std::uint8_t* payload, std::size_t size) {
    std::uint64_t sum = 0;
    std::size_t i = 0;
    for (; i + 8 <= size; i += 8) {
        std::uint64_t word = 0;
        for (int b = 7; b >= 0; --b) {
            word = word << 8 | payload[i + static_cast<std::size_t>(b)];
        }
        sum ^= word;
    }
    if (i < size) {
        std::uint64_t word = 0;
        for (std::size_t b = i; b < size; ++b) {
            word |= static_cast<std::uint64_t>(payload[b]) << (8 * (b - i));
        }
        sum ^= word;
    }
    return sum;
}

}  // namespace

void write_feature(const SalsaFeature& feat, const std::string& path) {
    const auto channels = static_cast<std::uint32_t>(feat.data.num_channels);
    const auto frames = static_cast<std::uint32_t>(feat.data.num_frames);
    const auto bins = static_cast<std::uint32_t>(feat.data.num_bins);
    const auto centi_fps =
        static_cast<std::uint32_t>(std::llround(feat.frame_rate * 100.0));

    std::vector<std::uint8_t> out;
    out.reserve(8 + 20 + feat.data.data.size() * 4 + 8);
    out.insert(out.end(), kFeatureMagic, kFeatureMagic + 8);
    put_u32(out, kFeatureVersion);
    put_u32(out, channels);
    put_u32(out, frames);
    put_u32(out, bins);
    put_u32(out, centi_fps);

    const std::size_t payload_offset = out.size();
    for (const float v : feat.data.data) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        put_u32(out, bits);
    }
    const std::uint64_t checksum =
        xor_fold(out.data() + payload_offset, out.size() - payload_offset);
    for (int b = 0; b < 8; ++b) {
        out.push_back(static_cast<std::uint8_t>((checksum >> (8 * b)) & 0xFF));
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

SalsaFeature read_feature(const std::string& path, SalsaFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open feature file: " + path);
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (bytes.size() < 8 + 20 + 8 ||
        std::memcmp(bytes.data(), kFeatureMagic, 8) != 0) {
        throw FormatError("not a SALSAFT1 file: " + path);
    }
    const std::uint32_t version = read_u32(bytes.data() + 8);
    if (version != kFeatureVersion) {
        throw FormatError("unsupported SALSAFT1 version " +
                          std::to_string(version));
    }
    const std::uint32_t channels = read_u32(bytes.data() + 12);
    const std::uint32_t frames = read_u32(bytes.data() + 16);
    const std::uint32_t bins = read_u32(bytes.data() + 20);
    const std::uint32_t centi_fps = read_u32(bytes.data() + 24);

    const std::uint64_t count =
        static_cast<std::uint64_t>(channels) * frames * bins;
    const std::size_t payload_offset = 28;
    if (bytes.size() != payload_offset + count * 4 + 8) {
        throw FormatError("SALSAFT1 payload size mismatch: " + path);
    }

    const std::uint64_t expected =
        xor_fold(bytes.data() + payload_offset, count * 4);
    std::uint64_t stored = 0;
    for (int b = 7; b >= 0; --b) {
        stored = stored << 8 |
                 bytes[bytes.size() - 8 + static_cast<std::size_t>(b)];
    }
    if (stored != expected) {
        throw FormatError("SALSAFT1 checksum mismatch: " + path);
    }

    SalsaFeature feat;
    feat.format = format;
    feat.frame_rate = static_cast<double>(centi_fps) / 100.0;
    feat.data.num_channels = static_cast<int>(channels);
    feat.data.num_frames = static_cast<int>(frames);
    feat.data.num_bins = static_cast<int>(bins);
    feat.data.data.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint32_t bits =
            read_u32(bytes.data() + payload_offset + i * 4);
        float v;
        std::memcpy(&v, &bits, sizeof(v));
        feat.data.data[i] = v;
    }

    feat.ss_mask.num_frames = static_cast<int>(frames);
    feat.ss_mask.num_bins = static_cast<int>(bins);
    feat.ss_mask.data.assign(static_cast<std::size_t>(frames) * bins, 0);
    if (channels > static_cast<std::uint32_t>(kDrrChannel)) {
        for (int f = 0; f < feat.ss_mask.num_frames; ++f) {
            for (int b = 0; b < feat.ss_mask.num_bins; ++b) {
                feat.ss_mask.set(f, b,
                                 feat.data.at(kDrrChannel, f, b) != 0.0f);
            }
        }
    }
    return feat;
}

}  // namespace seld

#include <doctest.h>

#include <fstream>

#include "seldkit/feature_io.hpp"
#include "seldkit/random.hpp"
#include "seldkit/synth.hpp"
#include "test_support.hpp"

using namespace seld;

namespace {

SalsaFeature sample_feature(std::uint64_t seed) {
    SceneSpec spec;
    spec.duration_s = 1.0;
    spec.seed = seed;
    spec.noise_floor_db = -20.0;
    SceneSource src;
    src.class_index = 2;
    src.onset_s = 0.2;
    src.offset_s = 0.9;
    src.trajectory = {{0.0, -30.0, 15.0}};
    spec.sources.push_back(src);
    const auto [audio, events] = render_foa(spec);
    return extract_salsa(audio, StftConfig{}, SalsaConfig{});
}

std::vector<char> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::vector<char>((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("feature file round trip is bit exact") {
    testsupport::TempDir dir;
    const auto feat = sample_feature(61);
    const std::string path = dir.file("a.salsaft");
    write_feature(feat, path);

    const auto back = read_feature(path);
    CHECK(back.data.num_channels == feat.data.num_channels);
    CHECK(back.data.num_frames == feat.data.num_frames);
    CHECK(back.data.num_bins == feat.data.num_bins);
    CHECK(back.frame_rate == feat.frame_rate);
    REQUIRE(back.data.data.size() == feat.data.data.size());
    for (std::size_t i = 0; i < feat.data.data.size(); ++i) {
        REQUIRE(back.data.data[i] == feat.data.data[i]);
    }
    // rewritten bytes identical
    const std::string path2 = dir.file("b.salsaft");
    write_feature(back, path2);
    CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("feature file header carries the 80 fps grid in centi-fps") {
    testsupport::TempDir dir;
    const auto feat = sample_feature(62);
    const std::string path = dir.file("a.salsaft");
    write_feature(feat, path);
    const auto bytes = slurp(path);
    REQUIRE(bytes.size() > 28);
    CHECK(std::string(bytes.data(), 8) == "SALSAFT1");
    const auto u32at = [&](std::size_t off) {
        return static_cast<std::uint32_t>(
            static_cast<unsigned char>(bytes[off]) |
            static_cast<unsigned char>(bytes[off + 1]) << 8 |
            static_cast<unsigned char>(bytes[off + 2]) << 16 |
            static_cast<unsigned char>(bytes[off + 3]) << 24);
    };
    CHECK(u32at(8) == 1);    // version
    CHECK(u32at(12) == 8);   // channels
    CHECK(u32at(20) == 257); // bins
    CHECK(u32at(24) == 8000);  // 80.00 fps
}

TEST_CASE("single-source mask survives the file round trip") {
    testsupport::TempDir dir;
    const auto feat = sample_feature(63);
    REQUIRE(feat.ss_mask.count() > 0);
    const std::string path = dir.file("a.salsaft");
    write_feature(feat, path);
    const auto back = read_feature(path);
    CHECK(back.ss_mask.data == feat.ss_mask.data);
}

TEST_CASE("corrupt magic or checksum is rejected") {
    testsupport::TempDir dir;
    const auto feat = sample_feature(64);
    const std::string path = dir.file("a.salsaft");
    write_feature(feat, path);

    SUBCASE("bad magic") {
        std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
        f.seekp(0);
        f.write("X", 1);
        f.close();
        CHECK_THROWS_AS(read_feature(path), FormatError);
    }
    SUBCASE("flipped payload byte breaks the checksum") {
        std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
        f.seekp(40);
        char byte;
        f.seekg(40);
        f.read(&byte, 1);
        byte = static_cast<char>(byte ^ 0x5A);
        f.seekp(40);
        f.write(&byte, 1);
        f.close();
        CHECK_THROWS_AS(read_feature(path), FormatError);
    }
    SUBCASE("truncated payload is rejected") {
        const auto bytes = slurp(path);
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        os.write(bytes.data(),
                 static_cast<std::streamsize>(bytes.size() - 13));
        os.close();
        CHECK_THROWS_AS(read_feature(path), FormatError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_feature(dir.file("nope.salsaft")), FormatError);
    }
}

TEST_CASE("writing to an unwritable path raises WriteError") {
    const auto feat = sample_feature(65);
    CHECK_THROWS_AS(write_feature(feat, "/nonexistent-dir/x.salsaft"),
                    WriteError);
}

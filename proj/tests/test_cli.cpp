#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "seldkit/feature_io.hpp"
#include "seldkit/metadata.hpp"
#include "seldkit/wav.hpp"
#include "test_support.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args, const std::string& capture_path) {
    const std::string cmd = std::string(SELDKIT_CLI_PATH) + " " + args + " > " +
                            capture_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(capture_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    result.stdout_text = buf.str();
    return result;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    os << text;
}

const std::string kScene = R"(duration = 1.5
noise_floor_db = -20
seed = 11

[source]
class = 3
onset = 0.2
offset = 1.3
signal = white
keypoint = 0.0 40 10
)";

}  // namespace

TEST_CASE("cli pipeline: synth, extract, augment, score") {
    testsupport::TempDir dir;
    const std::string cap = dir.file("out.txt");
    write_text(dir.file("scene.txt"), kScene);

    // synth
    auto r = run_cli("synth --scene " + dir.file("scene.txt") + " --out-wav " +
                         dir.file("a.wav") + " --out-meta " +
                         dir.file("a.csv"),
                     cap);
    REQUIRE(r.exit_code == 0);
    const auto truth = seld::read_metadata_csv(dir.file("a.csv"));
    // onset 0.2 offset 1.3: frames 2..12
    CHECK(truth.size() == 11);

    // extract
    r = run_cli("extract --input " + dir.file("a.wav") + " --output " +
                    dir.file("a.salsaft"),
                cap);
    REQUIRE(r.exit_code == 0);
    CHECK(r.stdout_text.find("channels=8") != std::string::npos);
    CHECK(r.stdout_text.find("bins=257") != std::string::npos);
    CHECK(r.stdout_text.find("frames=121") != std::string::npos);

    // augment with the identity pattern: payload bytes unchanged
    r = run_cli("augment --input " + dir.file("a.salsaft") + " --output " +
                    dir.file("p0.salsaft") + " --pattern 0",
                cap);
    REQUIRE(r.exit_code == 0);
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    };
    CHECK(slurp(dir.file("a.salsaft")) == slurp(dir.file("p0.salsaft")));

    // augment pattern with label transform: neg_y negates azimuths
    r = run_cli("augment --input " + dir.file("a.salsaft") + " --output " +
                    dir.file("p4.salsaft") + " --pattern 4 --meta " +
                    dir.file("a.csv") + " --meta-out " + dir.file("p4.csv"),
                cap);
    REQUIRE(r.exit_code == 0);
    const auto mapped = seld::read_metadata_csv(dir.file("p4.csv"));
    REQUIRE(mapped.size() == truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
        CHECK(mapped[i].azimuth_deg == -truth[i].azimuth_deg);
    }

    // ssdrop 1.0 clears channels 4..7
    r = run_cli("augment --input " + dir.file("a.salsaft") + " --output " +
                    dir.file("drop.salsaft") + " --ssdrop 1.0",
                cap);
    REQUIRE(r.exit_code == 0);
    const auto dropped = seld::read_feature(dir.file("drop.salsaft"));
    CHECK(dropped.ss_mask.count() == 0);

    // deterministic cutout: identical seeds give identical files
    r = run_cli("augment --input " + dir.file("a.salsaft") + " --output " +
                    dir.file("c1.salsaft") + " --cutout --seed 5",
                cap);
    REQUIRE(r.exit_code == 0);
    r = run_cli("augment --input " + dir.file("a.salsaft") + " --output " +
                    dir.file("c2.salsaft") + " --cutout --seed 5",
                cap);
    REQUIRE(r.exit_code == 0);
    CHECK(slurp(dir.file("c1.salsaft")) == slurp(dir.file("c2.salsaft")));

    // score reference against itself: perfect numbers
    r = run_cli("score --ref " + dir.file("a.csv") + " --pred " +
                    dir.file("a.csv"),
                cap);
    REQUIRE(r.exit_code == 0);
    CHECK(r.stdout_text.find("\"d_seld\":0.000000") != std::string::npos);
    CHECK(r.stdout_text.find("\"er\":0.000000") != std::string::npos);
    CHECK(r.stdout_text.find("\"f1\":1.000000") != std::string::npos);

    // disjoint classes score zero F1
    auto shifted = truth;
    for (auto& e : shifted) e.class_index = (e.class_index + 1) % 12;
    seld::write_metadata_csv(shifted, dir.file("other.csv"));
    r = run_cli("score --ref " + dir.file("a.csv") + " --pred " +
                    dir.file("other.csv"),
                cap);
    REQUIRE(r.exit_code == 0);
    CHECK(r.stdout_text.find("\"f1\":0.000000") != std::string::npos);
}

TEST_CASE("cli synth of an empty scene writes silence and an empty csv") {
    testsupport::TempDir dir;
    const std::string cap = dir.file("out.txt");
    write_text(dir.file("scene.txt"), "duration = 0.5\n");
    const auto r = run_cli("synth --scene " + dir.file("scene.txt") +
                               " --out-wav " + dir.file("s.wav") +
                               " --out-meta " + dir.file("s.csv"),
                           cap);
    REQUIRE(r.exit_code == 0);
    const auto audio = seld::read_wav(dir.file("s.wav"));
    CHECK(audio.num_channels() == 4);
    CHECK(audio.num_samples() == 12000);
    for (const auto& ch : audio.channels) {
        for (const float x : ch) {
            REQUIRE(x == 0.0f);
        }
    }
    CHECK(seld::read_metadata_csv(dir.file("s.csv")).empty());
}

TEST_CASE("cli runs are deterministic: repeated invocations hash equal") {
    testsupport::TempDir dir;
    const std::string cap = dir.file("out.txt");
    write_text(dir.file("scene.txt"), kScene);
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    };

    for (const char* tag : {"1", "2"}) {
        auto r = run_cli("synth --scene " + dir.file("scene.txt") +
                             " --out-wav " + dir.file(std::string("w") + tag +
                             ".wav") + " --out-meta " +
                             dir.file(std::string("m") + tag + ".csv"),
                         cap);
        REQUIRE(r.exit_code == 0);
        r = run_cli("extract --input " + dir.file(std::string("w") + tag +
                        ".wav") + " --output " +
                        dir.file(std::string("f") + tag + ".salsaft"),
                    cap);
        REQUIRE(r.exit_code == 0);
    }
    CHECK(slurp(dir.file("w1.wav")) == slurp(dir.file("w2.wav")));
    CHECK(slurp(dir.file("m1.csv")) == slurp(dir.file("m2.csv")));
    CHECK(slurp(dir.file("f1.salsaft")) == slurp(dir.file("f2.salsaft")));
}

TEST_CASE("cli exit codes: missing input, bad usage, unwritable output") {
    testsupport::TempDir dir;
    const std::string cap = dir.file("out.txt");

    // missing input file
    auto r = run_cli("extract --input " + dir.file("missing.wav") +
                         " --output " + dir.file("x.salsaft"),
                     cap);
    CHECK(r.exit_code == 2);

    // usage error: unknown flag
    r = run_cli("extract --nope", cap);
    CHECK(r.exit_code == 2);

    // scene parse error
    write_text(dir.file("bad.txt"), "duration = banana\n");
    r = run_cli("synth --scene " + dir.file("bad.txt") + " --out-wav " +
                    dir.file("x.wav") + " --out-meta " + dir.file("x.csv"),
                cap);
    CHECK(r.exit_code == 2);

    // unwritable output
    write_text(dir.file("scene.txt"), kScene);
    r = run_cli("synth --scene " + dir.file("scene.txt") +
                    " --out-wav /nonexistent-dir/x.wav --out-meta " +
                    dir.file("x.csv"),
                cap);
    CHECK(r.exit_code == 3);
}

TEST_CASE("cli rejects spatial patterns on MIC features") {
    testsupport::TempDir dir;
    const std::string cap = dir.file("out.txt");
    write_text(dir.file("scene.txt"), kScene);
    auto r = run_cli("synth --scene " + dir.file("scene.txt") + " --out-wav " +
                         dir.file("a.wav") + " --out-meta " +
                         dir.file("a.csv"),
                     cap);
    REQUIRE(r.exit_code == 0);
    r = run_cli("extract --input " + dir.file("a.wav") + " --output " +
                    dir.file("mic.salsaft") + " --format mic",
                cap);
    REQUIRE(r.exit_code == 0);
    CHECK(r.stdout_text.find("channels=8") != std::string::npos);

    r = run_cli("augment --input " + dir.file("mic.salsaft") +
                    " --output " + dir.file("y.salsaft") +
                    " --format mic --pattern 3",
                cap);
    CHECK(r.exit_code == 2);

    // non-4-channel input fails extract with exit 2
    seld::MultichannelAudio mono;
    mono.sample_rate = 24000;
    mono.channels.assign(1, std::vector<float>(2400, 0.1f));
    seld::write_wav(mono, dir.file("mono.wav"));
    r = run_cli("extract --input " + dir.file("mono.wav") + " --output " +
                    dir.file("z.salsaft"),
                cap);
    CHECK(r.exit_code == 2);
}

TEST_CASE("cli extract honors config files and flag overrides") {
    testsupport::TempDir dir;
    const std::string cap = dir.file("out.txt");
    write_text(dir.file("scene.txt"), kScene);
    auto r = run_cli("synth --scene " + dir.file("scene.txt") + " --out-wav " +
                         dir.file("a.wav") + " --out-meta " +
                         dir.file("a.csv"),
                     cap);
    REQUIRE(r.exit_code == 0);

    write_text(dir.file("cfg.txt"), "[stft]\nhop_length = 600\nwin_length = 600\nn_fft = 1024\n");
    r = run_cli("extract --input " + dir.file("a.wav") + " --output " +
                    dir.file("a.salsaft") + " --config " + dir.file("cfg.txt"),
                cap);
    REQUIRE(r.exit_code == 0);
    // 36000 samples / 600 hop + 1
    CHECK(r.stdout_text.find("frames=61") != std::string::npos);
    CHECK(r.stdout_text.find("bins=513") != std::string::npos);

    r = run_cli("extract --input " + dir.file("a.wav") + " --output " +
                    dir.file("b.salsaft") + " --config " + dir.file("cfg.txt") +
                    " --hop-length 300 --win-length 512 --n-fft 512",
                cap);
    REQUIRE(r.exit_code == 0);
    CHECK(r.stdout_text.find("frames=121") != std::string::npos);
}

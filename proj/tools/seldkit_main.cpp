// seldkit command line: synthesize scenes, extract features, apply
// augmentations, score predictions.

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "seldkit/augment.hpp"
#include "seldkit/config.hpp"
#include "seldkit/feature_io.hpp"
#include "seldkit/metadata.hpp"
#include "seldkit/metrics.hpp"
#include "seldkit/resample.hpp"
#include "seldkit/salsa.hpp"
#include "seldkit/synth.hpp"
#include "seldkit/wav.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitOutputError = 3;

struct ExtractArgs {
    std::string input;
    std::string output;
    std::string format = "foa";
    std::string config_path;
    seld::ToolConfig cfg;
};

struct SynthArgs {
    std::string scene;
    std::string out_wav;
    std::string out_meta;
};

struct ScoreArgs {
    std::string ref;
    std::string pred;
    seld::MetricsConfig cfg;
};

struct AugmentArgs {
    std::string input;
    std::string output;
    std::string format = "foa";
    std::string meta_in;
    std::string meta_out;
    int pattern = -1;
    bool cutout = false;
    bool specaugment = false;
    double ssdrop = -1.0;
    std::uint64_t seed = 0;
    std::string config_path;
    seld::ToolConfig cfg;
};

seld::SalsaFormat parse_format(const std::string& name) {
    if (name == "foa") return seld::SalsaFormat::Foa;
    if (name == "mic") return seld::SalsaFormat::Mic;
    throw seld::ConfigError("format must be 'foa' or 'mic'");
}

int run_extract(CLI::App* cmd, ExtractArgs& args) {
    if (!args.config_path.empty()) {
        // flags override the file: reapply any explicitly-set option on top
        const seld::ToolConfig flags = args.cfg;
        args.cfg = seld::read_tool_config(args.config_path, seld::ToolConfig{});
        if (cmd->count("--sample-rate"))
            args.cfg.stft.sample_rate = flags.stft.sample_rate;
        if (cmd->count("--win-length"))
            args.cfg.stft.win_length = flags.stft.win_length;
        if (cmd->count("--hop-length"))
            args.cfg.stft.hop_length = flags.stft.hop_length;
        if (cmd->count("--n-fft")) args.cfg.stft.n_fft = flags.stft.n_fft;
        if (cmd->count("--noise-floor-percentile"))
            args.cfg.salsa.noise_floor_percentile =
                flags.salsa.noise_floor_percentile;
        if (cmd->count("--magnitude-threshold-db"))
            args.cfg.salsa.magnitude_threshold_db =
                flags.salsa.magnitude_threshold_db;
        if (cmd->count("--coherence-threshold"))
            args.cfg.salsa.coherence_threshold =
                flags.salsa.coherence_threshold;
        if (cmd->count("--smoothing-time"))
            args.cfg.salsa.smoothing_time = flags.salsa.smoothing_time;
        if (cmd->count("--smoothing-freq"))
            args.cfg.salsa.smoothing_freq = flags.salsa.smoothing_freq;
        if (cmd->count("--max-spatial-bin"))
            args.cfg.salsa.max_spatial_bin = flags.salsa.max_spatial_bin;
    }
    args.cfg.salsa.format = parse_format(args.format);
    seld::validate_tool_config(args.cfg);

    seld::MultichannelAudio audio = seld::read_wav(args.input);
    if (audio.num_channels() != 4) {
        throw seld::ConfigError("input must have 4 channels, got " +
                                std::to_string(audio.num_channels()));
    }
    audio = seld::resample_if_needed(audio, args.cfg.stft.sample_rate);
    const seld::SalsaFeature feat =
        seld::extract_salsa(audio, args.cfg.stft, args.cfg.salsa);
    seld::write_feature(feat, args.output);

    const double total =
        static_cast<double>(feat.num_frames()) * feat.num_bins();
    const double ss_pct =
        total > 0.0 ? 100.0 * static_cast<double>(feat.ss_mask.count()) / total
                    : 0.0;
    std::printf("channels=%d frames=%d bins=%d frame_rate=%.2ffps ss_bins=%.2f%%\n",
                feat.data.num_channels, feat.num_frames(), feat.num_bins(),
                feat.frame_rate, ss_pct);
    return kExitOk;
}

int run_synth(const SynthArgs& args) {
    const seld::SceneSpec spec = seld::read_scene_spec(args.scene);
    auto [audio, events] = seld::render_foa(spec);
    seld::write_wav(audio, args.out_wav, seld::WavSampleFormat::Float32);
    seld::write_metadata_csv(events, args.out_meta);
    std::printf("wrote %lld samples x %d channels, %zu label rows\n",
                static_cast<long long>(audio.num_samples()),
                audio.num_channels(), events.size());
    return kExitOk;
}

int run_score(const ScoreArgs& args) {
    const auto refs = seld::read_metadata_csv(args.ref);
    const auto preds = seld::read_metadata_csv(args.pred);
    const seld::SeldScores s = seld::score_events(refs, preds, args.cfg);
    if (s.no_references) {
        std::fprintf(stderr, "warning: reference file has no events\n");
    }
    if (s.le_undefined) {
        std::fprintf(stderr,
                     "warning: no matched pairs; localization error reported "
                     "as 180\n");
    }
    std::printf("ER_%g:   %.4f\n", args.cfg.t_deg, s.er);
    std::printf("F_%g:    %.4f\n", args.cfg.t_deg, s.f1);
    std::printf("LE_CD:  %.4f\n", s.le_deg);
    std::printf("LR_CD:  %.4f\n", s.lr);
    std::printf("D_SELD: %.4f\n", s.d_seld);
    std::printf(
        "{\"er\":%.6f,\"f1\":%.6f,\"le\":%.6f,\"lr\":%.6f,\"d_seld\":%.6f}\n",
        s.er, s.f1, s.le_deg, s.lr, s.d_seld);
    return kExitOk;
}

int run_augment(AugmentArgs& args) {
    if (!args.config_path.empty()) {
        args.cfg = seld::read_tool_config(args.config_path, args.cfg);
    }
    int actions = 0;
    actions += args.pattern >= 0 ? 1 : 0;
    actions += args.cutout ? 1 : 0;
    actions += args.specaugment ? 1 : 0;
    actions += args.ssdrop >= 0.0 ? 1 : 0;
    if (actions != 1) {
        throw seld::ConfigError(
            "exactly one of --pattern/--cutout/--specaugment/--ssdrop is "
            "required");
    }
    if (!args.meta_in.empty() && args.pattern < 0) {
        throw seld::ConfigError("--meta only applies to --pattern");
    }
    if (args.meta_in.empty() != args.meta_out.empty()) {
        throw seld::ConfigError("--meta and --meta-out go together");
    }

    const seld::SalsaFeature feat =
        seld::read_feature(args.input, parse_format(args.format));
    seld::SalsaFeature out;
    if (args.pattern >= 0) {
        const auto p = seld::SpatialPattern::from_id(args.pattern);
        out = seld::apply_spatial_pattern_feature(feat, p);
        if (!args.meta_in.empty()) {
            const auto events = seld::read_metadata_csv(args.meta_in);
            seld::write_metadata_csv(
                seld::apply_spatial_pattern_labels(events, p), args.meta_out);
        }
    } else if (args.cutout) {
        out = seld::random_cutout(feat, args.seed, args.cfg.cutout);
    } else if (args.specaugment) {
        out = seld::spec_augment(feat, args.seed, args.cfg.spec_augment);
    } else {
        out = seld::ss_bin_dropout(feat, args.seed, args.ssdrop);
    }
    seld::write_feature(out, args.output);
    std::printf("wrote %d x %d x %d feature\n", out.data.num_channels,
                out.num_frames(), out.num_bins());
    return kExitOk;
}

void add_config_flags(CLI::App* cmd, seld::ToolConfig& cfg,
                      std::string& config_path) {
    cmd->add_option("--config", config_path, "flat key=value config file");
    cmd->add_option("--sample-rate", cfg.stft.sample_rate);
    cmd->add_option("--win-length", cfg.stft.win_length);
    cmd->add_option("--hop-length", cfg.stft.hop_length);
    cmd->add_option("--n-fft", cfg.stft.n_fft);
    cmd->add_option("--noise-floor-percentile",
                    cfg.salsa.noise_floor_percentile);
    cmd->add_option("--magnitude-threshold-db",
                    cfg.salsa.magnitude_threshold_db);
    cmd->add_option("--coherence-threshold", cfg.salsa.coherence_threshold);
    cmd->add_option("--smoothing-time", cfg.salsa.smoothing_time);
    cmd->add_option("--smoothing-freq", cfg.salsa.smoothing_freq);
    cmd->add_option("--max-spatial-bin", cfg.salsa.max_spatial_bin);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SELD feature extraction, augmentation and scoring toolkit"};
    app.require_subcommand(1);

    ExtractArgs extract_args;
    auto* extract = app.add_subcommand(
        "extract", "extract an 8-channel feature file from 4-channel audio");
    extract->add_option("--input", extract_args.input, "input WAV")
        ->required();
    extract->add_option("--output", extract_args.output, "output feature file")
        ->required();
    extract
        ->add_option("--format", extract_args.format,
                     "spatial channel semantics: foa or mic")
        ->check(CLI::IsMember({"foa", "mic"}));
    add_config_flags(extract, extract_args.cfg, extract_args.config_path);

    SynthArgs synth_args;
    auto* synth = app.add_subcommand(
        "synth", "render a synthetic scene to WAV plus metadata CSV");
    synth->add_option("--scene", synth_args.scene, "scene spec file")
        ->required();
    synth->add_option("--out-wav", synth_args.out_wav)->required();
    synth->add_option("--out-meta", synth_args.out_meta)->required();

    ScoreArgs score_args;
    auto* score = app.add_subcommand(
        "score", "score a prediction CSV against a reference CSV");
    score->add_option("--ref", score_args.ref)->required();
    score->add_option("--pred", score_args.pred)->required();
    score->add_option("--t-deg", score_args.cfg.t_deg);
    score->add_option("--segment-frames", score_args.cfg.segment_frames);
    score->add_flag("--gate-lr", score_args.cfg.gate_localization_recall,
                    "count only matches within the gate toward recall");

    AugmentArgs augment_args;
    auto* augment =
        app.add_subcommand("augment", "transform a stored feature file");
    augment->add_option("--input", augment_args.input)->required();
    augment->add_option("--output", augment_args.output)->required();
    augment
        ->add_option("--format", augment_args.format,
                     "feature format the file was extracted with")
        ->check(CLI::IsMember({"foa", "mic"}));
    augment->add_option("--pattern", augment_args.pattern,
                        "spatial pattern id 0..15");
    augment->add_flag("--cutout", augment_args.cutout);
    augment->add_flag("--specaugment", augment_args.specaugment);
    augment->add_option("--ssdrop", augment_args.ssdrop,
                        "single-source bin dropout probability");
    augment->add_option("--seed", augment_args.seed);
    augment->add_option("--meta", augment_args.meta_in,
                        "labels to transform along with --pattern");
    augment->add_option("--meta-out", augment_args.meta_out);
    augment->add_option("--config", augment_args.config_path,
                        "flat key=value config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (extract->parsed()) return run_extract(extract, extract_args);
        if (synth->parsed()) return run_synth(synth_args);
        if (score->parsed()) return run_score(score_args);
        if (augment->parsed()) return run_augment(augment_args);
    } catch (const seld::WriteError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitOutputError;
    } catch (const seld::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    }
    return kExitInputError;
}

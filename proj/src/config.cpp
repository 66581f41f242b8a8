#include "seldkit/config.hpp"

#include <fstream>
#include <sstream>

namespace seld {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& v, int line_no) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ParseError("config line " + std::to_string(line_no) +
                         ": bad number '" + v + "'");
    }
}

int to_int(const std::string& v, int line_no) {
    try {
        std::size_t used = 0;
        const long d = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return static_cast<int>(d);
    } catch (const std::exception&) {
        throw ParseError("config line " + std::to_string(line_no) +
                         ": bad integer '" + v + "'");
    }
}

}  // namespace

void validate_tool_config(const ToolConfig& cfg) {
    validate_stft_config(cfg.stft);
    validate_salsa_config(cfg.salsa);
    validate_metrics_config(cfg.metrics);
    if (cfg.ss_dropout_p < 0.0 || cfg.ss_dropout_p > 1.0) {
        throw ConfigError("config: ss dropout probability must be in [0, 1]");
    }
    if (cfg.cutout.min_time > cfg.cutout.max_time ||
        cfg.cutout.min_freq > cfg.cutout.max_freq || cfg.cutout.min_time < 0 ||
        cfg.cutout.min_freq < 0) {
        throw ConfigError("config: cutout size ranges are invalid");
    }
    if (cfg.spec_augment.max_time_width < 0 ||
        cfg.spec_augment.max_freq_width < 0 ||
        cfg.spec_augment.num_time_masks < 0 ||
        cfg.spec_augment.num_freq_masks < 0) {
        throw ConfigError("config: spec augment settings are invalid");
    }
}

ToolConfig parse_tool_config(const std::string& text, const ToolConfig& base) {
    ToolConfig cfg = base;
    std::string section;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = t.substr(1, t.size() - 2);
            if (section != "stft" && section != "salsa" &&
                section != "augment" && section != "metrics") {
                throw ParseError("config line " + std::to_string(line_no) +
                                 ": unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ParseError("config line " + std::to_string(line_no) +
                             ": expected key = value");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));

        bool known = true;
        if (section == "stft") {
            if (key == "sample_rate") cfg.stft.sample_rate = to_int(value, line_no);
            else if (key == "win_length") cfg.stft.win_length = to_int(value, line_no);
            else if (key == "hop_length") cfg.stft.hop_length = to_int(value, line_no);
            else if (key == "n_fft") cfg.stft.n_fft = to_int(value, line_no);
            else known = false;
        } else if (section == "salsa") {
            if (key == "noise_floor_percentile")
                cfg.salsa.noise_floor_percentile = to_double(value, line_no);
            else if (key == "magnitude_threshold_db")
                cfg.salsa.magnitude_threshold_db = to_double(value, line_no);
            else if (key == "coherence_threshold")
                cfg.salsa.coherence_threshold = to_double(value, line_no);
            else if (key == "smoothing_time")
                cfg.salsa.smoothing_time = to_int(value, line_no);
            else if (key == "smoothing_freq")
                cfg.salsa.smoothing_freq = to_int(value, line_no);
            else if (key == "drr_clip_min")
                cfg.salsa.drr_clip_min = to_double(value, line_no);
            else if (key == "drr_clip_max")
                cfg.salsa.drr_clip_max = to_double(value, line_no);
            else if (key == "spatial_clip_min")
                cfg.salsa.spatial_clip_min = to_double(value, line_no);
            else if (key == "spatial_clip_max")
                cfg.salsa.spatial_clip_max = to_double(value, line_no);
            else if (key == "max_spatial_bin")
                cfg.salsa.max_spatial_bin = to_int(value, line_no);
            else known = false;
        } else if (section == "augment") {
            if (key == "cutout_min_time") cfg.cutout.min_time = to_int(value, line_no);
            else if (key == "cutout_max_time") cfg.cutout.max_time = to_int(value, line_no);
            else if (key == "cutout_min_freq") cfg.cutout.min_freq = to_int(value, line_no);
            else if (key == "cutout_max_freq") cfg.cutout.max_freq = to_int(value, line_no);
            else if (key == "specaugment_max_time_width")
                cfg.spec_augment.max_time_width = to_int(value, line_no);
            else if (key == "specaugment_max_freq_width")
                cfg.spec_augment.max_freq_width = to_int(value, line_no);
            else if (key == "specaugment_num_time_masks")
                cfg.spec_augment.num_time_masks = to_int(value, line_no);
            else if (key == "specaugment_num_freq_masks")
                cfg.spec_augment.num_freq_masks = to_int(value, line_no);
            else if (key == "ss_dropout_p")
                cfg.ss_dropout_p = to_double(value, line_no);
            else known = false;
        } else if (section == "metrics") {
            if (key == "t_deg") cfg.metrics.t_deg = to_double(value, line_no);
            else if (key == "segment_frames")
                cfg.metrics.segment_frames = to_int(value, line_no);
            else if (key == "gate_localization_recall")
                cfg.metrics.gate_localization_recall = to_int(value, line_no) != 0;
            else known = false;
        } else {
            throw ParseError("config line " + std::to_string(line_no) +
                             ": key outside any section");
        }
        if (!known) {
            throw ParseError("config line " + std::to_string(line_no) +
                             ": unknown key '" + key + "' in [" + section +
                             "]");
        }
    }

    validate_tool_config(cfg);
    return cfg;
}

ToolConfig read_tool_config(const std::string& path, const ToolConfig& base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tool_config(buf.str(), base);
}

}  // namespace seld

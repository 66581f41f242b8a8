#include "seldkit/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <tuple>

#include "seldkit/hungarian.hpp"

namespace seld {
namespace {

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid),
                     v.end());
    double hi = v[mid];
    if (v.size() % 2 == 0) {
        const double lo =
            *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
        return 0.5 * (lo + hi);
    }
    return hi;
}

// One (class, track) instance inside a segment: component-wise median of the
// frame directions, renormalized.
struct Instance {
    Vec3 dir;
};

using CellKey = std::tuple<int, int>;  // (segment, class)

std::map<CellKey, std::vector<Instance>> collect_instances(
    const std::vector<EventAnnotation>& events, int segment_frames) {
    std::map<std::tuple<int, int, int>, std::vector<Vec3>> grouped;
    for (const auto& e : events) {
        const int segment = e.frame / segment_frames;
        grouped[{segment, e.class_index, e.track}].push_back(
            direction_from_angles(e.azimuth_deg, e.elevation_deg));
    }
    std::map<CellKey, std::vector<Instance>> cells;
    for (const auto& [key, dirs] : grouped) {
        std::vector<double> xs, ys, zs;
        xs.reserve(dirs.size());
        ys.reserve(dirs.size());
        zs.reserve(dirs.size());
        for (const auto& d : dirs) {
            xs.push_back(d.x);
            ys.push_back(d.y);
            zs.push_back(d.z);
        }
        Vec3 m{median(std::move(xs)), median(std::move(ys)),
               median(std::move(zs))};
        const double norm = std::sqrt(m.x * m.x + m.y * m.y + m.z * m.z);
        if (norm > 0.0) {
            m.x /= norm;
            m.y /= norm;
            m.z /= norm;
        }
        cells[{std::get<0>(key), std::get<1>(key)}].push_back(Instance{m});
    }
    return cells;
}

double angle_between(const Vec3& a, const Vec3& b) {
    const double dot = a.x * b.x + a.y * b.y + a.z * b.z;
    return std::acos(std::clamp(dot, -1.0, 1.0)) * 180.0 / kPi;
}

}  // namespace

void validate_metrics_config(const MetricsConfig& cfg) {
    if (cfg.t_deg <= 0.0) {
        throw ConfigError("metrics: angular gate must be positive");
    }
    if (cfg.segment_frames < 1) {
        throw ConfigError("metrics: segment length must be >= 1 frame");
    }
}

MatchingResult match_events(const std::vector<EventAnnotation>& refs,
                            const std::vector<EventAnnotation>& preds,
                            int segment_frames) {
    if (segment_frames < 1) {
        throw ConfigError("metrics: segment length must be >= 1 frame");
    }

    const auto ref_cells = collect_instances(refs, segment_frames);
    const auto pred_cells = collect_instances(preds, segment_frames);

    MatchingResult result;
    result.segment_frames = segment_frames;

    std::map<CellKey, std::pair<const std::vector<Instance>*,
                                const std::vector<Instance>*>>
        keys;
    for (const auto& [key, insts] : ref_cells) keys[key].first = &insts;
    for (const auto& [key, insts] : pred_cells) keys[key].second = &insts;

    for (const auto& [key, pair] : keys) {
        static const std::vector<Instance> kEmpty;
        const auto& r = pair.first ? *pair.first : kEmpty;
        const auto& p = pair.second ? *pair.second : kEmpty;

        SegmentClassMatch cell;
        cell.segment = std::get<0>(key);
        cell.class_index = std::get<1>(key);

        if (!r.empty() && !p.empty()) {
            const int rows = static_cast<int>(r.size());
            const int cols = static_cast<int>(p.size());
            std::vector<double> cost(static_cast<std::size_t>(rows) * cols);
            for (int i = 0; i < rows; ++i) {
                for (int j = 0; j < cols; ++j) {
                    cost[static_cast<std::size_t>(i) * cols + j] =
                        angle_between(r[static_cast<std::size_t>(i)].dir,
                                      p[static_cast<std::size_t>(j)].dir);
                }
            }
            const AssignmentResult assign = solve_assignment(cost, rows, cols);
            for (int i = 0; i < rows; ++i) {
                const int j = assign.assignment[static_cast<std::size_t>(i)];
                if (j >= 0) {
                    cell.matched_errors_deg.push_back(
                        cost[static_cast<std::size_t>(i) * cols + j]);
                }
            }
            cell.unmatched_refs = rows - cell.matched();
            cell.unmatched_preds = cols - cell.matched();
        } else {
            cell.unmatched_refs = static_cast<int>(r.size());
            cell.unmatched_preds = static_cast<int>(p.size());
        }
        result.cells.push_back(std::move(cell));
    }
    return result;
}

double aggregate_seld(double er, double f1, double le_deg, double lr) {
    return (er + (1.0 - f1) + le_deg / 180.0 + (1.0 - lr)) / 4.0;
}

SeldScores compute_scores(const MatchingResult& matching,
                          const MetricsConfig& cfg) {
    validate_metrics_config(cfg);

    // per-segment miss counts after the detection gate
    std::map<int, std::array<long, 3>> segments;  // {fn, fp, n_ref}

    long tp_det = 0, fp_det = 0, fn_det = 0;
    long matched_pairs = 0, gated_pairs = 0, total_refs = 0;
    double error_sum = 0.0;

    for (const auto& cell : matching.cells) {
        long cell_fn = cell.unmatched_refs;
        long cell_fp = cell.unmatched_preds;
        for (const double err : cell.matched_errors_deg) {
            ++matched_pairs;
            error_sum += err;
            if (err <= cfg.t_deg) {
                ++tp_det;
                ++gated_pairs;
            } else {
                ++cell_fn;
                ++cell_fp;
            }
        }
        fn_det += cell_fn;
        fp_det += cell_fp;
        total_refs += cell.ref_count();

        auto& seg = segments[cell.segment];
        seg[0] += cell_fn;
        seg[1] += cell_fp;
        seg[2] += cell.ref_count();
    }

    long sdi = 0, n_total = 0;
    for (const auto& [seg, counts] : segments) {
        (void)seg;
        // S + D + I collapses to max(fn, fp)
        sdi += std::max(counts[0], counts[1]);
        n_total += counts[2];
    }

    SeldScores scores;
    scores.no_references = (total_refs == 0);
    scores.er = static_cast<double>(sdi) /
                static_cast<double>(std::max<long>(n_total, 1));
    const long f1_denom = 2 * tp_det + fp_det + fn_det;
    scores.f1 = f1_denom > 0 ? 2.0 * static_cast<double>(tp_det) /
                                   static_cast<double>(f1_denom)
                             : 1.0;

    if (matched_pairs > 0) {
        scores.le_deg = error_sum / static_cast<double>(matched_pairs);
    } else {
        scores.le_deg = 180.0;
        scores.le_undefined = true;
    }

    const long lr_hits =
        cfg.gate_localization_recall ? gated_pairs : matched_pairs;
    scores.lr = total_refs > 0 ? static_cast<double>(lr_hits) /
                                     static_cast<double>(total_refs)
                               : 1.0;

    scores.d_seld = aggregate_seld(scores.er, scores.f1, scores.le_deg,
                                   scores.lr);
    return scores;
}

SeldScores score_events(const std::vector<EventAnnotation>& refs,
                        const std::vector<EventAnnotation>& preds,
                        const MetricsConfig& cfg) {
    validate_metrics_config(cfg);
    return compute_scores(match_events(refs, preds, cfg.segment_frames), cfg);
}

}  // namespace seld

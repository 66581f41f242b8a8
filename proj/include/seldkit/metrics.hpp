#pragma once

#include <vector>

#include "seldkit/types.hpp"

namespace seld {

struct MetricsConfig {
    double t_deg = 20.0;     // angular gate for detection credit
    int segment_frames = 10;  // 1-second segments at the 10 fps label rate
    // Count only matches within t_deg toward localization recall. Off by
    // default: LR is the plain class-match recall.
    bool gate_localization_recall = false;
};

void validate_metrics_config(const MetricsConfig& cfg);

/// Matching outcome for one (segment, class) cell. matched_errors_deg holds
/// the angular error of every class-matched reference/prediction pair; the
/// detection gate is applied later by compute_scores.
struct SegmentClassMatch {
    int segment = 0;
    int class_index = 0;
    std::vector<double> matched_errors_deg;
    int unmatched_refs = 0;
    int unmatched_preds = 0;

    int matched() const { return static_cast<int>(matched_errors_deg.size()); }
    int ref_count() const { return matched() + unmatched_refs; }
    int pred_count() const { return matched() + unmatched_preds; }
};

struct MatchingResult {
    std::vector<SegmentClassMatch> cells;
    int segment_frames = 10;
};

/// Groups events into 1-second segments, forms one instance per
/// (class, track) with its per-segment median direction, and pairs reference
/// and predicted instances per (segment, class) with a minimum-total-angle
/// assignment.
MatchingResult match_events(const std::vector<EventAnnotation>& refs,
                            const std::vector<EventAnnotation>& preds,
                            int segment_frames = 10);

/// The four SELD metrics plus their aggregate.
struct SeldScores {
    double er = 0.0;      // location-dependent detection error rate
    double f1 = 0.0;      // location-dependent detection F1
    double le_deg = 0.0;  // class-dependent localization error, degrees
    double lr = 0.0;      // class-dependent localization recall
    double d_seld = 0.0;

    // set when LE had no matched pairs or the reference list was empty
    bool le_undefined = false;
    bool no_references = false;
};

/// Mean of the four error-oriented terms:
/// (ER + (1 - F) + LE/180 + (1 - LR)) / 4.
double aggregate_seld(double er, double f1, double le_deg, double lr);

/// Applies the t_deg detection gate to the matching and aggregates.
/// A matched pair with error <= t_deg is a detection hit; beyond the gate it
/// counts as one false positive plus one false negative. Per segment,
/// substitutions/deletions/insertions follow from the summed miss counts.
/// LE averages matched-pair errors without the gate; with no pairs it is
/// reported as 180 with le_undefined set.
SeldScores compute_scores(const MatchingResult& matching,
                          const MetricsConfig& cfg = {});

/// match_events + compute_scores in one call.
SeldScores score_events(const std::vector<EventAnnotation>& refs,
                        const std::vector<EventAnnotation>& preds,
                        const MetricsConfig& cfg = {});

}  // namespace seld

#ifndef LDSAL_EVAL_HPP
#define LDSAL_EVAL_HPP

#include <string>
#include <vector>

#include "ldsal/analytics.hpp"
#include "ldsal/fixation.hpp"
#include "ldsal/raster.hpp"

namespace ldsal {

struct RocPoint {
    double threshold = 0.0;
    double tpr = 0.0;              // fraction of fixations at or above threshold
    double salient_fraction = 0.0; // fraction of image pixels at or above threshold
};

/// Fixation-based ROC: points sorted by descending threshold, endpoints
/// (0,0) and (1,1) appended, AUC by trapezoidal integration of TPR
/// against salient_fraction.
struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

/// Judd-variant ROC: thresholds are the distinct saliency values sampled
/// at the retained fixation pixels; all fixations that share a value
/// enter at that threshold together. Requires at least one retained
/// fixation.
RocCurve roc_judd(const FloatMap& saliency, const FixationSet& fixations, const DensityParams& params);

/// Per-image AUCs of one model over an image set.
struct ModelRun {
    std::string model;
    std::vector<std::pair<std::string, double>> image_aucs;  // (image_id, auc)
};

struct ModelSummary {
    std::string model;
    double mean_auc = 0.0;
    double ci_low = 0.0, ci_high = 0.0;
    bool ci_defined = false;  // false with fewer than 2 images
};

struct PairedDifference {
    std::string baseline, guided;
    double mean_diff = 0.0;      // mean over images of (guided - baseline)
    double ci_low = 0.0, ci_high = 0.0;
    bool ci_defined = false;
};

struct ModelComparison {
    std::vector<ModelSummary> summaries;
    std::vector<PairedDifference> differences;  // every ordered model pair
};

/// Mean AUC with normal-approximation 95% CI per model, plus paired
/// per-image differences for every ordered pair. All runs must cover the
/// same image set.
ModelComparison compare_models(const std::vector<ModelRun>& runs);

/// TPR of a curve linearly interpolated onto a fixed salient-fraction
/// grid of 101 points, for curve averaging across images.
std::vector<double> curve_on_grid(const RocCurve& curve);

}  // namespace ldsal

#endif

#include "ldsal/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ldsal {

RocCurve roc_judd(const FloatMap& saliency, const FixationSet& fixations, const DensityParams& params) {
    for (const double v : saliency.data())
        if (!std::isfinite(v)) throw std::invalid_argument("roc_judd: saliency must be finite");
    validate_fixations(fixations, saliency.width(), saliency.height());
    const std::vector<FixationRecord> kept = retained_fixations(fixations, params.drop_first_fixation);
    if (kept.empty()) throw std::invalid_argument("roc_judd: no fixations retained");

    std::vector<double> samples;
    samples.reserve(kept.size());
    for (const FixationRecord& rec : kept)
        samples.push_back(saliency(static_cast<int>(std::floor(rec.x)), static_cast<int>(std::floor(rec.y))));
    std::sort(samples.begin(), samples.end());

    std::vector<double> pixels = saliency.data();
    std::sort(pixels.begin(), pixels.end());

    std::vector<double> thresholds = samples;
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    const double n_fix = static_cast<double>(samples.size());
    const double n_px = static_cast<double>(pixels.size());

    RocCurve curve;
    curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    for (auto it = thresholds.rbegin(); it != thresholds.rend(); ++it) {  // descending
        const double t = *it;
        const double fix_ge = static_cast<double>(samples.end() - std::lower_bound(samples.begin(), samples.end(), t));
        const double px_ge = static_cast<double>(pixels.end() - std::lower_bound(pixels.begin(), pixels.end(), t));
        curve.points.push_back({static_cast<double>(t), fix_ge / n_fix, px_ge / n_px});
    }
    curve.points.push_back({-std::numeric_limits<double>::infinity(), 1.0, 1.0});

    double auc = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const RocPoint& a = curve.points[i - 1];
        const RocPoint& b = curve.points[i];
        auc += (b.salient_fraction - a.salient_fraction) * (a.tpr + b.tpr) / 2.0;
    }
    curve.auc = auc;
    return curve;
}

namespace {

struct MeanCi {
    double mean = 0.0, ci_low = 0.0, ci_high = 0.0;
    bool defined = false;
};

MeanCi mean_ci95(const std::vector<double>& values) {
    MeanCi out;
    const std::size_t n = values.size();
    double sum = 0.0;
    for (const double v : values) sum += v;
    out.mean = sum / static_cast<double>(n);
    if (n < 2) return out;
    double sq = 0.0;
    for (const double v : values) sq += (v - out.mean) * (v - out.mean);
    const double sd = std::sqrt(sq / static_cast<double>(n - 1));
    const double half = 1.96 * sd / std::sqrt(static_cast<double>(n));
    out.ci_low = out.mean - half;
    out.ci_high = out.mean + half;
    out.defined = true;
    return out;
}

}  // namespace

ModelComparison compare_models(const std::vector<ModelRun>& runs) {
    if (runs.size() < 2) throw std::invalid_argument("compare_models: need at least 2 runs");

    std::vector<ModelRun> sorted = runs;
    for (ModelRun& run : sorted) {
        std::sort(run.image_aucs.begin(), run.image_aucs.end());
        if (run.image_aucs.empty()) throw std::invalid_argument("compare_models: empty run " + run.model);
    }
    for (std::size_t m = 1; m < sorted.size(); ++m) {
        if (sorted[m].image_aucs.size() != sorted[0].image_aucs.size())
            throw std::invalid_argument("compare_models: mismatched image sets");
        for (std::size_t i = 0; i < sorted[0].image_aucs.size(); ++i)
            if (sorted[m].image_aucs[i].first != sorted[0].image_aucs[i].first)
                throw std::invalid_argument("compare_models: mismatched image sets");
    }

    ModelComparison cmp;
    for (const ModelRun& run : sorted) {
        std::vector<double> aucs;
        aucs.reserve(run.image_aucs.size());
        for (const auto& [id, auc] : run.image_aucs) aucs.push_back(auc);
        const MeanCi stats = mean_ci95(aucs);
        cmp.summaries.push_back({run.model, stats.mean, stats.ci_low, stats.ci_high, stats.defined});
    }
    for (std::size_t a = 0; a < sorted.size(); ++a)
        for (std::size_t b = 0; b < sorted.size(); ++b) {
            if (a == b) continue;
            std::vector<double> diffs(sorted[a].image_aucs.size());
            for (std::size_t i = 0; i < diffs.size(); ++i)
                diffs[i] = sorted[b].image_aucs[i].second - sorted[a].image_aucs[i].second;
            const MeanCi stats = mean_ci95(diffs);
            cmp.differences.push_back(
                {sorted[a].model, sorted[b].model, stats.mean, stats.ci_low, stats.ci_high, stats.defined});
        }
    return cmp;
}

std::vector<double> curve_on_grid(const RocCurve& curve) {
    std::vector<double> grid(101, 0.0);
    for (int k = 0; k <= 100; ++k) {
        const double x = k / 100.0;
        // points run from (0,0) to (1,1) with non-decreasing fractions
        double tpr = 1.0;
        for (std::size_t i = 1; i < curve.points.size(); ++i) {
            const RocPoint& a = curve.points[i - 1];
            const RocPoint& b = curve.points[i];
            if (x > b.salient_fraction) continue;
            if (b.salient_fraction == a.salient_fraction) {
                tpr = std::max(a.tpr, b.tpr);
            } else {
                const double t = (x - a.salient_fraction) / (b.salient_fraction - a.salient_fraction);
                tpr = a.tpr + t * (b.tpr - a.tpr);
            }
            break;
        }
        grid[k] = tpr;
    }
    return grid;
}

}  // namespace ldsal

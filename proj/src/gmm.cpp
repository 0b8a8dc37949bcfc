#include "ldsal/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace ldsal {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

struct WeightedPoint {
    double x, y, w;
};

std::vector<WeightedPoint> collect_points(const FloatMap& weights) {
    std::vector<WeightedPoint> pts;
    pts.reserve(weights.size() / 4);
    for (int y = 0; y < weights.height(); ++y)
        for (int x = 0; x < weights.width(); ++x) {
            const double w = weights(x, y);
            if (w < 0.0 || !std::isfinite(w))
                throw std::invalid_argument("fit_gmm: weights must be finite and non-negative");
            if (w > 0.0) pts.push_back({static_cast<double>(x), static_cast<double>(y), w});
        }
    return pts;
}

// Greedy max-min-distance seeding among the heaviest pixels; the first
// center comes from the seeded RNG, ties go to the lower candidate index.
std::vector<std::pair<double, double>> pick_initial_means(const std::vector<WeightedPoint>& pts,
                                                          int k, unsigned seed) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pts[a].w > pts[b].w; });
    const std::size_t top = std::max<std::size_t>(static_cast<std::size_t>(k),
                                                  (pts.size() + 99) / 100);  // top 1%
    order.resize(std::min(order.size(), top));

    std::mt19937 rng(seed);
    std::vector<std::pair<double, double>> means;
    means.reserve(k);
    const std::size_t first = order[rng() % order.size()];
    means.emplace_back(pts[first].x, pts[first].y);

    std::vector<double> min_d2(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const double dx = pts[order[i]].x - means[0].first;
        const double dy = pts[order[i]].y - means[0].second;
        min_d2[i] = dx * dx + dy * dy;
    }
    while (static_cast<int>(means.size()) < k) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < order.size(); ++i)
            if (min_d2[i] > min_d2[best]) best = i;
        means.emplace_back(pts[order[best]].x, pts[order[best]].y);
        for (std::size_t i = 0; i < order.size(); ++i) {
            const double dx = pts[order[i]].x - means.back().first;
            const double dy = pts[order[i]].y - means.back().second;
            min_d2[i] = std::min(min_d2[i], dx * dx + dy * dy);
        }
    }
    return means;
}

}  // namespace

void PriorParams::validate() const {
    if (components < 1) throw std::invalid_argument("PriorParams: components must be >= 1");
    if (max_em_iters < 1) throw std::invalid_argument("PriorParams: max_em_iters must be >= 1");
    if (!(loglik_rel_tol > 0.0)) throw std::invalid_argument("PriorParams: loglik_rel_tol must be > 0");
    if (!(covariance_floor > 0.0)) throw std::invalid_argument("PriorParams: covariance_floor must be > 0");
}

double gaussian2_pdf(const GmmComponent& c, double x, double y) {
    const double det = c.covariance.det();
    const double inv_xx = c.covariance.yy / det;
    const double inv_yy = c.covariance.xx / det;
    const double inv_xy = -c.covariance.xy / det;
    const double dx = x - c.mean_x, dy = y - c.mean_y;
    const double q = dx * dx * inv_xx + 2.0 * dx * dy * inv_xy + dy * dy * inv_yy;
    return std::exp(-0.5 * q) / (kTwoPi * std::sqrt(det));
}

GmmFit fit_gmm(const FloatMap& weights, const PriorParams& params) {
    params.validate();
    const std::vector<WeightedPoint> pts = collect_points(weights);
    if (pts.empty()) throw std::invalid_argument("fit_gmm: no mass to fit");

    const int k = params.components;
    const auto means = pick_initial_means(pts, k, params.rng_seed);
    const double init_sigma = std::min(weights.width(), weights.height()) / 8.0;

    std::vector<GmmComponent> comps(k);
    for (int j = 0; j < k; ++j) {
        comps[j].mean_x = means[j].first;
        comps[j].mean_y = means[j].second;
        comps[j].covariance = {std::max(init_sigma * init_sigma, params.covariance_floor), 0.0,
                               std::max(init_sigma * init_sigma, params.covariance_floor)};
        comps[j].proportion = 1.0 / k;
    }

    double total_w = 0.0;
    for (const WeightedPoint& p : pts) total_w += p.w;

    GmmFit fit;
    std::vector<double> resp(pts.size() * k);
    for (int iter = 0; iter < params.max_em_iters; ++iter) {
        // E step and weighted log-likelihood
        double loglik = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double mix = 0.0;
            for (int j = 0; j < k; ++j) {
                const double p = comps[j].proportion * gaussian2_pdf(comps[j], pts[i].x, pts[i].y);
                resp[i * k + j] = p;
                mix += p;
            }
            if (mix <= 0.0 || !std::isfinite(mix)) {
                // far-outlier point: fall back to uniform responsibility
                for (int j = 0; j < k; ++j) resp[i * k + j] = 1.0 / k;
                loglik += pts[i].w * -745.0;  // log of the smallest positive double
                continue;
            }
            for (int j = 0; j < k; ++j) resp[i * k + j] /= mix;
            loglik += pts[i].w * std::log(mix);
        }
        fit.loglik.push_back(loglik);

        // M step
        for (int j = 0; j < k; ++j) {
            double nj = 0.0, mx = 0.0, my = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const double r = pts[i].w * resp[i * k + j];
                nj += r;
                mx += r * pts[i].x;
                my += r * pts[i].y;
            }
            if (nj <= 0.0) {  // starved component: keep its mean, reset shape
                comps[j].proportion = 0.0;
                comps[j].covariance = floor_eigenvalues(comps[j].covariance, params.covariance_floor);
                continue;
            }
            mx /= nj;
            my /= nj;
            Sym2 cov;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const double r = pts[i].w * resp[i * k + j];
                const double dx = pts[i].x - mx, dy = pts[i].y - my;
                cov.xx += r * dx * dx;
                cov.xy += r * dx * dy;
                cov.yy += r * dy * dy;
            }
            cov.xx /= nj;
            cov.xy /= nj;
            cov.yy /= nj;
            comps[j].mean_x = mx;
            comps[j].mean_y = my;
            comps[j].covariance = floor_eigenvalues(cov, params.covariance_floor);
            comps[j].proportion = nj / total_w;
        }

        if (fit.loglik.size() >= 2) {
            const double prev = fit.loglik[fit.loglik.size() - 2];
            const double cur = fit.loglik.back();
            if (std::abs(cur - prev) < params.loglik_rel_tol * std::abs(prev)) {
                fit.converged = true;
                break;
            }
        }
    }
    fit.components = std::move(comps);
    return fit;
}

std::vector<double> component_weights(const std::vector<GmmComponent>& components, int width, int height) {
    const double cx = (width - 1) / 2.0, cy = (height - 1) / 2.0;
    const double d_max = std::hypot(static_cast<double>(width - 1), static_cast<double>(height - 1)) / 2.0;
    std::vector<double> out;
    out.reserve(components.size());
    for (const GmmComponent& c : components) {
        const Eig2 e = eig_sym2(c.covariance);
        const double w_ellip = e.lambda_max > 0.0 ? e.lambda_min / e.lambda_max : 0.0;
        const double d = std::hypot(c.mean_x - cx, c.mean_y - cy);
        const double w_dis = d_max > 0.0 ? std::max(0.0, 1.0 - d / d_max) : 1.0;
        out.push_back(c.proportion * w_ellip * w_dis);
    }
    return out;
}

FloatMap prior_map(const std::vector<GmmComponent>& components, const std::vector<double>& weights,
                   int width, int height, bool* degenerate) {
    if (components.size() != weights.size())
        throw std::invalid_argument("prior_map: component/weight count mismatch");
    if (degenerate) *degenerate = false;

    FloatMap out(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            double v = 0.0;
            for (std::size_t j = 0; j < components.size(); ++j)
                if (weights[j] > 0.0) v += weights[j] * gaussian2_pdf(components[j], x, y);
            out(x, y) = v;
        }
    const double peak = *std::max_element(out.data().begin(), out.data().end());
    if (peak <= 0.0) {
        // every component weight vanished; a zero prior would annihilate
        // the combined map, so fall back to uniform
        if (degenerate) *degenerate = true;
        std::fill(out.data().begin(), out.data().end(), 1.0);
        return out;
    }
    for (double& v : out.data()) v /= peak;
    return out;
}

}  // namespace ldsal

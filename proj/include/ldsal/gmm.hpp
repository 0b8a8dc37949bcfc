#ifndef LDSAL_GMM_HPP
#define LDSAL_GMM_HPP

#include <vector>

#include "ldsal/linalg2.hpp"
#include "ldsal/raster.hpp"

namespace ldsal {

/// One 2-D Gaussian of the spatial prior.
struct GmmComponent {
    double mean_x = 0.0, mean_y = 0.0;
    Sym2 covariance;        // pixels^2, eigenvalues > 0
    double proportion = 0;  // mixing weight, components sum to 1
};

struct PriorParams {
    int components = 5;
    int max_em_iters = 100;
    double loglik_rel_tol = 1e-6;
    double covariance_floor = 1.0;  // pixels^2
    unsigned rng_seed = 0;

    void validate() const;
};

struct GmmFit {
    std::vector<GmmComponent> components;
    std::vector<double> loglik;  // weighted log-likelihood, one entry per iteration
    bool converged = false;
};

/// Weighted EM over pixel coordinates with per-pixel weight taken from
/// the map. Initialization picks the component count means by greedy
/// max-min-distance among the top-1% weighted pixels (first pick from a
/// seeded RNG), with isotropic (min(W,H)/8)^2 starting covariances.
/// Covariance eigenvalues are floored each M-step. Deterministic for a
/// fixed rng_seed. All-zero weights raise std::invalid_argument.
GmmFit fit_gmm(const FloatMap& weights, const PriorParams& params);

/// Per-component combination weight: proportion times roundness
/// (lambda_min/lambda_max) times center proximity (1 - d/d_max, clamped
/// at 0, with d_max the half-diagonal of the pixel grid).
std::vector<double> component_weights(const std::vector<GmmComponent>& components, int width, int height);

/// Weighted sum of the component densities at pixel centers,
/// max-normalized to 1. If every weight is zero the prior degenerates to
/// a uniform map of ones (flagged via `degenerate` when given) so that a
/// multiplicative combination is not wiped out.
FloatMap prior_map(const std::vector<GmmComponent>& components, const std::vector<double>& weights,
                   int width, int height, bool* degenerate = nullptr);

/// Density of one component at (x, y).
double gaussian2_pdf(const GmmComponent& component, double x, double y);

}  // namespace ldsal

#endif

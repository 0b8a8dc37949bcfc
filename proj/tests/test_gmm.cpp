#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "ldsal/gmm.hpp"

using namespace ldsal;
using namespace ldsal::testing;

namespace {

// two isotropic blobs of pdf mass, the synthetic generator with known
// parameters used across the EM tests
FloatMap two_blob_map(int w, int h, double cx1, double cy1, double cx2, double cy2, double sigma,
                      double p1, double p2) {
    FloatMap map(w, h);
    const double norm = 1.0 / (2.0 * 3.14159265358979323846 * sigma * sigma);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double d1 = ((x - cx1) * (x - cx1) + (y - cy1) * (y - cy1)) / (2.0 * sigma * sigma);
            const double d2 = ((x - cx2) * (x - cx2) + (y - cy2) * (y - cy2)) / (2.0 * sigma * sigma);
            map(x, y) = p1 * norm * std::exp(-d1) + p2 * norm * std::exp(-d2);
        }
    return map;
}

}  // namespace

TEST_CASE("fit_gmm with K=1 recovers the weighted centroid exactly") {
    const FloatMap w = random_map(40, 30, 17, 0.0, 1.0);
    PriorParams params;
    params.components = 1;
    const GmmFit fit = fit_gmm(w, params);
    REQUIRE(fit.components.size() == 1);

    // closed-form weighted mean, accumulated in the same row-major order
    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (int y = 0; y < 30; ++y)
        for (int x = 0; x < 40; ++x) {
            sw += w(x, y);
            sx += w(x, y) * x;
            sy += w(x, y) * y;
        }
    CHECK(fit.components[0].mean_x == sx / sw);
    CHECK(fit.components[0].mean_y == sy / sw);
    CHECK(fit.components[0].proportion == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fit_gmm recovers two disjoint blobs") {
    const FloatMap map = two_blob_map(300, 80, 50, 40, 250, 40, 5.0, 0.5, 0.5);
    PriorParams params;
    params.components = 2;
    const GmmFit fit = fit_gmm(map, params);
    REQUIRE(fit.components.size() == 2);
    const GmmComponent& left =
        fit.components[0].mean_x < fit.components[1].mean_x ? fit.components[0] : fit.components[1];
    const GmmComponent& right =
        fit.components[0].mean_x < fit.components[1].mean_x ? fit.components[1] : fit.components[0];
    CHECK(std::hypot(left.mean_x - 50, left.mean_y - 40) < 2.0);
    CHECK(std::hypot(right.mean_x - 250, right.mean_y - 40) < 2.0);
}

TEST_CASE("fit_gmm weighted log-likelihood never decreases") {
    const FloatMap map = two_blob_map(200, 60, 40, 30, 160, 30, 6.0, 0.6, 0.4);
    PriorParams params;
    params.components = 3;
    const GmmFit fit = fit_gmm(map, params);
    REQUIRE(fit.loglik.size() >= 2);
    for (std::size_t i = 1; i < fit.loglik.size(); ++i)
        CHECK(fit.loglik[i] >= fit.loglik[i - 1] - 1e-9 * std::fabs(fit.loglik[i - 1]));
}

TEST_CASE("fit_gmm is deterministic for a fixed seed") {
    const FloatMap map = random_map(60, 40, 23, 0.0, 1.0);
    PriorParams params;
    params.components = 4;
    params.rng_seed = 7;
    const GmmFit a = fit_gmm(map, params);
    const GmmFit b = fit_gmm(map, params);
    REQUIRE(a.components.size() == b.components.size());
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        CHECK(a.components[i].mean_x == b.components[i].mean_x);
        CHECK(a.components[i].mean_y == b.components[i].mean_y);
        CHECK(a.components[i].covariance.xx == b.components[i].covariance.xx);
        CHECK(a.components[i].proportion == b.components[i].proportion);
    }
}

TEST_CASE("fit_gmm floors covariance eigenvalues") {
    FloatMap map(50, 50);
    map(25, 25) = 1.0;  // a single spike would otherwise collapse the covariance
    PriorParams params;
    params.components = 1;
    const GmmFit fit = fit_gmm(map, params);
    const Eig2 e = eig_sym2(fit.components[0].covariance);
    CHECK(e.lambda_min >= params.covariance_floor - 1e-12);
}

TEST_CASE("fit_gmm proportions form a distribution") {
    const FloatMap map = random_map(48, 32, 3, 0.0, 1.0);
    PriorParams params;
    params.components = 5;
    const GmmFit fit = fit_gmm(map, params);
    double sum = 0.0;
    for (const GmmComponent& c : fit.components) {
        CHECK(c.proportion >= 0.0);
        sum += c.proportion;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fit_gmm rejects degenerate inputs") {
    CHECK_THROWS_WITH_AS(fit_gmm(FloatMap(10, 10), PriorParams{}), doctest::Contains("no mass"),
                         std::invalid_argument);
    FloatMap negative(4, 4);
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(fit_gmm(negative, PriorParams{}), std::invalid_argument);
}

TEST_CASE("component_weights is maximal for a centered isotropic unit component") {
    GmmComponent c;
    c.mean_x = (101 - 1) / 2.0;
    c.mean_y = (61 - 1) / 2.0;
    c.covariance = {25.0, 0.0, 25.0};
    c.proportion = 1.0;
    const std::vector<double> w = component_weights({c}, 101, 61);
    REQUIRE(w.size() == 1);
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("component_weights vanishes at an image corner") {
    GmmComponent c;
    c.mean_x = 0.0;
    c.mean_y = 0.0;
    c.covariance = {25.0, 0.0, 25.0};
    c.proportion = 1.0;
    const std::vector<double> w = component_weights({c}, 64, 48);
    CHECK(w[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("component_weights roundness factor is the eigenvalue ratio") {
    GmmComponent c;
    c.mean_x = (33 - 1) / 2.0;
    c.mean_y = (33 - 1) / 2.0;
    c.covariance = {16.0, 0.0, 4.0};  // eigenvalues 16 and 4
    c.proportion = 1.0;
    const std::vector<double> w = component_weights({c}, 33, 33);
    CHECK(w[0] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("prior_map peaks at the single centered component and tops out at 1") {
    GmmComponent c;
    c.mean_x = 32;
    c.mean_y = 24;
    c.covariance = {36.0, 0.0, 36.0};
    c.proportion = 1.0;
    const FloatMap prior = prior_map({c}, {1.0}, 65, 49);
    double best = -1.0;
    int bx = -1, by = -1;
    for (int y = 0; y < 49; ++y)
        for (int x = 0; x < 65; ++x)
            if (prior(x, y) > best) {
                best = prior(x, y);
                bx = x;
                by = y;
            }
    CHECK(bx == 32);
    CHECK(by == 24);
    CHECK(best == 1.0);
    for (const double v : prior.data()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("prior_map is linear in its components before normalization") {
    GmmComponent a, b;
    a.mean_x = 10; a.mean_y = 10; a.covariance = {9.0, 0.0, 9.0}; a.proportion = 0.5;
    b.mean_x = 40; b.mean_y = 20; b.covariance = {16.0, 2.0, 9.0}; b.proportion = 0.5;
    // equal weights: the combined map is proportional to the sum of maps
    const FloatMap both = prior_map({a, b}, {1.0, 1.0}, 56, 32);
    FloatMap manual(56, 32);
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 56; ++x)
            manual(x, y) = gaussian2_pdf(a, x, y) + gaussian2_pdf(b, x, y);
    const double peak = *std::max_element(manual.data().begin(), manual.data().end());
    for (std::size_t i = 0; i < both.size(); ++i)
        CHECK(both.data()[i] == doctest::Approx(manual.data()[i] / peak).epsilon(1e-12));
}

TEST_CASE("prior_map density matches the direct pdf oracle at random pixels") {
    GmmComponent c;
    c.mean_x = 20.0;
    c.mean_y = 14.0;
    c.covariance = {25.0, 6.0, 16.0};
    c.proportion = 1.0;
    const FloatMap prior = prior_map({c}, {0.8}, 41, 29);

    std::mt19937 rng(5);
    const double det = c.covariance.xx * c.covariance.yy - c.covariance.xy * c.covariance.xy;
    double peak = 0.0;
    for (int y = 0; y < 29; ++y)
        for (int x = 0; x < 41; ++x) {
            const double dx = x - c.mean_x, dy = y - c.mean_y;
            const double q = (dx * dx * c.covariance.yy - 2.0 * dx * dy * c.covariance.xy +
                              dy * dy * c.covariance.xx) / det;
            peak = std::max(peak, 0.8 * std::exp(-0.5 * q) /
                                       (2.0 * 3.14159265358979323846 * std::sqrt(det)));
        }
    for (int i = 0; i < 10; ++i) {
        const int x = static_cast<int>(rng() % 41);
        const int y = static_cast<int>(rng() % 29);
        const double dx = x - c.mean_x, dy = y - c.mean_y;
        const double q = (dx * dx * c.covariance.yy - 2.0 * dx * dy * c.covariance.xy +
                          dy * dy * c.covariance.xx) / det;
        const double expected = 0.8 * std::exp(-0.5 * q) /
                                (2.0 * 3.14159265358979323846 * std::sqrt(det)) / peak;
        CHECK(prior(x, y) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("prior_map degenerates to uniform ones when all weights vanish") {
    GmmComponent c;
    c.mean_x = 5;
    c.mean_y = 5;
    c.covariance = {4.0, 0.0, 4.0};
    c.proportion = 1.0;
    bool degenerate = false;
    const FloatMap prior = prior_map({c}, {0.0}, 12, 10, &degenerate);
    CHECK(degenerate);
    for (const double v : prior.data()) CHECK(v == 1.0);
}

#ifndef LDSAL_LINALG2_HPP
#define LDSAL_LINALG2_HPP

#include <cmath>

namespace ldsal {

/// Symmetric 2x2 matrix, the covariance shape used throughout.
struct Sym2 {
    double xx = 0.0, xy = 0.0, yy = 0.0;

    double det() const { return xx * yy - xy * xy; }
};

struct Eig2 {
    double lambda_max = 0.0;
    double lambda_min = 0.0;
    // unit eigenvector of lambda_max
    double vx = 1.0, vy = 0.0;
};

inline Eig2 eig_sym2(const Sym2& m) {
    Eig2 e;
    const double tr_half = 0.5 * (m.xx + m.yy);
    const double d = std::sqrt(0.25 * (m.xx - m.yy) * (m.xx - m.yy) + m.xy * m.xy);
    e.lambda_max = tr_half + d;
    e.lambda_min = tr_half - d;
    // eigenvector: (lambda_max - yy, xy), falling back to the dominant axis
    double vx = e.lambda_max - m.yy, vy = m.xy;
    double norm = std::hypot(vx, vy);
    if (norm < 1e-300) {
        vx = m.xx >= m.yy ? 1.0 : 0.0;
        vy = m.xx >= m.yy ? 0.0 : 1.0;
        norm = 1.0;
    }
    e.vx = vx / norm;
    e.vy = vy / norm;
    return e;
}

/// Rebuild the matrix from eigenvalues clamped to at least `floor_value`.
inline Sym2 floor_eigenvalues(const Sym2& m, double floor_value) {
    Eig2 e = eig_sym2(m);
    if (e.lambda_min >= floor_value && e.lambda_max >= floor_value) return m;
    const double l1 = std::max(e.lambda_max, floor_value);
    const double l2 = std::max(e.lambda_min, floor_value);
    const double ux = e.vx, uy = e.vy;   // eigenvector of l1
    const double wx = -uy, wy = ux;      // orthogonal complement
    Sym2 out;
    out.xx = l1 * ux * ux + l2 * wx * wx;
    out.xy = l1 * ux * uy + l2 * wx * wy;
    out.yy = l1 * uy * uy + l2 * wy * wy;
    return out;
}

}  // namespace ldsal

#endif

#pragma once

#include <cmath>

#include "harper/cocycle.hpp"
#include "harper/fourier.hpp"
#include "harper/frequency.hpp"

namespace harper {

/// Result of reducing a quasi-periodic cocycle to the unipotent Floquet form
/// B = [[1, c], [0, 1]] through the conjugation A(theta) Z(theta) = Z(theta + 2 pi omega) B.
struct FloquetResult {
    Mat2TorusMap Z;   // total conjugation
    double c;         // upper-right Floquet entry, the mean of b12
    double residual;  // sup defect of the conjugation identity on the sampling grid
    int degreeZ;      // winding number of the first column of Z
    int M;            // Fourier truncation order of Z
};

struct ReduceOptions {
    int grid = 1024;             // sampling grid (power of two); grown until tails resolve
    int max_grid = 16384;
    double tail_tol = 1e-12;     // required relative tail mass of b12
    double invariance_tol = 1e-6;   // allowed defect of v(theta+2 pi omega) = A(theta) v(theta)
    double unipotent_tol = 1e-5;    // allowed deviation of B1 from unit diagonal/zero corner
    double divisor_floor = 1e-12;   // |e^{2 pi i m omega} - 1| below this aborts
};

/// Z(theta) = [[v1, -v2/d], [v2, v1/d]], d = v1^2 + v2^2; det Z = 1 identically.
/// Throws "vanishing-vector" when min d on the grid falls below 1e-8.
Mat2TorusMap build_conjugation(const Vec2TorusMap& v, int grid = 1024);

struct TriangularizeResult {
    FourierSeries b12;
    double residual;  // max deviation of B1 from unipotent structure on the grid
};

/// B1(theta) = Z(theta + 2 pi omega)^{-1} A(theta) Z(theta) must be unipotent upper
/// triangular; returns its (1,2) entry. Throws "not-invariant" when v fails its
/// invariance precondition and "not-unipotent" when the structure check fails.
TriangularizeResult triangularize(const Mat2TorusMap& A, const Vec2TorusMap& v,
                                  const Frequency& omega, const ReduceOptions& opts = {});

/// Solves y(theta + 2 pi omega) - y(theta) = b12(theta) - [b12] coefficientwise:
/// y_m = (b12)_m / (e^{2 pi i m omega} - 1), y_0 = 0. Throws "small-divisor overflow"
/// when a divisor falls below the floor.
FourierSeries solve_cohomological(const FourierSeries& b12, const Frequency& omega,
                                  double divisor_floor = 1e-12);

/// Full pipeline: conjugation from the invariant vector, triangularization, cohomological
/// solve, and the final shear. Residual is the end-to-end defect of the conjugation.
FloquetResult floquet_reduce(const Mat2TorusMap& A, const Vec2TorusMap& v,
                             const Frequency& omega, const ReduceOptions& opts = {});

/// B indistinguishable from the identity at working precision: |c| <= 10 * residual.
inline bool collapsed_test(const FloquetResult& f) {
    return std::fabs(f.c) <= 10.0 * f.residual;
}

/// Winding number of the first column of Z around the origin.
int degree(const Mat2TorusMap& Z);

/// The almost Mathieu cocycle matrix map with exact (three-coefficient) Fourier entries.
Mat2TorusMap harper_cocycle_map(double a, double b);

struct DichotomyOptions {
    int grid_points = 64;      // theta samples for the direction fields
    double min_angle = 1e-3;   // transversality threshold, radians
    int renorm_cadence = 16;
};

/// Practical uniform-hyperbolicity test: finite-time Lyapunov exponent above 5/sqrt(N)
/// and stable/unstable directions (continued from the far past/future) uniformly
/// transversal over a theta grid.
template <class AMap>
bool dichotomy_test_of(AMap&& amap, const Frequency& omega, long long N,
                       const DichotomyOptions& opts = {}) {
    double le = lyapunov_exponent_of(amap, omega.value(), 0.0, N, opts.renorm_cadence);
    if (!(le > 5.0 / std::sqrt(static_cast<double>(N)))) return false;

    double min_angle = M_PI;
    const double w = omega.value();
    for (int j = 0; j < opts.grid_points; ++j) {
        double theta_j = frac(static_cast<double>(j) / opts.grid_points);
        // unstable direction at theta_j: push a generic vector forward from the far past
        Vec2 u{0.737, 0.676};
        double t = frac(theta_j - frac(w * static_cast<double>(N)));
        for (long long n = 0; n < N; ++n) {
            u = amap(2.0 * M_PI * t).apply(u);
            t = frac(t + w);
            if ((n & 15) == 0) u = u.normalized();
        }
        u = u.normalized();
        // stable direction: pull the vector backward from the far future
        Vec2 s{0.737, 0.676};
        t = frac(theta_j + frac(w * static_cast<double>(N)));
        for (long long n = 0; n < N; ++n) {
            t = frac(t - w);
            s = amap(2.0 * M_PI * t).inverse().apply(s);
            if ((n & 15) == 0) s = s.normalized();
        }
        s = s.normalized();
        double sine = std::fabs(u.cross(s));  // angle between the two lines
        min_angle = std::min(min_angle, std::asin(std::min(1.0, sine)));
    }
    return min_angle > opts.min_angle;
}

bool dichotomy_test(const Mat2TorusMap& A, const Frequency& omega, long long N,
                    const DichotomyOptions& opts = {});

/// dichotomy_test for the Harper cocycle at (a, b) without series evaluation overhead.
bool dichotomy_test_harper(double a, double b, const Frequency& omega, long long N,
                           const DichotomyOptions& opts = {});

}  // namespace harper

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "harper/frequency.hpp"
#include "harper/sl2.hpp"

namespace harper {

/// Parameters of the eigenvalue equation x_{n+1} + x_{n-1} + b cos(2 pi omega n + phi) x_n = a x_n
/// and of its transfer-matrix cocycle. Construction rejects near-rational omega.
struct CocycleParams {
    double a, b, omega, phi;

    CocycleParams(double a_, double b_, double omega_, double phi_, int reject_qmax = 100,
                  double reject_tol = 1e-12)
        : a(a_), b(b_), omega(omega_), phi(phi_)
    {
        require_irrational(omega, reject_qmax, reject_tol);
        phi = std::fmod(phi, 2.0 * M_PI);
        if (phi < 0) phi += 2.0 * M_PI;
    }

    /// theta_n = phi + 2 pi omega n, reduced to [0, 2 pi).
    double theta(long long n) const {
        return 2.0 * M_PI * frac(omega * static_cast<double>(n) + phi / (2.0 * M_PI));
    }
};

/// One-step transfer matrix [[a - b cos(theta), -1], [1, 0]]; determinant exactly 1.
inline SL2Matrix transfer_matrix(double a, double b, double theta) {
    return SL2Matrix::unchecked(a - b * std::cos(theta), -1.0, 1.0, 0.0);
}

/// Ordered product A(theta_{n-1}) ... A(theta_0); n = 0 gives the identity.
/// No renormalization: intended for moderate n where entries stay representable.
SL2Matrix iterate_cocycle(const CocycleParams& p, long long n);

/// Renormalized iteration: `matrix` is rescaled to have max-entry 1 every `cadence` steps,
/// with the rescalings accumulated in log_norm. The full product is exp(log_norm) * matrix.
struct RenormalizedProduct {
    SL2Matrix matrix;
    double log_norm;
    long long steps;
};

RenormalizedProduct iterate_cocycle_renormalized(const CocycleParams& p, long long n,
                                                 int cadence = 32);

/// (1/N) log || A(theta_{N-1}) ... A(theta_0) ||, via renormalized iteration.
double lyapunov_exponent(const CocycleParams& p, long long N);

/// Raw state of the projectivized iteration: the per-step increment taken in (-pi, pi]
/// and accumulated. This branch matches the continuous lift wherever the increment
/// function stays inside (-pi, pi); fibered_rotation_of corrects it against an unwrapped
/// branch table so the lift is continuous everywhere.
struct ProjectiveLiftState {
    Vec2 v{1.0, 0.0};
    double accumulated = 0.0;
    long long steps = 0;

    double angle() const { return std::atan2(v.y, v.x); }

    void advance(const SL2Matrix& m) {
        Vec2 w = m.apply(v);
        accumulated += std::atan2(v.cross(w), v.dot(w));
        v = w.normalized();
        ++steps;
    }
};

/// Fibered rotation number in [0, 1): average increment of the continuous lift of the
/// projectivized cocycle divided by 2 pi. Independent of the seed direction and of phi
/// up to O(1/N).
double fibered_rotation_number(const CocycleParams& p, long long N, double t0 = 0.0);

/// Mean and spread of the fibered rotation number over `nphases` equidistributed phases
/// (circular statistics; the spread is the reported uncertainty).
struct RotationEstimate {
    double value;
    double spread;
};

RotationEstimate fibered_rotation_number_averaged(const CocycleParams& p, long long N,
                                                  int nphases = 8);

/// rho_2 + k omega mod 1: the rotation number shift under conjugation by a degree-k map.
inline double conjugated_rotation_shift(double rho2, long long k, double omega) {
    return frac(rho2 + static_cast<double>(k) * omega);
}

/// Generic renormalized Lyapunov exponent for a cocycle theta -> A(theta) over the rotation
/// by 2 pi omega. `amap` is invoked with theta in [0, 2 pi).
template <class AMap>
double lyapunov_exponent_of(AMap&& amap, double omega, double theta0, long long N,
                            int cadence = 32) {
    double t = frac(theta0 / (2.0 * M_PI));
    SL2Matrix x = SL2Matrix::identity();
    double log_norm = 0.0;
    for (long long n = 0; n < N; ++n) {
        x = amap(2.0 * M_PI * t) * x;
        t = frac(t + omega);
        if ((n + 1) % cadence == 0 || n + 1 == N) {
            double s = x.max_abs();
            log_norm += std::log(s);
            double inv = 1.0 / s;
            x = SL2Matrix::unchecked(x.m11 * inv, x.m12 * inv, x.m21 * inv, x.m22 * inv);
        }
    }
    return (log_norm + std::log(x.op_norm())) / static_cast<double>(N);
}

/// Branch table of the lift: the increment function f(t, theta) of the projectivized
/// cocycle, unwrapped to a continuous function on the torus. Per-step raw increments are
/// then snapped to the branch nearest the table, which reconstructs the continuous lift
/// even where f leaves (-pi, pi) (strongly hyperbolic slices).
class LiftBranchTable {
public:
    template <class AMap>
    LiftBranchTable(AMap&& amap, int grid_t, int grid_theta)
        : gt_(grid_t), gth_(grid_theta), f_(static_cast<size_t>(grid_t) * grid_theta)
    {
        auto raw = [&](double t, double theta) {
            Vec2 v{std::cos(t), std::sin(t)};
            Vec2 w = amap(theta).apply(v);
            return std::atan2(v.cross(w), v.dot(w));
        };
        auto unwrap = [](double d, double ref) {
            return d + 2.0 * M_PI * std::round((ref - d) / (2.0 * M_PI));
        };
        // first t-row, then each theta-column; periodic closures certify the resolution
        f_[0] = raw(0.0, 0.0);
        for (int i = 1; i < gt_; ++i)
            f_[static_cast<size_t>(i)] =
                unwrap(raw(2.0 * M_PI * i / gt_, 0.0), f_[static_cast<size_t>(i) - 1]);
        if (std::fabs(unwrap(raw(0.0, 0.0), f_[static_cast<size_t>(gt_) - 1]) - f_[0]) > 1e-6)
            throw std::runtime_error("fibered rotation: lift not periodic in t "
                                     "(insufficient grid or degenerate map)");
        for (int i = 0; i < gt_; ++i) {
            for (int j = 1; j < gth_; ++j) {
                double d = raw(2.0 * M_PI * i / gt_, 2.0 * M_PI * j / gth_);
                f_[static_cast<size_t>(j) * gt_ + i] =
                    unwrap(d, f_[static_cast<size_t>(j - 1) * gt_ + i]);
            }
            if (std::fabs(unwrap(raw(2.0 * M_PI * i / gt_, 0.0),
                                 f_[static_cast<size_t>(gth_ - 1) * gt_ + i]) -
                          f_[static_cast<size_t>(i)]) > 1e-6)
                throw std::runtime_error("fibered rotation: lift not periodic in theta "
                                         "(map not homotopic to the identity?)");
        }
        // neighbouring columns must agree to within half a branch
        for (int i = 0; i < gt_; ++i) {
            size_t mid = static_cast<size_t>(gth_ / 2) * gt_;
            double a = f_[mid + static_cast<size_t>(i)];
            double b = f_[mid + static_cast<size_t>((i + 1) % gt_)];
            if (std::fabs(a - b) > 0.9 * M_PI)
                throw std::runtime_error("fibered rotation: lift grid too coarse for this "
                                         "cocycle");
        }
    }

    /// Continuous-branch increment nearest the raw value `d` at (t, theta).
    double snap(double t, double theta, double d) const {
        int i = static_cast<int>(std::floor(frac(t / (2.0 * M_PI)) * gt_ + 0.5)) % gt_;
        int j = static_cast<int>(std::floor(frac(theta / (2.0 * M_PI)) * gth_ + 0.5)) % gth_;
        double ref = f_[static_cast<size_t>(j) * gt_ + i];
        return d + 2.0 * M_PI * std::round((ref - d) / (2.0 * M_PI));
    }

private:
    int gt_, gth_;
    std::vector<double> f_;
};

/// Generic fibered rotation number (mod 1, reported in [0, 1)) for a cocycle map over the
/// rotation by 2 pi omega.
template <class AMap>
double fibered_rotation_of(AMap&& amap, double omega, double theta0, double t0, long long N) {
    // grid fine enough that f varies by well under pi per cell: |df/dt| <= ||A||^2 + 1
    double norm_bound = 1.0;
    for (int j = 0; j < 64; ++j)
        norm_bound = std::max(norm_bound, amap(2.0 * M_PI * j / 64).op_norm());
    int gt = 1024;
    while (gt < 16 * norm_bound * norm_bound && gt < 65536) gt *= 2;
    LiftBranchTable table(amap, gt, std::max(512, gt / 4));

    double theta = frac(theta0 / (2.0 * M_PI));
    Vec2 v{std::cos(t0), std::sin(t0)};
    double acc = 0.0;
    for (long long n = 0; n < N; ++n) {
        Vec2 w = amap(2.0 * M_PI * theta).apply(v);
        double d = std::atan2(v.cross(w), v.dot(w));
        acc += table.snap(std::atan2(v.y, v.x), 2.0 * M_PI * theta, d);
        v = w.normalized();
        theta = frac(theta + omega);
    }
    return frac(acc / (2.0 * M_PI * static_cast<double>(N)));
}

/// Winding number of theta -> col(theta) around the origin. Samples adaptively; throws if
/// the column norm dips below 1e-8 (degenerate input) or the sampling cannot resolve the
/// increments.
template <class ColMap>
int winding_number(ColMap&& col, int initial_grid = 1024) {
    for (int grid = initial_grid; grid <= (1 << 22); grid *= 2) {
        double total = 0.0;
        bool ok = true;
        Vec2 prev = col(0.0);
        if (prev.norm() < 1e-8)
            throw std::runtime_error("winding_number: column norm below 1e-8");
        Vec2 first = prev;
        for (int j = 1; j <= grid; ++j) {
            Vec2 cur = (j == grid) ? first : col(2.0 * M_PI * j / grid);
            if (j != grid && cur.norm() < 1e-8)
                throw std::runtime_error("winding_number: column norm below 1e-8");
            double d = std::atan2(prev.cross(cur), prev.dot(cur));
            if (std::fabs(d) > 0.5 * M_PI) {
                ok = false;
                break;
            }
            total += d;
            prev = cur;
        }
        if (!ok) continue;
        double w = total / (2.0 * M_PI);
        double r = std::round(w);
        if (std::fabs(w - r) > 0.1) continue;  // refine until the sum settles on an integer
        return static_cast<int>(r);
    }
    throw std::runtime_error("winding_number: failed to resolve (column too oscillatory)");
}

}  // namespace harper

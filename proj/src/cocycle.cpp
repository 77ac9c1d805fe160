#include "harper/cocycle.hpp"

#include <cmath>
#include <vector>

namespace harper {

SL2Matrix iterate_cocycle(const CocycleParams& p, long long n) {
    SL2Matrix x = SL2Matrix::identity();
    for (long long j = 0; j < n; ++j)
        x = transfer_matrix(p.a, p.b, p.theta(j)) * x;
    return x;
}

RenormalizedProduct iterate_cocycle_renormalized(const CocycleParams& p, long long n,
                                                 int cadence) {
    double t = frac(p.phi / (2.0 * M_PI));
    SL2Matrix x = SL2Matrix::identity();
    double log_norm = 0.0;
    for (long long j = 0; j < n; ++j) {
        x = transfer_matrix(p.a, p.b, 2.0 * M_PI * t) * x;
        t = frac(t + p.omega);
        if ((j + 1) % cadence == 0 || j + 1 == n) {
            double s = x.max_abs();
            log_norm += std::log(s);
            double inv = 1.0 / s;
            x = SL2Matrix::unchecked(x.m11 * inv, x.m12 * inv, x.m21 * inv, x.m22 * inv);
        }
    }
    return {x, log_norm, n};
}

double lyapunov_exponent(const CocycleParams& p, long long N) {
    RenormalizedProduct r = iterate_cocycle_renormalized(p, N);
    return (r.log_norm + std::log(r.matrix.op_norm())) / static_cast<double>(N);
}

double fibered_rotation_number(const CocycleParams& p, long long N, double t0) {
    return fibered_rotation_of(
        [&p](double theta) { return transfer_matrix(p.a, p.b, theta); }, p.omega, p.phi, t0, N);
}

RotationEstimate fibered_rotation_number_averaged(const CocycleParams& p, long long N,
                                                  int nphases) {
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(nphases));
    for (int j = 0; j < nphases; ++j) {
        CocycleParams q(p.a, p.b, p.omega, p.phi + 2.0 * M_PI * j / nphases);
        vals.push_back(fibered_rotation_number(q, N));
    }
    // circular mean relative to the first sample, so clusters straddling the wrap are
    // handled
    double ref = vals[0], sum = 0.0, lo = 1e300, hi = -1e300;
    for (double v : vals) {
        double d = v - ref;
        d -= std::round(d);
        sum += d;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return {frac(ref + sum / nphases), hi - lo};
}

}  // namespace harper

#include "harper/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace harper {

void require_irrational(double omega, int qmax, double tol) {
    if (!std::isfinite(omega))
        throw std::invalid_argument("frequency: omega is not finite");
    auto cf = continued_fraction(omega);
    for (auto [p, q] : convergents(cf)) {
        if (q > qmax) break;
        if (std::fabs(omega - static_cast<double>(p) / static_cast<double>(q)) <= tol)
            throw std::invalid_argument("frequency: omega is rational in working precision (" +
                                        std::to_string(p) + "/" + std::to_string(q) + ")");
    }
    // Finite expansions shorter than the convergent scan means omega was resolved as rational.
    if (cf.size() < 3 && std::fabs(omega - std::round(omega)) <= tol)
        throw std::invalid_argument("frequency: omega is an integer in working precision");
}

std::vector<long long> continued_fraction(double x, int max_terms) {
    std::vector<long long> cf;
    double r = x;
    for (int i = 0; i < max_terms; ++i) {
        double fl = std::floor(r);
        if (fl > 9e17 || fl < -9e17) break;  // past integer resolution
        cf.push_back(static_cast<long long>(fl));
        double rem = r - fl;
        if (rem < 1e-14) break;  // resolved as rational at this depth
        r = 1.0 / rem;
    }
    return cf;
}

std::vector<std::pair<long long, long long>> convergents(const std::vector<long long>& cf) {
    std::vector<std::pair<long long, long long>> out;
    long long pm1 = 1, pm2 = 0, qm1 = 0, qm2 = 1;
    for (long long a : cf) {
        // p_k = a p_{k-1} + p_{k-2}; overflow guard simply stops the sequence
        if (pm1 != 0 && std::llabs(a) > 4'000'000'000'000'000'000LL / std::max(std::llabs(pm1), 1LL))
            break;
        long long p = a * pm1 + pm2;
        long long q = a * qm1 + qm2;
        out.emplace_back(p, q);
        pm2 = pm1; pm1 = p;
        qm2 = qm1; qm1 = q;
        if (q > 1'000'000'000LL) break;
    }
    return out;
}

Frequency::Frequency(double omega, int n_check, int reject_qmax, double reject_tol)
    : value_(omega), n_check_(n_check)
{
    if (!(omega > 0.0 && omega < 1.0))
        throw std::invalid_argument("frequency: omega must lie in (0,1)");
    require_irrational(omega, reject_qmax, reject_tol);
    cf_ = continued_fraction(omega);

    // Record the running minima of |sin(2 pi n omega)|; they occur at continuant
    // denominators and determine the decay exponent r in the certificate.
    const double two_pi = 2.0 * M_PI;
    double running_min = 2.0;
    std::vector<std::pair<double, double>> records;  // (log n, log |sin|)
    std::vector<double> s(static_cast<size_t>(n_check) + 1, 0.0);
    for (int n = 1; n <= n_check; ++n) {
        double v = std::fabs(std::sin(two_pi * frac(static_cast<double>(n) * omega)));
        s[static_cast<size_t>(n)] = v;
        if (v < running_min) {
            running_min = v;
            records.emplace_back(std::log(static_cast<double>(n)), std::log(v));
        }
    }

    // Least-squares slope over the record points gives the observed power law; the
    // certificate exponent must exceed 1, so clamp from below.
    double r_fit = 1.0;
    if (records.size() >= 3) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto [lx, ly] : records) {
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        }
        double n = static_cast<double>(records.size());
        double denom = n * sxx - sx * sx;
        if (denom > 1e-12) r_fit = -(n * sxy - sx * sy) / denom;
    }
    dioph_r_ = std::max(1.01, r_fit);

    // c is the exact minimum of |sin(2 pi n omega)| n^r over the checked range, so the
    // certificate holds there by construction; a degenerate c signals a disguised rational.
    double cmin = 1e300;
    for (int n = 1; n <= n_check; ++n)
        cmin = std::min(cmin, s[static_cast<size_t>(n)] * std::pow(static_cast<double>(n), dioph_r_));
    dioph_c_ = cmin;
    if (!(dioph_c_ > 1e-8))
        throw std::invalid_argument("frequency: Diophantine certificate degenerate (c <= 1e-8); "
                                    "omega too close to rational");
}

Frequency Frequency::golden() {
    static const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    return Frequency(g);
}

}  // namespace harper

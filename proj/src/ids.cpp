#include "harper/ids.hpp"

#include <cmath>
#include <stdexcept>

#include "harper/parallel.hpp"
#include "harper/tridiag.hpp"

namespace harper {

namespace {

std::vector<double> potential_diag(double b, double omega, double phi, int L) {
    std::vector<double> d(static_cast<size_t>(L - 1));
    const double two_pi = 2.0 * M_PI;
    // cos(2 pi omega n + phi) via the angle addition formula on a running fractional part;
    // frac() keeps the argument small so no accuracy is lost at large n.
    double cphi = std::cos(phi), sphi = std::sin(phi);
    for (int n = 1; n < L; ++n) {
        double t = two_pi * frac(omega * n);
        d[static_cast<size_t>(n - 1)] = b * (std::cos(t) * cphi - std::sin(t) * sphi);
    }
    return d;
}

}  // namespace

int eigen_count(double a, const TruncationSpec& t, double b, double omega) {
    if (t.L < 2) throw std::invalid_argument("eigen_count: L must be >= 2");
    auto d = potential_diag(b, omega, t.phi, t.L);
    return sturm_count_leq(d, a);
}

IdsEvaluator::IdsEvaluator(double b, double omega, int L, int phases, bool parallel)
    : b_(b), omega_(omega), L_(L), parallel_(parallel)
{
    if (L < 2) throw std::invalid_argument("ids: L must be >= 2");
    if (phases < 1) throw std::invalid_argument("ids: phases must be >= 1");
    diag_.resize(static_cast<size_t>(phases));
    parallel_for(phases, [&](int j) {
        diag_[static_cast<size_t>(j)] = potential_diag(b, omega, 2.0 * M_PI * j / phases, L);
    });
}

int IdsEvaluator::count(double a, int phase) const {
    return sturm_count_leq(diag_[static_cast<size_t>(phase)], a);
}

double IdsEvaluator::operator()(double a) const {
    std::vector<long long> counts(diag_.size(), 0);
    auto work = [&](int j) {
        counts[static_cast<size_t>(j)] = sturm_count_leq(diag_[static_cast<size_t>(j)], a);
    };
    if (parallel_) parallel_for(static_cast<int>(diag_.size()), work);
    else
        for (int j = 0; j < static_cast<int>(diag_.size()); ++j) work(j);
    long long total = 0;
    for (long long c : counts) total += c;
    return static_cast<double>(total) /
           (static_cast<double>(diag_.size()) * static_cast<double>(L_ - 1));
}

double ids(double a, double b, double omega, int L, int phases) {
    return IdsEvaluator(b, omega, L, phases)(a);
}

std::pair<double, double> spectrum_edges(double b, double omega, int L, int phases) {
    IdsEvaluator ev(b, omega, L, phases);
    double r = 2.0 + std::fabs(b) + 1.0;
    double lo_best = r, hi_best = -r;
    for (int p = 0; p < phases; ++p) {
        // lowest eigenvalue: smallest x with count >= 1
        double lo = -r, hi = r;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            if (ev.count(mid, p) >= 1) hi = mid; else lo = mid;
        }
        lo_best = std::min(lo_best, 0.5 * (lo + hi));
        // largest eigenvalue: smallest x with count >= L-1
        lo = -r; hi = r;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            if (ev.count(mid, p) >= L - 1) hi = mid; else lo = mid;
        }
        hi_best = std::max(hi_best, 0.5 * (lo + hi));
    }
    return {lo_best, hi_best};
}

}  // namespace harper

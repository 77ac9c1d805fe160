#include "harper/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace harper {

namespace {

// Pivot floor: small enough not to perturb counts, large enough that 1/pivot stays finite.
constexpr double kPivMin = 1e-290;

}  // namespace

double SymTridiag::bound() const {
    double r = 0;
    int m = dim();
    for (int i = 0; i < m; ++i) {
        double s = std::fabs(diag[static_cast<size_t>(i)]);
        if (i > 0) s += std::fabs(off[static_cast<size_t>(i) - 1]);
        if (i + 1 < m) s += std::fabs(off[static_cast<size_t>(i)]);
        r = std::max(r, s);
    }
    return r;
}

int sturm_count_leq(const SymTridiag& t, double x) {
    int count = 0;
    double q = 0;
    const int m = t.dim();
    for (int i = 0; i < m; ++i) {
        double e2 = i > 0 ? t.off[static_cast<size_t>(i) - 1] * t.off[static_cast<size_t>(i) - 1] : 0.0;
        q = (t.diag[static_cast<size_t>(i)] - x) - (i > 0 ? e2 / q : 0.0);
        if (q <= 0) {
            ++count;
            if (q > -kPivMin) q = -kPivMin;
        }
    }
    return count;
}

int sturm_count_leq(const std::vector<double>& diag, double x) {
    int count = 0;
    double q = 0;
    const size_t m = diag.size();
    for (size_t i = 0; i < m; ++i) {
        q = (diag[i] - x) - (i > 0 ? 1.0 / q : 0.0);
        if (q <= 0) {
            ++count;
            if (q > -kPivMin) q = -kPivMin;
        }
    }
    return count;
}

std::vector<double> eigenvalues_by_index(const SymTridiag& t, int j0, int j1, double abstol) {
    std::vector<double> out;
    if (j1 <= j0) return out;
    if (j0 < 0 || j1 > t.dim())
        throw std::invalid_argument("eigenvalues_by_index: index range out of bounds");
    double r = t.bound() + 1.0;
    out.reserve(static_cast<size_t>(j1 - j0));
    for (int j = j0; j < j1; ++j) {
        // smallest x with count(x) >= j+1
        double lo = -r, hi = r;
        while (hi - lo > abstol) {
            double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            if (sturm_count_leq(t, mid) >= j + 1) hi = mid;
            else lo = mid;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

std::vector<double> eigenvalues_in(const SymTridiag& t, double lo, double hi, double abstol) {
    int j0 = sturm_count_leq(t, lo);
    int j1 = sturm_count_leq(t, hi);
    return eigenvalues_by_index(t, j0, j1, abstol);
}

namespace {

// LU factorization of T - lambda I with partial pivoting (banded, bandwidth 2 upper),
// followed by one backsolve. Layout follows the classic tinvit elimination.
struct ShiftedLU {
    std::vector<double> d, u1, u2;  // diagonal and two upper bands of U
    std::vector<double> l;          // subdiagonal multiplier per step
    std::vector<char> swapped;      // row interchange flags

    ShiftedLU(const SymTridiag& t, double lambda) {
        int m = t.dim();
        d.resize(static_cast<size_t>(m));
        u1.assign(static_cast<size_t>(m), 0.0);
        u2.assign(static_cast<size_t>(m), 0.0);
        l.assign(static_cast<size_t>(m), 0.0);
        swapped.assign(static_cast<size_t>(m), 0);
        for (int i = 0; i < m; ++i) d[static_cast<size_t>(i)] = t.diag[static_cast<size_t>(i)] - lambda;
        for (int i = 0; i + 1 < m; ++i) u1[static_cast<size_t>(i)] = t.off[static_cast<size_t>(i)];

        for (int i = 0; i + 1 < m; ++i) {
            size_t k = static_cast<size_t>(i);
            // current row i:  (d[i], u1[i], 0);  row i+1: (sub, d[i+1], u1[i+1])
            double sub = t.off[k];
            double ri0 = d[k], ri1 = u1[k], ri2 = 0.0;
            double rj0 = sub, rj1 = d[k + 1], rj2 = (i + 2 < m) ? u1[k + 1] : 0.0;
            if (std::fabs(rj0) > std::fabs(ri0)) {
                swapped[k] = 1;
                std::swap(ri0, rj0); std::swap(ri1, rj1); std::swap(ri2, rj2);
            }
            if (ri0 == 0.0) ri0 = kPivMin;
            double mult = rj0 / ri0;
            l[k] = mult;
            d[k] = ri0; u1[k] = ri1; u2[k] = ri2;
            d[k + 1] = rj1 - mult * ri1;
            if (i + 2 < m) u1[k + 1] = rj2 - mult * ri2;
        }
        if (d[static_cast<size_t>(m - 1)] == 0.0) d[static_cast<size_t>(m - 1)] = kPivMin;
    }

    // Solves (T - lambda I) x = b in place (forward elimination of b, then backsolve).
    void solve(std::vector<double>& b) const {
        int m = static_cast<int>(d.size());
        for (int i = 0; i + 1 < m; ++i) {
            size_t k = static_cast<size_t>(i);
            if (swapped[k]) std::swap(b[k], b[k + 1]);
            b[k + 1] -= l[k] * b[k];
        }
        for (int i = m - 1; i >= 0; --i) {
            size_t k = static_cast<size_t>(i);
            double s = b[k];
            if (i + 1 < m) s -= u1[k] * b[k + 1];
            if (i + 2 < m) s -= u2[k] * b[k + 2];
            b[k] = s / d[k];
        }
    }
};

void normalize(std::vector<double>& v) {
    double n = 0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    for (double& x : v) x /= n;
}

}  // namespace

std::vector<double> inverse_iteration(const SymTridiag& t, double lambda, std::uint64_t seed) {
    int m = t.dim();
    ShiftedLU lu(t, lambda);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> v(static_cast<size_t>(m));
    for (double& x : v) x = unif(rng);
    normalize(v);
    for (int it = 0; it < 4; ++it) {
        lu.solve(v);
        double n = 0;
        for (double x : v) n += x * x;
        n = std::sqrt(n);
        for (double& x : v) x /= n;
        // growth ~ 1/|residual|; once the solve amplifies past 1/(eps*scale) we are done
        if (n > 1.0 / (1e-13 * (t.bound() + 1.0))) break;
    }
    return v;
}

TridiagEigenSystem eigenpairs_in(const SymTridiag& t, double lo, double hi, double abstol,
                                 double cluster_tol) {
    TridiagEigenSystem sys;
    sys.values = eigenvalues_in(t, lo, hi, abstol);
    size_t n = sys.values.size();
    sys.vectors.resize(n);
    sys.residuals.resize(n);
    double scale = t.bound() + 1.0;
    size_t cluster_start = 0;
    for (size_t j = 0; j < n; ++j) {
        sys.vectors[j] = inverse_iteration(t, sys.values[j], 1234 + j);
        if (j > 0 && sys.values[j] - sys.values[j - 1] > cluster_tol * scale) cluster_start = j;
        // Re-orthogonalize within the current cluster so repeated eigenvalues do not
        // collapse onto one direction.
        for (size_t k = cluster_start; k < j; ++k) {
            double dot = 0;
            for (size_t i = 0; i < sys.vectors[j].size(); ++i)
                dot += sys.vectors[j][i] * sys.vectors[k][i];
            for (size_t i = 0; i < sys.vectors[j].size(); ++i)
                sys.vectors[j][i] -= dot * sys.vectors[k][i];
        }
        normalize(sys.vectors[j]);

        const auto& v = sys.vectors[j];
        double res = 0;
        int m = t.dim();
        for (int i = 0; i < m; ++i) {
            size_t k = static_cast<size_t>(i);
            double s = t.diag[k] * v[k] - sys.values[j] * v[k];
            if (i > 0) s += t.off[k - 1] * v[k - 1];
            if (i + 1 < m) s += t.off[k] * v[k + 1];
            res = std::max(res, std::fabs(s));
        }
        sys.residuals[j] = res;
    }
    return sys;
}

}  // namespace harper

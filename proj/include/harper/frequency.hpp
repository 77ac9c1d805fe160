#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace harper {

/// Fractional part in [0, 1).
inline double frac(double x) {
    double f = x - static_cast<long long>(x);
    return f < 0 ? f + 1.0 : f;
}

/// Throws std::invalid_argument if omega lies within `tol` of a rational p/q with q <= qmax.
/// Any such approximation with tol < 1/(2 qmax^2) is a continued-fraction convergent,
/// so scanning convergents is exhaustive.
void require_irrational(double omega, int qmax = 100, double tol = 1e-12);

/// Continued-fraction terms [a0; a1, a2, ...] of x, at most max_terms, stopping when the
/// remainder falls below floating-point resolution.
std::vector<long long> continued_fraction(double x, int max_terms = 40);

/// Convergents p/q of the continued fraction.
std::vector<std::pair<long long, long long>> convergents(const std::vector<long long>& cf);

/// An irrational frequency in (0,1) together with its continued-fraction expansion and an
/// empirical Diophantine certificate: |sin(2 pi n omega)| > c / n^r for 0 < n <= n_check.
/// Construction rejects frequencies that are near-rational in working precision, since the
/// quantities computed downstream are meaningless there.
class Frequency {
public:
    explicit Frequency(double omega, int n_check = 10000, int reject_qmax = 100,
                       double reject_tol = 1e-12);

    /// The golden mean (sqrt(5)-1)/2.
    static Frequency golden();

    double value() const { return value_; }
    const std::vector<long long>& cf_terms() const { return cf_; }

    /// Fitted constants of the certificate |sin(2 pi n omega)| > c / n^r.
    double diophantine_c() const { return dioph_c_; }
    double diophantine_r() const { return dioph_r_; }
    int n_checked() const { return n_check_; }

    /// {k * omega} in [0, 1).
    double frac_multiple(long long k) const { return frac(static_cast<double>(k) * value_); }

private:
    double value_;
    std::vector<long long> cf_;
    double dioph_c_ = 0, dioph_r_ = 1;
    int n_check_ = 0;
};

}  // namespace harper

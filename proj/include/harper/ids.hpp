#pragma once

#include <utility>
#include <vector>

#include "harper/frequency.hpp"

namespace harper {

/// Finite truncation of the operator to sites 1 .. L-1 with zero boundary conditions
/// at 0 and L; the truncated matrix has dimension L-1.
struct TruncationSpec {
    int L;
    double phi = 0.0;
};

/// Number of eigenvalues <= a of the truncation with diagonal b cos(2 pi omega n + phi),
/// n = 1..L-1, unit off-diagonals. Sturm count in O(L), no eigenvalues formed.
int eigen_count(double a, const TruncationSpec& t, double b, double omega);

/// Integrated density of states: eigen_count/(L-1) averaged over `phases` equidistributed
/// phases. Monotone non-decreasing in a by construction.
double ids(double a, double b, double omega, int L, int phases = 16);

/// Caches the diagonal potential per phase so sweeps over the spectral parameter cost one
/// Sturm pass per phase and no trigonometry.
class IdsEvaluator {
public:
    /// `parallel` spreads the per-phase Sturm passes across threads; use it for large L
    /// when the caller is not already running one evaluation per thread.
    IdsEvaluator(double b, double omega, int L, int phases = 16, bool parallel = false);

    double operator()(double a) const;
    /// Count for one cached phase (0-based).
    int count(double a, int phase) const;

    int L() const { return L_; }
    int phases() const { return static_cast<int>(diag_.size()); }
    double b() const { return b_; }
    double omega() const { return omega_; }

private:
    double b_, omega_;
    int L_;
    bool parallel_;
    std::vector<std::vector<double>> diag_;
};

/// Smallest and largest eigenvalue of the truncation, maximized/minimized over the cached
/// phases; an inner approximation of the spectrum's extreme edges.
std::pair<double, double> spectrum_edges(double b, double omega, int L, int phases = 16);

}  // namespace harper

#pragma once

#include <cstdint>
#include <vector>

namespace harper {

/// Symmetric tridiagonal matrix; off.size() == diag.size() - 1.
struct SymTridiag {
    std::vector<double> diag;
    std::vector<double> off;

    int dim() const { return static_cast<int>(diag.size()); }
    /// Gershgorin bound on the spectrum radius.
    double bound() const;
};

/// Number of eigenvalues <= x, by the Sturm sign count on the LDL^T pivots of T - xI.
/// Ratio recurrence, no minors formed; zero pivots are nudged so an exact hit counts as <=.
/// O(dim) time, no allocation.
int sturm_count_leq(const SymTridiag& t, double x);

/// Same count for the almost Mathieu truncation with diagonal b cos(2 pi omega n + phi),
/// n = n0 .. n0+m-1, unit off-diagonals; the diagonal is taken from a precomputed table.
int sturm_count_leq(const std::vector<double>& diag, double x);

/// Eigenvalues with index j in [j0, j1) (0-based, ascending), each bisected to abstol.
std::vector<double> eigenvalues_by_index(const SymTridiag& t, int j0, int j1, double abstol);

/// All eigenvalues in (lo, hi], bisected to abstol.
std::vector<double> eigenvalues_in(const SymTridiag& t, double lo, double hi, double abstol);

/// Eigenvector for an isolated eigenvalue, by inverse iteration with partial pivoting.
/// `seed` fixes the start vector so runs are reproducible. Normalized to unit 2-norm.
std::vector<double> inverse_iteration(const SymTridiag& t, double lambda, std::uint64_t seed);

struct TridiagEigenSystem {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
    std::vector<double> residuals;  // ||T v - lambda v||_inf per pair
};

/// Eigenpairs with eigenvalue in (lo, hi]. Clustered eigenvalues (gap below cluster_tol
/// relative to the matrix scale) are re-orthogonalized against each other.
TridiagEigenSystem eigenpairs_in(const SymTridiag& t, double lo, double hi,
                                 double abstol = 1e-13, double cluster_tol = 1e-7);

}  // namespace harper

#pragma once

#include <cstdint>
#include <vector>

#include "harper/cocycle.hpp"
#include "harper/frequency.hpp"

namespace harper {

/// Distance of x to the nearest integer.
inline double dist_to_int(double x) { return std::fabs(x - std::round(x)); }

/// Distance of x to the nearest half-integer multiple (the lattice (1/2)Z).
inline double dist_to_half_int(double x) { return 0.5 * dist_to_int(2.0 * x); }

/// A window of a solution of the three-term recurrence, with its generating parameters.
struct SolutionSequence {
    long long n0;                // index of values.front()
    std::vector<double> values;  // x_{n0} .. x_{n0+len-1}
    CocycleParams params;

    /// Max relative defect of the recurrence over interior indices.
    double recurrence_residual() const;
};

/// Solves the recurrence forward/backward from (x_0, x_1) over [n0, n1] (n0 <= 0 <= 1 <= n1).
SolutionSequence generate_solution(const CocycleParams& p, long long n0, long long n1,
                                   double x0 = 0.0, double x1 = 1.0);

/// Sturmian rotation number S(N)/(2N) in [0, 1/2]: S(N) counts the sign changes of the
/// solution with data (x0, x1) over 1 <= n <= N, an exact zero counting as one change.
/// Decreasing in the spectral parameter for this operator convention.
double sturmian_rotation(const CocycleParams& p, long long N, double x0 = 0.0, double x1 = 1.0);

/// Joint report of the three spectral quantities and their consistency defects.
/// dev_rot_ids is the distance of (2 rot, ids) from the exact relation, measured mod 1 and
/// reconciled over the two orientation conventions of the eigenvalue count.
struct RelationsReport {
    double rot;        // Sturmian, in [0, 1/2]
    double rho_f;      // fibered, in [0, 1)
    double ids_value;  // integrated density of states, in [0, 1]
    double dev_rot_ids;
    double dev_rot_rhof;  // distance of rot - rho_f to (1/2)Z
};

RelationsReport check_relations(const CocycleParams& p, long long N, int L, int phases = 16);

/// Arithmetic class of a rotation number relative to omega.
struct RotationClass {
    enum class Tag { Resonant, Diophantine, Undetermined };
    Tag tag;
    long long k = 0;   // resonance label, valid when tag == Resonant
    double K = 0.0;    // fitted constants of |rot - {k omega}/2| >= K/|k|^tau
    double tau = 0.0;
};

/// Resonant(k) when dist(rot - {k omega}/2, (1/2)Z) <= tol for some |k| <= kmax (smallest
/// |k| wins, ties to positive k); otherwise Diophantine with (K, tau) fitted from the
/// record minima, or Undetermined when too few records exist for a stable fit.
RotationClass classify_rotation(double rot, const Frequency& omega, long long kmax, double tol);

}  // namespace harper

#pragma once

#include <string>
#include <vector>

#include "harper/frequency.hpp"
#include "harper/ids.hpp"

namespace harper {

struct Interval {
    double lo, hi;
    double length() const { return hi - lo; }
};

/// Labelled spectral gap: the IDS plateau value sits within the labelling tolerance
/// of {k omega}; collapsed when the measured width falls below the collapse threshold.
struct Gap {
    long long k;
    double left, right;  // refined spectral edges (bulk-eigenvalue straddle)
    double ids_value;
    bool collapsed;
    /// Width of the coarse IDS-plateau interval |ids - {k omega}| <= margin. This is the
    /// level-tolerance observable (floor ~ 2 margin / density); the spectral width above
    /// can resolve far below it.
    double plateau_width = 0.0;

    double width() const { return right - left; }
};

/// Coarse operator-norm bound [-2-|b|, 2+|b|], guaranteed to contain the spectrum.
inline Interval spectrum_bounds(double b) {
    double r = 2.0 + (b < 0 ? -b : b);
    return {-r, r};
}

struct GapSearchOptions {
    int L = 10000;
    int phases = 16;
    double edge_resolution = 1e-6;
    double collapse_threshold = 1e-5;
    /// Level offset used to bracket the plateau coarsely; must exceed the finite-size
    /// wobble of the IDS on a gap (a few boundary eigenvalues per phase, i.e. O(1/L)).
    double level_margin = 5e-4;
    /// Fine stage: at millions of sites the wall-mode miscount is O(1/L) and the edges
    /// come from crossing the measured plateau level within a few counting granules,
    /// giving a width floor of ~1e-5 to match the collapse threshold.
    int fine_L = 2000000;
    int fine_phases = 4;
};

/// Locates gap k as the plateau of the IDS at level {k omega}: the two edges are bisected
/// on the monotone map a -> ids(a) crossing the levels {k omega} -/+ margin, then reported
/// at the requested edge resolution. Throws "label-not-resolved" when the plateau level
/// cannot be bracketed.
Gap find_gap(long long k, double b, const Frequency& omega, const GapSearchOptions& opts = {});

/// find_gap against shared coarse/fine evaluators (one potential table for many labels).
Gap find_gap(long long k, const IdsEvaluator& ev, const IdsEvaluator& fine,
             const Frequency& omega, const GapSearchOptions& opts = {});

struct GapScanResult {
    std::vector<Gap> gaps;  // sorted by width, widest first
    std::vector<std::pair<long long, std::string>> failures;
};

/// All gaps with 1 <= |k| <= kmax, widest first. Per-label failures are recorded, not fatal.
GapScanResult scan_gaps(double b, const Frequency& omega, long long kmax,
                        const GapSearchOptions& opts = {});

/// True iff the rotation number/IDS is not locally constant at a: the IDS increases by
/// more than 2*tol over [a-delta, a+delta] (rot varies by more than tol).
bool spectrum_membership(double a, double b, const Frequency& omega, double tol = 1e-5,
                         double delta = 1e-3, int L = 10000, int phases = 16);

/// IDS sampled on a product grid; rows run over b, columns over a, row-major.
struct ButterflyGrid {
    double a_min, a_max, b_min, b_max;
    int na, nb;
    std::vector<double> values;  // nb rows of na entries

    double at(int ib, int ia) const { return values[static_cast<size_t>(ib) * na + ia]; }
    double a_at(int ia) const { return a_min + (a_max - a_min) * ia / (na - 1); }
    double b_at(int ib) const { return b_min + (b_max - b_min) * ib / (nb - 1); }
};

ButterflyGrid butterfly_grid(Interval a_range, Interval b_range, int na, int nb,
                             const Frequency& omega, int L = 2000, int phases = 8);

/// Joint samples of (a, rot, ids) at fixed b; rot is monotone non-increasing and ids
/// monotone non-decreasing along a, up to twice the numerical tolerance.
struct SpectrumScan {
    double b;
    double omega;
    double resolution;
    std::vector<double> a, rot, ids_vals;
};

SpectrumScan scan_spectrum(double b, const Frequency& omega, Interval a_range, int na,
                           long long N = 100000, int L = 4000, int phases = 8);

}  // namespace harper

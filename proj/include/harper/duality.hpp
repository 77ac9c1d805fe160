#pragma once

#include <utility>

#include "harper/frequency.hpp"

namespace harper {

/// The Aubry dual parameter point (2a/b, 4/b). Involution; b = 0 is rejected.
std::pair<double, double> dual_params(double a, double b);

/// Max over sampled a of |rot(a, b) - rot(2a/b, 4/b)|, rotation numbers by sign counting.
/// Samples are equispaced over spectrum_bounds(b).
double verify_duality(double b, int a_samples, const Frequency& omega, long long N);

}  // namespace harper

#include "harper/duality.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "harper/gaps.hpp"
#include "harper/parallel.hpp"
#include "harper/rotation.hpp"

namespace harper {

std::pair<double, double> dual_params(double a, double b) {
    if (b == 0.0) throw std::invalid_argument("dual_params: b = 0 has no dual");
    return {2.0 * a / b, 4.0 / b};
}

double verify_duality(double b, int a_samples, const Frequency& omega, long long N) {
    if (b == 0.0) throw std::invalid_argument("verify_duality: b = 0 has no dual");
    if (a_samples < 1) throw std::invalid_argument("verify_duality: need at least one sample");
    Interval box = spectrum_bounds(b);
    std::vector<double> dev(static_cast<size_t>(a_samples));
    parallel_for(a_samples, [&](int i) {
        double a = box.lo + box.length() * (i + 0.5) / a_samples;
        auto [ad, bd] = dual_params(a, b);
        double r1 = sturmian_rotation(CocycleParams(a, b, omega.value(), 0.4), N);
        double r2 = sturmian_rotation(CocycleParams(ad, bd, omega.value(), 0.4), N);
        dev[static_cast<size_t>(i)] = std::fabs(r1 - r2);
    });
    double worst = 0.0;
    for (double d : dev) worst = std::max(worst, d);
    return worst;
}

}  // namespace harper

#include "harper/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "harper/ids.hpp"

namespace harper {

namespace {

constexpr double kRescaleAt = 1e100;

double potential(const CocycleParams& p, long long n) {
    return p.b * std::cos(p.theta(n));
}

}  // namespace

double SolutionSequence::recurrence_residual() const {
    double worst = 0.0;
    for (size_t i = 1; i + 1 < values.size(); ++i) {
        long long n = n0 + static_cast<long long>(i);
        double lhs = values[i + 1] + values[i - 1] +
                     (potential(params, n) - params.a) * values[i];
        double scale = std::fabs(values[i + 1]) + std::fabs(values[i - 1]) +
                       std::fabs(values[i]) + 1e-300;
        worst = std::max(worst, std::fabs(lhs) / scale);
    }
    return worst;
}

SolutionSequence generate_solution(const CocycleParams& p, long long n0, long long n1,
                                   double x0, double x1) {
    if (n0 > 0 || n1 < 1)
        throw std::invalid_argument("generate_solution: window must contain {0, 1}");
    SolutionSequence s{n0, std::vector<double>(static_cast<size_t>(n1 - n0 + 1)), p};
    auto at = [&](long long n) -> double& { return s.values[static_cast<size_t>(n - n0)]; };
    at(0) = x0;
    at(1) = x1;
    for (long long n = 1; n < n1; ++n)
        at(n + 1) = (p.a - potential(p, n)) * at(n) - at(n - 1);
    for (long long n = 0; n > n0; --n)
        at(n - 1) = (p.a - potential(p, n)) * at(n) - at(n + 1);
    return s;
}

double sturmian_rotation(const CocycleParams& p, long long N, double x0, double x1) {
    if (N < 1) throw std::invalid_argument("sturmian_rotation: N must be >= 1");
    if (x0 == 0.0 && x1 == 0.0)
        throw std::invalid_argument("sturmian_rotation: trivial solution");
    // march the recurrence, counting sign changes among x_1..x_N; a zero value is a
    // change of sign (the neighbours then have opposite signs), and a terminal zero is
    // the paper's "adding one if x(N) = 0"
    double xm = x0, x = x1;
    double t = frac(p.omega + p.phi / (2.0 * M_PI));  // theta_1 / 2pi
    long long changes = 0;
    for (long long n = 1;; ++n) {
        if (x == 0.0 || xm * x < 0.0) ++changes;
        if (n == N) break;
        double xn = (p.a - p.b * std::cos(2.0 * M_PI * t)) * x - xm;
        t = frac(t + p.omega);
        xm = x;
        x = xn;
        double mag = std::max(std::fabs(x), std::fabs(xm));
        if (mag > kRescaleAt || (mag > 0.0 && mag < 1.0 / kRescaleAt)) {
            double s = 1.0 / mag;
            x *= s;
            xm *= s;
        }
    }
    return static_cast<double>(changes) / (2.0 * static_cast<double>(N));
}

RelationsReport check_relations(const CocycleParams& p, long long N, int L, int phases) {
    RelationsReport r{};
    r.rot = sturmian_rotation(p, N);
    r.rho_f = fibered_rotation_number(p, N);
    r.ids_value = ids(p.a, p.b, p.omega, L, phases);
    // 2 rot and the eigenvalue count determine each other up to the orientation of the
    // count (eigenvalues below vs above a); reconcile over both readings, mod 1.
    r.dev_rot_ids = std::min(dist_to_int(2.0 * r.rot - r.ids_value),
                             dist_to_int(2.0 * r.rot + r.ids_value));
    r.dev_rot_rhof = dist_to_half_int(r.rot - r.rho_f);
    return r;
}

RotationClass classify_rotation(double rot, const Frequency& omega, long long kmax, double tol) {
    if (kmax < 1) throw std::invalid_argument("classify_rotation: kmax must be >= 1");
    if (!(tol > 0)) throw std::invalid_argument("classify_rotation: tol must be positive");

    auto dist_for = [&](long long k) {
        return dist_to_half_int(rot - 0.5 * omega.frac_multiple(k));
    };

    if (dist_for(0) <= tol) return {RotationClass::Tag::Resonant, 0, 0.0, 0.0};
    std::vector<std::pair<double, double>> records;  // (log |k|, log d) at running minima
    double running = 1e300;
    for (long long j = 1; j <= kmax; ++j) {
        for (long long k : {j, -j}) {
            double d = dist_for(k);
            if (d <= tol) return {RotationClass::Tag::Resonant, k, 0.0, 0.0};
            if (d < running) {
                running = d;
                records.emplace_back(std::log(static_cast<double>(j)), std::log(d));
            }
        }
    }

    if (records.size() < 3) return {RotationClass::Tag::Undetermined, 0, 0.0, 0.0};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [lx, ly] : records) {
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    double n = static_cast<double>(records.size());
    double denom = n * sxx - sx * sx;
    if (denom <= 1e-12) return {RotationClass::Tag::Undetermined, 0, 0.0, 0.0};
    double tau = -(n * sxy - sx * sy) / denom;
    if (tau <= 0) return {RotationClass::Tag::Undetermined, 0, 0.0, 0.0};
    double kconst = 1e300;
    for (long long j = 1; j <= kmax; ++j)
        for (long long k : {j, -j})
            kconst = std::min(kconst, dist_for(k) * std::pow(static_cast<double>(j), tau));
    return {RotationClass::Tag::Diophantine, 0, kconst, tau};
}

}  // namespace harper

#include "harper/reducibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace harper {

namespace {

double matrix_sup_diff(const SL2Matrix& a, const SL2Matrix& b) {
    return std::max(std::max(std::fabs(a.m11 - b.m11), std::fabs(a.m12 - b.m12)),
                    std::max(std::fabs(a.m21 - b.m21), std::fabs(a.m22 - b.m22)));
}

}  // namespace

Mat2TorusMap build_conjugation(const Vec2TorusMap& v, int grid) {
    std::vector<double> z11(static_cast<size_t>(grid)), z12(static_cast<size_t>(grid)),
        z21(static_cast<size_t>(grid)), z22(static_cast<size_t>(grid));
    for (int j = 0; j < grid; ++j) {
        Vec2 w = v.eval(2.0 * M_PI * j / grid);
        double d = w.x * w.x + w.y * w.y;
        if (d < 1e-8)
            throw std::runtime_error("vanishing-vector: |v|^2 dips below 1e-8 on the grid");
        z11[static_cast<size_t>(j)] = w.x;
        z12[static_cast<size_t>(j)] = -w.y / d;
        z21[static_cast<size_t>(j)] = w.y;
        z22[static_cast<size_t>(j)] = w.x / d;
    }
    Mat2TorusMap z;
    z.e11 = FourierSeries::from_real_samples(z11);
    z.e12 = FourierSeries::from_real_samples(z12);
    z.e21 = FourierSeries::from_real_samples(z21);
    z.e22 = FourierSeries::from_real_samples(z22);
    return z;
}

TriangularizeResult triangularize(const Mat2TorusMap& A, const Vec2TorusMap& v,
                                  const Frequency& omega, const ReduceOptions& opts) {
    const double shift = 2.0 * M_PI * omega.value();
    int grid = opts.grid;
    for (;; grid *= 2) {
        // invariance precondition v(theta + 2 pi omega) = A(theta) v(theta)
        double vsup = 0.0, inv_defect = 0.0;
        for (int j = 0; j < grid; ++j) {
            double theta = 2.0 * M_PI * j / grid;
            Vec2 w = v.eval(theta);
            Vec2 pushed = A.eval(theta).apply(w);
            Vec2 ahead = v.eval(theta + shift);
            inv_defect = std::max(inv_defect, std::hypot(pushed.x - ahead.x, pushed.y - ahead.y));
            vsup = std::max(vsup, w.norm());
        }
        if (inv_defect > opts.invariance_tol * std::max(1.0, vsup))
            throw std::runtime_error("not-invariant: v fails v(theta+2 pi omega) = A v "
                                     "within tolerance");

        // Z is evaluated pointwise from v (exact formula), not through its own truncated
        // series; narrow dips of d = |v|^2 would otherwise alias into the structure check.
        auto z_at = [&](double theta) {
            Vec2 w = v.eval(theta);
            double d = w.x * w.x + w.y * w.y;
            if (d < 1e-8)
                throw std::runtime_error("vanishing-vector: |v|^2 dips below 1e-8 on the grid");
            return SL2Matrix::unchecked(w.x, -w.y / d, w.y, w.x / d);
        };
        std::vector<double> b12(static_cast<size_t>(grid));
        double structure = 0.0;
        for (int j = 0; j < grid; ++j) {
            double theta = 2.0 * M_PI * j / grid;
            SL2Matrix b1 = z_at(theta + shift).inverse() * A.eval(theta) * z_at(theta);
            structure = std::max(structure, std::fabs(b1.m11 - 1.0));
            structure = std::max(structure, std::fabs(b1.m21));
            structure = std::max(structure, std::fabs(b1.m22 - 1.0));
            b12[static_cast<size_t>(j)] = b1.m12;
        }
        FourierSeries series = FourierSeries::from_real_samples(b12);
        series.enforce_real();
        double top = std::max(series.max_abs(), 1.0);
        bool resolved = series.tail(series.degree() * 3 / 4) < opts.tail_tol * top;
        if (structure <= opts.unipotent_tol && resolved) return {series, structure};
        if (grid >= opts.max_grid) {
            if (structure > opts.unipotent_tol)
                throw std::runtime_error("not-unipotent: conjugated matrix deviates from "
                                         "triangular unit form");
            return {series, structure};
        }
        // structure defect or tail unresolved at this grid: double and retry; truncation of
        // Z is the usual culprit when d = |v|^2 has narrow dips
    }
}

FourierSeries solve_cohomological(const FourierSeries& b12, const Frequency& omega,
                                  double divisor_floor) {
    int M = b12.degree();
    FourierSeries y(M);
    for (int m = -M; m <= M; ++m) {
        if (m == 0) continue;
        std::complex<double> num = b12.coeff(m);
        double ang = 2.0 * M_PI * frac(omega.value() * m);
        std::complex<double> div = std::complex<double>(std::cos(ang) - 1.0, std::sin(ang));
        if (std::abs(div) < divisor_floor)
            throw std::runtime_error("small-divisor overflow: |e^{2 pi i m omega} - 1| below "
                                     "floor at m = " + std::to_string(m));
        y.set_coeff(m, num / div);
    }
    y.enforce_real();

    // functional-equation residual on a grid twice the truncation
    int G = 4;
    while (G < 4 * (M + 1)) G *= 2;
    double mean = b12.coeff(0).real();
    double res = 0.0;
    const double shift = 2.0 * M_PI * omega.value();
    for (int j = 0; j < G; ++j) {
        double theta = 2.0 * M_PI * j / G;
        double lhs = y.eval_real(theta + shift) - y.eval_real(theta);
        double rhs = b12.eval_real(theta) - mean;
        res = std::max(res, std::fabs(lhs - rhs));
    }
    if (res > 1e-8 * std::max(1.0, b12.max_abs()))
        throw std::runtime_error("solve_cohomological: functional-equation residual " +
                                 std::to_string(res) + " exceeds 1e-8");
    return y;
}

FloquetResult floquet_reduce(const Mat2TorusMap& A, const Vec2TorusMap& v,
                             const Frequency& omega, const ReduceOptions& opts) {
    TriangularizeResult tri = triangularize(A, v, omega, opts);
    FourierSeries y = solve_cohomological(tri.b12, omega, opts.divisor_floor);
    double c = tri.b12.coeff(0).real();

    // total conjugation Z * Y, sampled pointwise from v and the shear, then re-expanded
    int grid = std::max(opts.grid, 4 * (tri.b12.degree() + 1));
    int g2 = 4;
    while (g2 < grid) g2 *= 2;
    grid = g2;
    Mat2TorusMap total = Mat2TorusMap::from_function(
        [&](double theta) {
            Vec2 w = v.eval(theta);
            double d = w.x * w.x + w.y * w.y;
            SL2Matrix z = SL2Matrix::unchecked(w.x, -w.y / d, w.y, w.x / d);
            SL2Matrix shear = SL2Matrix::unchecked(1.0, y.eval_real(theta), 0.0, 1.0);
            return z * shear;
        },
        grid);

    FloquetResult out;
    out.Z = total;
    out.c = c;
    out.degreeZ = degree(total);
    out.M = total.degree_bound();

    const double shift = 2.0 * M_PI * omega.value();
    SL2Matrix B = SL2Matrix::unchecked(1.0, c, 0.0, 1.0);
    double res = 0.0;
    for (int j = 0; j < grid; ++j) {
        double theta = 2.0 * M_PI * j / grid;
        SL2Matrix lhs = A.eval(theta) * total.eval(theta);
        SL2Matrix rhs = total.eval(theta + shift) * B;
        res = std::max(res, matrix_sup_diff(lhs, rhs));
        double det_defect = std::fabs(total.eval(theta).det() - 1.0);
        if (det_defect > 1e-8)
            throw std::runtime_error("floquet_reduce: det Z drifted beyond 1e-8");
    }
    out.residual = res;
    return out;
}

int degree(const Mat2TorusMap& Z) {
    return winding_number(
        [&Z](double theta) { return Vec2{Z.e11.eval_real(theta), Z.e21.eval_real(theta)}; });
}

Mat2TorusMap harper_cocycle_map(double a, double b) {
    Mat2TorusMap m;
    m.e11 = FourierSeries(1);
    m.e11.set_coeff(0, a);
    m.e11.set_coeff(1, -b / 2.0);
    m.e11.set_coeff(-1, -b / 2.0);
    m.e12 = FourierSeries(0);
    m.e12.set_coeff(0, -1.0);
    m.e21 = FourierSeries(0);
    m.e21.set_coeff(0, 1.0);
    m.e22 = FourierSeries(0);
    m.e22.set_coeff(0, 0.0);
    return m;
}

bool dichotomy_test(const Mat2TorusMap& A, const Frequency& omega, long long N,
                    const DichotomyOptions& opts) {
    return dichotomy_test_of([&A](double theta) { return A.eval(theta); }, omega, N, opts);
}

bool dichotomy_test_harper(double a, double b, const Frequency& omega, long long N,
                           const DichotomyOptions& opts) {
    return dichotomy_test_of([a, b](double theta) { return transfer_matrix(a, b, theta); },
                             omega, N, opts);
}

}  // namespace harper

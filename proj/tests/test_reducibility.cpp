#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "harper/reducibility.hpp"

using namespace harper;

namespace {

const Frequency& golden() {
    static Frequency g = Frequency::golden();
    return g;
}

FourierSeries random_trig(std::mt19937_64& rng, int deg, double scale) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FourierSeries f(deg);
    f.set_coeff(0, scale * u(rng));
    for (int m = 1; m <= deg; ++m) {
        std::complex<double> c(u(rng), u(rng));
        c *= scale * std::exp(-0.7 * m);
        f.set_coeff(m, c);
        f.set_coeff(-m, std::conj(c));
    }
    return f;
}

struct Synthetic {
    Mat2TorusMap A;
    Vec2TorusMap v;
    double c0;
    std::function<SL2Matrix(double)> z0;
};

/// A = Z0(. + 2 pi omega) B0 Z0^{-1} with random analytic degree-zero Z0 and unipotent B0.
Synthetic make_synthetic(std::mt19937_64& rng, double c0) {
    auto g = random_trig(rng, 3, 0.8);
    auto h = random_trig(rng, 3, 0.5);
    auto s = random_trig(rng, 3, 0.8);
    auto z0 = [g, h, s](double th) {
        return SL2Matrix::rotation(g.eval_real(th)) *
               SL2Matrix::unchecked(std::exp(h.eval_real(th)), s.eval_real(th), 0.0,
                                    std::exp(-h.eval_real(th)));
    };
    double shift = 2 * M_PI * golden().value();
    SL2Matrix B0 = SL2Matrix::unchecked(1.0, c0, 0.0, 1.0);
    Synthetic out;
    out.A = Mat2TorusMap::from_function(
        [&](double th) { return z0(th + shift) * B0 * z0(th).inverse(); }, 512);
    out.v = vec2_map_from_function(
        [&](double th) {
            SL2Matrix z = z0(th);
            return Vec2{z.m11, z.m21};
        },
        512);
    out.c0 = c0;
    out.z0 = z0;
    return out;
}

}  // namespace

TEST_CASE("fourier series round trip and evaluation") {
    std::mt19937_64 rng(5);
    FourierSeries f = random_trig(rng, 12, 1.0);
    auto samples = f.sample(64);
    FourierSeries g = FourierSeries::from_real_samples(samples);
    for (double th : {0.1, 1.7, 4.4})
        CHECK(f.eval_real(th) == doctest::Approx(g.eval_real(th)).epsilon(1e-12));
    CHECK(std::abs(f.eval(0.35) - std::complex<double>(f.eval_real(0.35), 0.0)) < 1e-12);
    // decay certificate recovers the planted exponential rate
    double width = f.decay_width();
    CHECK(width == doctest::Approx(0.7).epsilon(0.2));
}

TEST_CASE("build_conjugation basics") {
    Vec2TorusMap constant;
    constant.x = FourierSeries(0);
    constant.x.set_coeff(0, 1.0);
    constant.y = FourierSeries(0);
    Mat2TorusMap z = build_conjugation(constant, 256);
    CHECK(z.eval(1.3).m11 == doctest::Approx(1.0));
    CHECK(std::fabs(z.eval(1.3).m12) < 1e-14);
    CHECK(z.eval(2.9).det() == doctest::Approx(1.0));

    Vec2TorusMap circle;
    circle.x = FourierSeries(1);
    circle.x.set_coeff(1, 0.5);
    circle.x.set_coeff(-1, 0.5);  // cos
    circle.y = FourierSeries(1);
    circle.y.set_coeff(1, std::complex<double>(0, -0.5));
    circle.y.set_coeff(-1, std::complex<double>(0, 0.5));  // sin
    Mat2TorusMap r1 = build_conjugation(circle, 256);
    CHECK(degree(r1) == 1);
    for (double th : {0.0, 0.9, 3.3}) {
        SL2Matrix expect = SL2Matrix::rotation(th);
        SL2Matrix got = r1.eval(th);
        CHECK(std::fabs(got.m11 - expect.m11) < 1e-12);
        CHECK(std::fabs(got.m12 - expect.m12) < 1e-12);
        CHECK(std::fabs(got.m21 - expect.m21) < 1e-12);
        CHECK(std::fabs(got.m22 - expect.m22) < 1e-12);
    }

    Vec2TorusMap vanishing;
    vanishing.x = circle.y;  // sin(theta), vanishes at 0
    vanishing.y = FourierSeries(0);
    CHECK_THROWS_WITH_AS(build_conjugation(vanishing, 256), doctest::Contains("vanishing-vector"),
                         std::runtime_error);
}

TEST_CASE("triangularize constants and synthetic recovery") {
    // A constant unipotent, v = (1, 0): b12 is the constant 5
    Mat2TorusMap A;
    A.e11 = FourierSeries(0); A.e11.set_coeff(0, 1.0);
    A.e12 = FourierSeries(0); A.e12.set_coeff(0, 5.0);
    A.e21 = FourierSeries(0);
    A.e22 = FourierSeries(0); A.e22.set_coeff(0, 1.0);
    Vec2TorusMap v;
    v.x = FourierSeries(0); v.x.set_coeff(0, 1.0);
    v.y = FourierSeries(0);
    TriangularizeResult tri = triangularize(A, v, golden());
    CHECK(tri.b12.coeff(0).real() == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(tri.b12.tail(1) < 1e-12);
    CHECK(tri.residual < 1e-12);

    std::mt19937_64 rng(42);
    Synthetic syn = make_synthetic(rng, 2.0);
    TriangularizeResult tsyn = triangularize(syn.A, syn.v, golden());
    CHECK(tsyn.b12.coeff(0).real() == doctest::Approx(2.0).epsilon(1e-8));

    // a non-invariant v must be refused
    Vec2TorusMap bad;
    bad.x = FourierSeries(0); bad.x.set_coeff(0, 1.0);
    bad.y = FourierSeries(0); bad.y.set_coeff(0, 0.2);
    CHECK_THROWS_WITH_AS(triangularize(harper_cocycle_map(0.0, 1.0), bad, golden()),
                         doctest::Contains("not-invariant"), std::runtime_error);
}

TEST_CASE("cohomological equation") {
    // single mode: cos(theta) has the closed-form solution Re(e^{i theta}/(e^{2 pi i w}-1))
    FourierSeries rhs(1);
    rhs.set_coeff(1, 0.5);
    rhs.set_coeff(-1, 0.5);
    FourierSeries y = solve_cohomological(rhs, golden());
    std::complex<double> div =
        std::exp(std::complex<double>(0, 2 * M_PI * golden().value())) - 1.0;
    for (double th : {0.0, 0.8, 2.2}) {
        std::complex<double> expect = std::exp(std::complex<double>(0, th)) / div;
        CHECK(y.eval_real(th) == doctest::Approx(expect.real()).epsilon(1e-12));
    }
    // constant right side: zero-mean part vanishes, so y = 0
    FourierSeries constant(0);
    constant.set_coeff(0, 3.3);
    FourierSeries y0 = solve_cohomological(constant, golden());
    CHECK(y0.max_abs() < 1e-15);

    // random trig polynomial: direct functional-equation oracle
    std::mt19937_64 rng(9);
    FourierSeries b12 = random_trig(rng, 64, 1.0);
    FourierSeries sol = solve_cohomological(b12, golden());
    double shift = 2 * M_PI * golden().value();
    double mean = b12.coeff(0).real();
    double worst = 0;
    for (int j = 0; j < 512; ++j) {
        double th = 2 * M_PI * j / 512;
        worst = std::max(worst, std::fabs(sol.eval_real(th + shift) - sol.eval_real(th) -
                                          (b12.eval_real(th) - mean)));
    }
    CHECK(worst <= 1e-9);
    // the solution inherits exponential decay (analyticity shrinks by the divisor loss)
    CHECK(sol.decay_width() > 0.3);

    // divisor floor error path
    CHECK_THROWS_WITH_AS(solve_cohomological(b12, golden(), 1.0),
                         doctest::Contains("small-divisor overflow"), std::runtime_error);
}

TEST_CASE("floquet_reduce identities and synthetic recovery") {
    // A = identity, v = (1, 0): B = identity, c = 0
    Mat2TorusMap ident;
    ident.e11 = FourierSeries(0); ident.e11.set_coeff(0, 1.0);
    ident.e12 = FourierSeries(0);
    ident.e21 = FourierSeries(0);
    ident.e22 = FourierSeries(0); ident.e22.set_coeff(0, 1.0);
    Vec2TorusMap v;
    v.x = FourierSeries(0); v.x.set_coeff(0, 1.0);
    v.y = FourierSeries(0);
    FloquetResult fid = floquet_reduce(ident, v, golden());
    CHECK(std::fabs(fid.c) < 1e-14);
    CHECK(fid.residual < 1e-12);
    CHECK(collapsed_test(fid));

    std::mt19937_64 rng(1234);
    for (double c0 : {2.0, -0.37, 0.0}) {
        Synthetic syn = make_synthetic(rng, c0);
        FloquetResult fr = floquet_reduce(syn.A, syn.v, golden());
        CHECK(std::fabs(fr.c - c0) < 1e-8);
        CHECK(fr.residual < 1e-8);
        CHECK(fr.degreeZ == 0);
        CHECK(collapsed_test(fr) == (c0 == 0.0));
    }
}

TEST_CASE("reduction is invariant under degree-zero conjugations") {
    std::mt19937_64 rng(77);
    Synthetic syn = make_synthetic(rng, 1.25);
    // W: an independent analytic degree-zero change of variables
    auto wg = random_trig(rng, 2, 0.6);
    auto w = [wg](double th) { return SL2Matrix::rotation(wg.eval_real(th)); };
    double shift = 2 * M_PI * golden().value();
    Mat2TorusMap A2 = Mat2TorusMap::from_function(
        [&](double th) { return w(th + shift) * syn.A.eval(th) * w(th).inverse(); }, 1024);
    Vec2TorusMap v2 = vec2_map_from_function(
        [&](double th) {
            Vec2 u = syn.v.eval(th);
            return w(th).apply(u);
        },
        1024);
    FloquetResult f1 = floquet_reduce(syn.A, syn.v, golden());
    FloquetResult f2 = floquet_reduce(A2, v2, golden());
    CHECK(std::fabs(f1.c - f2.c) < 1e-6);
}

TEST_CASE("stage residuals bound the end-to-end residual") {
    std::mt19937_64 rng(4321);
    Synthetic syn = make_synthetic(rng, 0.8);
    TriangularizeResult tri = triangularize(syn.A, syn.v, golden());
    FloquetResult fr = floquet_reduce(syn.A, syn.v, golden());
    // the final shear solves the cohomological equation to ~1e-12; allow that plus slack
    CHECK(fr.residual <= tri.residual + 1e-10);
}

TEST_CASE("dichotomy test") {
    // constant elliptic rotation: no dichotomy
    auto elliptic = [](double) { return SL2Matrix::unchecked(0, -1, 1, 0); };
    CHECK_FALSE(dichotomy_test_of(elliptic, golden(), 10000));
    // far outside the spectrum: uniformly hyperbolic
    CHECK(dichotomy_test_harper(5.0, 1.0, golden(), 10000));
    // and the exponent seen there matches the direct estimate
    double le = lyapunov_exponent_of([](double th) { return transfer_matrix(5.0, 1.0, th); },
                                     golden().value(), 0.0, 50000);
    CHECK(le == doctest::Approx(std::log((5.0 + std::sqrt(21.0)) / 2.0)).epsilon(0.05));
    // subcritical spectrum point: zero exponent, no dichotomy
    CHECK_FALSE(dichotomy_test_harper(0.0, 1.0, golden(), 10000));
}

TEST_CASE("harper cocycle map evaluates to the transfer matrix") {
    Mat2TorusMap m = harper_cocycle_map(0.7, 1.9);
    for (double th : {0.0, 1.1, 4.0}) {
        SL2Matrix a = m.eval(th);
        SL2Matrix b = transfer_matrix(0.7, 1.9, th);
        CHECK(std::fabs(a.m11 - b.m11) < 1e-14);
        CHECK(std::fabs(a.m12 - b.m12) < 1e-14);
        CHECK(std::fabs(a.m21 - b.m21) < 1e-14);
        CHECK(std::fabs(a.m22 - b.m22) < 1e-14);
    }
}

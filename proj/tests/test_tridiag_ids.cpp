#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "harper/frequency.hpp"
#include "harper/ids.hpp"
#include "harper/tridiag.hpp"

using namespace harper;

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

SymTridiag harper_truncation(double b, double omega, double phi, int L) {
    SymTridiag t;
    t.diag.resize(static_cast<size_t>(L - 1));
    t.off.assign(static_cast<size_t>(L - 2), 1.0);
    for (int n = 1; n < L; ++n)
        t.diag[static_cast<size_t>(n - 1)] = b * std::cos(2 * M_PI * frac(omega * n) + phi);
    return t;
}

Eigen::VectorXd dense_eigenvalues(const SymTridiag& t) {
    int m = t.dim();
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        mat(i, i) = t.diag[static_cast<size_t>(i)];
        if (i + 1 < m) mat(i, i + 1) = mat(i + 1, i) = t.off[static_cast<size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

}  // namespace

TEST_CASE("eigen_count on the smallest truncations") {
    // L = 2: single site with eigenvalue 0
    CHECK(eigen_count(1.0, {2, 0.0}, 0.0, kGolden) == 1);
    CHECK(eigen_count(-1.0, {2, 0.0}, 0.0, kGolden) == 0);
    // L = 3: free two-site block with eigenvalues +-1
    CHECK(eigen_count(0.0, {3, 0.0}, 0.0, kGolden) == 1);
    CHECK(eigen_count(-1.5, {3, 0.0}, 0.0, kGolden) == 0);
    CHECK(eigen_count(1.5, {3, 0.0}, 0.0, kGolden) == 2);
}

TEST_CASE("Sturm count against dense diagonalization") {
    SymTridiag t = harper_truncation(1.0, kGolden, 0.0, 100);
    Eigen::VectorXd ev = dense_eigenvalues(t);
    for (double a : {0.0, -1.3, 0.7, 2.2, -3.5, 3.5}) {
        int dense = 0;
        for (int i = 0; i < ev.size(); ++i)
            if (ev(i) <= a) ++dense;
        CHECK(sturm_count_leq(t, a) == dense);
    }
}

TEST_CASE("count is an exact nondecreasing step function with full range") {
    SymTridiag t = harper_truncation(2.0, kGolden, 0.4, 60);
    int prev = 0;
    for (double a = -5.0; a <= 5.0; a += 0.01) {
        int c = sturm_count_leq(t, a);
        CHECK(c >= prev);
        CHECK(c >= 0);
        CHECK(c <= t.dim());
        prev = c;
    }
    CHECK(sturm_count_leq(t, -5.0) == 0);
    CHECK(sturm_count_leq(t, 5.0) == t.dim());
}

TEST_CASE("interlacing: consecutive truncation sizes differ by at most one per count") {
    for (double a : {-1.0, 0.0, 0.9}) {
        int c1 = eigen_count(a, {400, 0.3}, 1.0, kGolden);
        int c2 = eigen_count(a, {401, 0.3}, 1.0, kGolden);
        CHECK(std::abs(c2 - c1) <= 2);  // Cauchy interlacing plus one boundary site
    }
}

TEST_CASE("bisection eigenvalues match dense values") {
    SymTridiag t = harper_truncation(1.5, kGolden, 1.1, 80);
    Eigen::VectorXd ev = dense_eigenvalues(t);
    auto all = eigenvalues_by_index(t, 0, t.dim(), 1e-12);
    REQUIRE(static_cast<int>(all.size()) == ev.size());
    for (int i = 0; i < ev.size(); ++i)
        CHECK(all[static_cast<size_t>(i)] == doctest::Approx(ev(i)).epsilon(1e-10));
    auto window = eigenvalues_in(t, -1.0, 1.0, 1e-12);
    size_t expect = 0;
    for (int i = 0; i < ev.size(); ++i)
        if (ev(i) > -1.0 && ev(i) <= 1.0) ++expect;
    CHECK(window.size() == expect);
}

TEST_CASE("inverse iteration returns unit eigenvectors with tiny residuals") {
    SymTridiag t = harper_truncation(3.0, kGolden, 0.8, 301);
    TridiagEigenSystem sys = eigenpairs_in(t, -1.0, 1.0);
    REQUIRE(sys.values.size() > 5);
    for (size_t j = 0; j < sys.values.size(); ++j) {
        double norm = 0;
        for (double x : sys.vectors[j]) norm += x * x;
        CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sys.residuals[j] < 1e-8);
    }
    // orthogonality, including any clustered pairs
    for (size_t i = 0; i < sys.values.size(); ++i)
        for (size_t j = i + 1; j < sys.values.size(); ++j) {
            double dot = 0;
            for (size_t k = 0; k < sys.vectors[i].size(); ++k)
                dot += sys.vectors[i][k] * sys.vectors[j][k];
            CHECK(std::fabs(dot) < 1e-6);
        }
}

TEST_CASE("inverse iteration resolves a numerically degenerate pair") {
    // two decoupled copies of the same block: exactly repeated eigenvalues
    SymTridiag t;
    t.diag = {0.3, -0.1, 0.3, -0.1};
    t.off = {1.0, 0.0, 1.0};
    TridiagEigenSystem sys = eigenpairs_in(t, -2.0, 2.0);
    REQUIRE(sys.values.size() == 4);
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = i + 1; j < 4; ++j) {
            double dot = 0;
            for (size_t k = 0; k < 4; ++k) dot += sys.vectors[i][k] * sys.vectors[j][k];
            CHECK(std::fabs(dot) < 1e-8);
        }
}

TEST_CASE("ids basic values") {
    CHECK(ids(-3.1, 1.0, kGolden, 500) == 0.0);
    CHECK(ids(3.1, 1.0, kGolden, 500) == 1.0);
    // spectrum symmetric under a -> -a: the phase-averaged IDS at 0 is exactly 1/2
    CHECK(ids(0.0, 1.7, kGolden, 2000, 16) == doctest::Approx(0.5).epsilon(2e-3));
}

TEST_CASE("ids is monotone and symmetric") {
    IdsEvaluator ev(1.0, kGolden, 2000, 8);
    double prev = 0.0;
    for (double a = -3.2; a <= 3.2; a += 0.05) {
        double v = ev(a);
        CHECK(v >= prev);
        prev = v;
        CHECK(ev(a) + ev(-a) == doctest::Approx(1.0).epsilon(3e-3));
    }
}

TEST_CASE("ids converges in the truncation size") {
    // a = 1.5 lies between the k = 1 and k = -2 gaps of b = 1, inside the spectrum
    double v1 = ids(1.5, 1.0, kGolden, 10000);
    double v2 = ids(1.5, 1.0, kGolden, 20000);
    CHECK(v1 > 0.0);
    CHECK(v1 < 1.0);
    CHECK(std::fabs(v1 - v2) < 1e-3);
    // above the spectrum the value saturates and stays put
    CHECK(ids(2.5, 1.0, kGolden, 10000) == 1.0);
    CHECK(ids(2.5, 1.0, kGolden, 20000) == 1.0);
}

TEST_CASE("spectrum edges of the free operator") {
    auto [lo, hi] = spectrum_edges(0.0, kGolden, 10000, 2);
    CHECK(std::fabs(lo + 2.0) < 1e-4);
    CHECK(std::fabs(hi - 2.0) < 1e-4);
}

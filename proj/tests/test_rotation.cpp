#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "harper/ids.hpp"
#include "harper/rotation.hpp"

using namespace harper;

namespace {
const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;
}

TEST_CASE("free-operator rotation numbers follow the arccos closed form") {
    // b = 0: rot(a) = arccos(a/2) / 2pi
    CHECK(sturmian_rotation(CocycleParams(0.0, 0.0, kGolden, 0.0), 100000) ==
          doctest::Approx(0.25).epsilon(1e-3));
    double a = 2.0 * std::cos(2 * M_PI * 0.1);
    CHECK(sturmian_rotation(CocycleParams(a, 0.0, kGolden, 0.7), 1000000) ==
          doctest::Approx(0.1).epsilon(1e-3));
    for (double aa : {-1.9, -1.0, 1.0, 1.9}) {
        double expect = std::acos(aa / 2.0) / (2 * M_PI);
        CHECK(std::fabs(sturmian_rotation(CocycleParams(aa, 0.0, kGolden, 0.3), 1000000) -
                        expect) < 1e-3);
    }
}

TEST_CASE("rotation number range and tail stability") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ua(-4.0, 4.0), ub(0.0, 3.0);
    for (int t = 0; t < 6; ++t) {
        CocycleParams p(ua(rng), ub(rng), kGolden, 0.9);
        long long N = 40000;
        double r1 = sturmian_rotation(p, N);
        double r2 = sturmian_rotation(p, 2 * N);
        CHECK(r1 >= 0.0);
        CHECK(r1 <= 0.5);
        CHECK(std::fabs(r1 - r2) <= 5.0 / std::sqrt(static_cast<double>(N)));
    }
}

TEST_CASE("limit independent of the initial data") {
    CocycleParams p(0.4, 1.2, kGolden, 0.1);
    double ref = sturmian_rotation(p, 400000);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 4; ++t) {
        double x0 = u(rng), x1 = u(rng);
        if (x0 == 0 && x1 == 0) x1 = 0.5;
        CHECK(std::fabs(sturmian_rotation(p, 400000, x0, x1) - ref) < 5e-3);
    }
    CHECK_THROWS_AS(sturmian_rotation(p, 1000, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("generated solutions satisfy the recurrence") {
    CocycleParams p(0.9, 2.2, kGolden, 0.5);
    SolutionSequence s = generate_solution(p, -200, 200);
    CHECK(s.recurrence_residual() < 1e-9);
    CHECK(s.values[static_cast<size_t>(-s.n0)] == 0.0);
    CHECK(s.values[static_cast<size_t>(1 - s.n0)] == 1.0);
}

TEST_CASE("relations between rot, rho_f, and the IDS") {
    // b = 0, a = 0: rot = 1/4, ids = 1/2
    RelationsReport r0 = check_relations(CocycleParams(0.0, 0.0, kGolden, 0.2), 200000, 4000);
    CHECK(r0.rot == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(r0.ids_value == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(r0.dev_rot_ids <= 2e-3);
    CHECK(r0.dev_rot_rhof <= 2e-3);

    RelationsReport r1 = check_relations(CocycleParams(1.0, 1.0, kGolden, 0.0), 1000000, 10000);
    CHECK(r1.dev_rot_ids <= 5e-3);
    CHECK(r1.dev_rot_rhof <= 5e-3);

    // a = 0 lies in the spectrum for every b (the IDS is 1/2 there)
    RelationsReport r4 = check_relations(CocycleParams(0.0, 4.0, kGolden, 0.0), 1000000, 10000);
    CHECK(r4.dev_rot_ids <= 5e-3);
    CHECK(r4.dev_rot_rhof <= 5e-3);
}

TEST_CASE("sturmian rotation equals the IDS oracle at the symmetric point") {
    // b = 1, a = 0: rot = ids/2 = 1/4
    double rot = sturmian_rotation(CocycleParams(0.0, 1.0, kGolden, 0.0), 1000000);
    double k = ids(0.0, 1.0, kGolden, 10000);
    CHECK(std::fabs(rot - 0.5 * k) < 2e-3);
}

TEST_CASE("cross-definition agreement on an (a, b) grid") {
    // trimmed version of the acceptance grid
    for (double b : {0.5, 2.0}) {
        for (int i = 0; i < 8; ++i) {
            double a = -2.0 - b + (4.0 + 2.0 * b) * (i + 0.5) / 8.0;
            CocycleParams p(a, b, kGolden, 0.35);
            double rs = sturmian_rotation(p, 200000);
            double rf = fibered_rotation_number(p, 200000);
            CHECK(dist_to_half_int(rs - rf) < 2e-3);
        }
    }
}

TEST_CASE("classify_rotation") {
    Frequency g = Frequency::golden();
    RotationClass c1 = classify_rotation(0.5 * frac(kGolden), g, 10, 1e-5);
    CHECK(c1.tag == RotationClass::Tag::Resonant);
    CHECK(c1.k == 1);

    RotationClass c0 = classify_rotation(0.0, g, 10, 1e-5);
    CHECK(c0.tag == RotationClass::Tag::Resonant);
    CHECK(c0.k == 0);

    // oracle: {k omega}/2 never comes within 1e-6 of 1/4 for |k| <= 50
    double closest = 1.0;
    for (long long k = -50; k <= 50; ++k) {
        if (k == 0) continue;
        closest = std::min(closest, dist_to_half_int(0.25 - 0.5 * g.frac_multiple(k)));
    }
    CHECK(closest > 1e-6);
    RotationClass cq = classify_rotation(0.25, g, 50, 1e-6);
    CHECK(cq.tag != RotationClass::Tag::Resonant);

    // mirror labels are distinct: {-omega}/2 resolves to k = -1, not +1
    RotationClass ct = classify_rotation(0.5 * frac(-kGolden), g, 10, 1e-5);
    CHECK(ct.tag == RotationClass::Tag::Resonant);
    CHECK(ct.k == -1);
}

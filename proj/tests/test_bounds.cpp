#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "siegel/bounds.hpp"
#include "siegel/specfun.hpp"

using namespace siegel;
using std::numbers::pi;

namespace {

const char* kTestCfs[] = {";1", ";2", ";5", ";1,2", "2;1", "3,1;2,4", ";1,1,3", ";24"};

}  // namespace

TEST_CASE("K1 for Q = 8 matches the closed form") {
    ConstantsLedger L = constants_ledger(8, 1);
    double c = std::log(5.0 / 3.0) / (std::pow(8.0, 7) * pi);
    CHECK(L.c == doctest::Approx(c).epsilon(1e-14));
    CHECK(L.c == doctest::Approx(7.7535e-8).epsilon(1e-4));
    double closed = 3 * pi / (2 * c) + std::log(2.0) - 6 * std::log(16.0);
    CHECK(L.ln_K1 == doctest::Approx(closed).epsilon(1e-6));
    CHECK(ln_K1_closed_form(8) == doctest::Approx(closed).epsilon(1e-14));
    CHECK(L.ln_K1 == doctest::Approx(6.0778e7).epsilon(1e-4));
}

TEST_CASE("K1 for a small synthetic ledger stays at level 0") {
    ConstantsLedger L = constants_ledger(1, 1);
    // mu(r) = c  <=>  mu(r') = 1/(16 c) with r'^2 = 1 - r^2; bisect the forward mu in ln r'
    double target = 1 / (16 * std::log(5.0 / 3.0) / (8 * pi));
    double lo = -200, hi = 0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (mu(std::exp(mid)) > target ? lo : hi) = mid;
    }
    double K1 = 2 * std::exp(-12 * lo);
    CHECK(L.K1.level() == 0);
    CHECK(L.K1.to_double() == doctest::Approx(K1).epsilon(1e-9));
    CHECK(L.K1 >= TowerReal(2.0));
}

TEST_CASE("ledger propagation in tower arithmetic") {
    for (long B : {1L, 2L, 5L, 24L}) {
        CAPTURE(B);
        ConstantsLedger L = constants_ledger(8, B);
        // K2 = K1^{B+1}
        CHECK(L.K2.log().to_double() == doctest::Approx((B + 1) * L.ln_K1).epsilon(1e-14));
        CHECK(L.K > L.K2);
        CHECK(L.K.level() == 2);
        // ln ln K ~ ln(8 pi) + 2 ln K2 for K2 >> 1
        double lnlnK = L.K.log().log().to_double();
        CHECK(lnlnK == doctest::Approx(std::log(8 * pi) + 2 * (B + 1) * L.ln_K1).epsilon(1e-12));
        CHECK(L.one_minus_gamma > TowerReal(0.0));
        CHECK(L.one_minus_gamma < TowerReal(1.0));
        CHECK(L.one_minus_gamma.recip());
    }
    CHECK(constants_ledger(8, 2).K2 > constants_ledger(8, 1).K2);
    CHECK(constants_ledger(4, 1).K1 < constants_ledger(8, 1).K1);
    CHECK(constants_ledger(2, 1).K1 < constants_ledger(3, 1).K1);
    CHECK_THROWS(constants_ledger(0, 1));
    CHECK_THROWS(constants_ledger(8, 0));
}

TEST_CASE("small-Q ledger values match direct evaluation in the log layers") {
    ConstantsLedger L = constants_ledger(1, 1);
    double K1 = L.K1.to_double();
    double K2 = K1 * K1;
    double M = 2 * K2 - 1;
    CHECK(L.K2.to_double() == doctest::Approx(K2).epsilon(1e-12));
    CHECK(L.M.to_double() == doctest::Approx(M).epsilon(1e-12));
    // ln K = M (2 (pi M - ln 16) + ln K2) overflows a double; compare ln ln K
    double lnlnK = std::log(M) + std::log(2 * (pi * M - std::log(16.0)) + std::log(K2));
    CHECK(L.K.log().log().to_double() == doctest::Approx(lnlnK).epsilon(1e-12));
    double zeta16 = std::sqrt(2.0) * (std::sqrt(3.0) - 1) / 16;
    double ln_gap = std::log(16 / pi) + M / 2 * std::log(zeta16);
    CHECK(L.one_minus_gamma.log().to_double() == doctest::Approx(ln_gap).epsilon(1e-12));
}

TEST_CASE("case selection") {
    ConstantsLedger L = constants_ledger(8, 24);
    auto g = scaling_bounds(QuadraticIrrational::parse(";1"), L);
    CHECK(g.scase == ScalingCase::OddAtMostInvSqrt2);
    CHECK(case_tag(g.scase) == "odd-period/alpha<=1/sqrt2");
    CHECK(g.exponent == 0);
    CHECK(g.upper_vacuous);
    CHECK(g.upper.to_double() == 1.0);

    auto t = scaling_bounds(QuadraticIrrational::parse(";2"), L);
    CHECK(t.scase == ScalingCase::OddAtMostInvSqrt2);
    CHECK(t.exponent == 1);
    CHECK_FALSE(t.upper_vacuous);
    // 1 - (1 + 1/K)^{-1/2} = 1/(2K) to leading order
    TowerReal half_inv = L.K.reciprocal() * TowerReal(0.5);
    CHECK(t.one_minus_upper.level() == 2);
    CHECK(t.one_minus_upper.recip());
    CHECK(t.one_minus_upper.mag() == doctest::Approx(half_inv.mag()).epsilon(1e-14));

    // (1,1) as an even period: alpha = golden^2 < 1/2
    auto e = scaling_bounds(QuadraticIrrational::parse(";1,1"), L);
    CHECK(e.s == 2);
    CHECK(e.alpha == doctest::Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-14));
    CHECK(e.scase == ScalingCase::EvenAtMostHalf);

    for (double a : {0.05, 0.3, 0.5, 0.51, 0.7, 0.7072, 0.9}) {
        for (int s : {1, 2, 3, 4}) {
            ScalingCase c = select_case(a, s);
            bool odd = s % 2 == 1;
            if (odd) CHECK((c == ScalingCase::OddAboveInvSqrt2) == (a > 1 / std::sqrt(2.0)));
            if (!odd) CHECK((c == ScalingCase::EvenAboveHalf) == (a > 0.5));
            CHECK((c == ScalingCase::OddAboveInvSqrt2 || c == ScalingCase::OddAtMostInvSqrt2) == odd);
        }
    }
}

TEST_CASE("large-alpha formulas through the (alpha, s) entry point") {
    // hand-built ledger with a native-size K to exercise the formulas themselves
    ConstantsLedger small;
    double K = 3.0;
    small.K = TowerReal(K);
    small.one_minus_gamma = TowerReal(0.01);
    // even period, alpha > 1/2: 1/(K^{-1} (1/(1+K))^{log2(alpha/(1-alpha)) + 1} + 1)
    double a = 0.75;
    auto r = scaling_bounds(a, 2, small);
    CHECK(r.scase == ScalingCase::EvenAboveHalf);
    double expect = 1 / (std::pow(1 / (1 + K), std::log2(a / (1 - a)) + 1) / K + 1);
    CHECK(r.upper.to_double() == doctest::Approx(expect).epsilon(1e-12));
    CHECK(r.one_minus_upper.to_double() == doctest::Approx(1 - expect).epsilon(1e-12));
    // odd period, alpha > 1/sqrt2: square root of the same with alpha^2
    auto o = scaling_bounds(0.8, 1, small);
    CHECK(o.scase == ScalingCase::OddAboveInvSqrt2);
    double a2 = 0.64;
    double expect2 = std::sqrt(1 / (std::pow(1 / (1 + K), std::log2(a2 / (1 - a2)) + 1) / K + 1));
    CHECK(o.upper.to_double() == doctest::Approx(expect2).epsilon(1e-12));
    // small-alpha cases: (1 + 1/K)^{-m/2} and (1 + 1/K)^{-m}
    auto p = scaling_bounds(0.2, 1, small);
    CHECK(p.upper.to_double() == doctest::Approx(std::pow(1 + 1 / K, -1.0)).epsilon(1e-12));
    auto q = scaling_bounds(0.2, 2, small);
    CHECK(q.upper.to_double() == doctest::Approx(std::pow(1 + 1 / K, -2.0)).epsilon(1e-12));
    // lower bound alpha^gamma
    CHECK(p.lower == doctest::Approx(std::pow(0.2, 0.99)).epsilon(1e-12));
    // with the real ledger the gap is a doubly small tower value
    auto big = scaling_bounds(0.75, 2, constants_ledger(8, 1));
    CHECK(big.one_minus_upper.level() == 2);
    CHECK(big.one_minus_upper.recip());
}

TEST_CASE("scaling bounds are ordered for every test fraction") {
    for (const char* text : kTestCfs) {
        CAPTURE(text);
        auto cf = QuadraticIrrational::parse(text);
        ConstantsLedger L = constants_ledger(8, cf.B());
        auto r = scaling_bounds(cf, L);
        CHECK(r.lower >= r.alpha);
        CHECK(r.lower <= 1.0);
        CHECK(r.lower_excess > TowerReal(0.0));
        CHECK(r.lower_excess < TowerReal(1e-300));
        CHECK(TowerReal(r.lower) <= r.upper);
        CHECK(r.upper <= TowerReal(1.0));
        CHECK(r.upper_vacuous == (r.one_minus_upper.sign() == 0));
        CHECK(r.vartheta == doctest::Approx(vartheta(cf)).epsilon(1e-14));
    }
    CHECK_THROWS(scaling_bounds(QuadraticIrrational::parse(";3"), constants_ledger(8, 2)));
}

TEST_CASE("exact floor of -log2 alpha near a power of two") {
    // alpha for ;1,1 is golden^2 = 0.381966 -> [1.388] = 1
    auto r = scaling_bounds(QuadraticIrrational::parse(";1,1"), constants_ledger(8, 1));
    CHECK(r.exponent == 1);
    // alpha for ;5 is (sqrt29 - 5)/2 = 0.19258 -> [2.376] = 2
    auto f = scaling_bounds(QuadraticIrrational::parse(";5"), constants_ledger(8, 5));
    CHECK(f.exponent == 2);
}

TEST_CASE("uniform constants") {
    ConstantsLedger L = constants_ledger(8, 1);
    auto c1 = uniform_constants(1, 1, ScalingCase::OddAboveInvSqrt2, L);
    CHECK_FALSE(c1.vacuous);
    CHECK(c1.delta2 < TowerReal(1.0));
    // delta2 = (1 + K)^{-(1/2) log2(phi)}
    double e = 0.5 * std::log2((1 + std::sqrt(5.0)) / 2);
    CHECK(c1.delta2.reciprocal().log().log().to_double() ==
          doctest::Approx(std::log(e) + L.K.log().log().to_double()).epsilon(1e-12));
    for (long B : {1L, 2L, 7L}) {
        auto c4 = uniform_constants(B, 2, ScalingCase::EvenAtMostHalf, L);
        CHECK(c4.vacuous);
        CHECK(compare(c4.delta2, TowerReal(1.0)) == 0);
        auto c3 = uniform_constants(B, 1, ScalingCase::OddAtMostInvSqrt2, L);
        CHECK(c3.vacuous);
        CHECK(vartheta_B(B) < 2.0);
    }
    // vartheta_B - 1 < 1 makes the even large-alpha delta2 exceed 1
    auto c2 = uniform_constants(1, 2, ScalingCase::EvenAboveHalf, L);
    CHECK(c2.vacuous);
}

TEST_CASE("Buff-Henriksen bounds and triangle criterion") {
    auto g = bh_bounds((Surd(0, 1, 1, 5) - Surd(1)) / Surd(2));
    CHECK(g.first == doctest::Approx(0.6180339887498949).epsilon(1e-15));
    CHECK(g.second == 1.0);
    CHECK(bh_bounds(Surd(0, 1, 1, 2) - Surd(1)).first == doctest::Approx(std::sqrt(2.0) - 1).epsilon(1e-15));
    CHECK_THROWS(bh_bounds(Surd(1)));

    double golden = (std::sqrt(5.0) - 1) / 2;
    CHECK(cylinder_modulus(golden) == doctest::Approx(3.2644).epsilon(1e-4));
    CHECK(triangle_criterion(golden));
    double a24 = (std::sqrt(580.0) - 24) / 2;
    CHECK(a24 == doctest::Approx(0.04159).epsilon(1e-3));
    CHECK(cylinder_modulus(a24) == doctest::Approx(0.494).epsilon(1e-3));
    CHECK_FALSE(triangle_criterion(a24));
    CHECK_FALSE(triangle_criterion(std::exp(-pi)));
    CHECK(cylinder_modulus(std::exp(-pi / 2)) == doctest::Approx(1.0).epsilon(1e-15));
    double prev = 0;
    for (int i = 1; i < 100; ++i) {
        double m = cylinder_modulus(i / 100.0);
        CHECK(m > prev);
        prev = m;
    }
}

TEST_CASE("interval distortion bounds, worked values") {
    auto p1 = qs_interval_bounds(1.0, 0.5, 1, 1);
    CHECK(p1.first == doctest::Approx(0.25));
    CHECK(p1.second == doctest::Approx(0.5));
    auto p3 = qs_interval_bounds(1.0, 0.75, 1, 3);
    CHECK(p3.first == doctest::Approx(2.0 / 3));
    CHECK(p3.second == doctest::Approx(6.0 / 7));
    auto p2 = qs_interval_bounds(1.0, 1.0, 1, 2);
    CHECK(p2.first == doctest::Approx(1.0 / 3));
    CHECK(p2.second == doctest::Approx(1.0));
    CHECK_THROWS(qs_interval_bounds(1.0, 0.6, 1, 1));
    CHECK_THROWS(qs_interval_bounds(1.0, 0.4, 1, 3));
    CHECK_THROWS(qs_interval_bounds(0.5, 0.4, 1, 1));
    CHECK_THROWS(qs_interval_bounds(1.0, 0.4, 1, 4));
}

TEST_CASE("interval distortion bounds hold for Moebius self-maps") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked[4] = {0, 0, 0, 0};
    for (int trial = 0; trial < 100; ++trial) {
        oracle::Moebius01 h{std::exp((u(rng) - 0.5) * 3.0)};
        double K = h.qs_constant();
        for (int part = 1; part <= 3; ++part) {
            double a = part == 1 ? 0.01 + 0.49 * u(rng) : (part == 2 ? 0.01 + 0.99 * u(rng) : 0.5 + 0.49 * u(rng));
            int s = 1 + static_cast<int>(u(rng) * 3);
            auto [lo, hi] = qs_interval_bounds(K, a, s, part);
            CHECK(lo <= hi);
            double ratio;
            bool left = u(rng) < 0.5;
            if (part == 2) {
                // J then I adjacent, total length at most 1
                double jl = 1.0 / (1.0 + a) * (0.2 + 0.8 * u(rng));
                double il = a * jl;
                double x0 = (1.0 - jl - il) * u(rng);
                double c = left ? x0 + il : x0 + jl;
                ratio = left ? (h(c) - h(x0)) / (h(x0 + il + jl) - h(c)) : (h(x0 + il + jl) - h(c)) / (h(c) - h(x0));
            } else {
                // I inside J sharing an end; part 3 also needs room for the reflected interval
                double jl = (part == 3 ? 1.0 / (2 * a) : 1.0) * (0.2 + 0.8 * u(rng));
                double span = part == 3 ? 2 * a * jl : jl;
                double x0 = (1.0 - span) * u(rng);
                if (left) {
                    ratio = (h(x0 + a * jl) - h(x0)) / (h(x0 + jl) - h(x0));
                } else {
                    double end = x0 + span;
                    ratio = (h(end) - h(end - a * jl)) / (h(end) - h(end - jl));
                }
            }
            CAPTURE(part);
            CAPTURE(K);
            CAPTURE(a);
            CHECK(ratio >= lo * (1 - 1e-12));
            CHECK(ratio <= hi * (1 + 1e-12));
            ++checked[part];
        }
    }
    CHECK(checked[1] == 100);
    CHECK(checked[2] == 100);
    CHECK(checked[3] == 100);
}

TEST_CASE("Agard-Gehring angle bound") {
    std::complex<double> z0(0, 0), z1(1, 0), z2(-1, 0);
    CHECK(agard_gehring_angle(z0, z1, z2) == doctest::Approx(pi / 2));
    for (double M : {1.0, 2.0, 5.0})
        CHECK(agard_gehring_beta(M, z0, z1, z2) == doctest::Approx(2 * std::asin(phi_M(std::sin(pi / 4), M))));
    std::complex<double> a(0.3, 0.1), b(1.2, -0.4), c(-0.5, 0.9);
    CHECK(agard_gehring_beta(1.0, a, b, c) == doctest::Approx(agard_gehring_angle(a, b, c)).epsilon(1e-12));
    CHECK(agard_gehring_beta(3.0, a, b, c) < agard_gehring_angle(a, b, c));
    double near = agard_gehring_beta(2.0, z0, z1, std::complex<double>(1.0, 1e-9));
    CHECK(near < 1e-6);
    CHECK_THROWS(agard_gehring_angle(z0, z0, z1));
}

TEST_CASE("Rengel bound and the angle formula") {
    CHECK(zeta_constant() == doctest::Approx(std::sin(pi / 12)).epsilon(1e-15));
    CHECK(rengel_lower_bound(0.618, 2 * pi / 3) == doctest::Approx(std::pow(0.618, 2.0 / 3)).epsilon(1e-15));
    CHECK(rengel_lower_bound(0.618, 2 * pi / 3) == doctest::Approx(0.7256).epsilon(1e-4));
    CHECK(rengel_lower_bound(0.4, pi) == doctest::Approx(0.4).epsilon(1e-15));
    for (double a : {0.1, 0.4, 0.618})
        for (double g : {1.0, 2.0, 3.0}) CHECK(rengel_lower_bound(a, g) > a);
    auto gm = gamma_max_formula(3.0);
    CHECK(gm.valid);
    CHECK(gm.value == doctest::Approx(pi - 16 * std::pow(std::sin(pi / 12) / 4, 3)).epsilon(1e-15));
    CHECK(gamma_max_formula(1.0).valid);
    CHECK_THROWS(gamma_max_formula(0.5));
    CHECK_THROWS(rengel_lower_bound(0.5, 0.0));
}

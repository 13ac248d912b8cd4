#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "siegel/contfrac.hpp"

using namespace siegel;

namespace {

Surd sqrt_of(long d) { return Surd(0, 1, 1, d); }

const char* kTestCfs[] = {";1", ";2", ";5", ";1,2", "2;1", "3,1;2,4", ";1,1,3"};

}  // namespace

TEST_CASE("parser accepts preperiod;period notation") {
    auto g = QuadraticIrrational::parse(";1");
    CHECK(g.N() == 0);
    CHECK(g.s() == 1);
    auto h = QuadraticIrrational::parse(" 2 ; 1 ");
    CHECK(h.preperiod() == std::vector<long>{2});
    CHECK(h.period() == std::vector<long>{1});
    CHECK(h.quotient(1) == 2);
    CHECK(h.quotient(7) == 1);
    auto k = QuadraticIrrational::parse("3,1;2,4");
    CHECK(k.B() == 4);
    CHECK(k.quotient(3) == 2);
    CHECK(k.quotient(4) == 4);
    CHECK(k.quotient(5) == 2);
    CHECK(k.str() == "3,1;2,4");
}

TEST_CASE("parser rejects malformed input") {
    for (const char* bad : {"", ";", "1", "1;", ";0", ";-1", ";1,,2", ";x", "1;2;3", ";1.5", ";99999999999999999999"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(QuadraticIrrational::parse(bad), ParseError);
    }
}

TEST_CASE("exact values of simple fractions") {
    CHECK(value(QuadraticIrrational::parse(";1")) == (sqrt_of(5) - Surd(1)) / Surd(2));
    CHECK(value(QuadraticIrrational::parse(";2")) == sqrt_of(2) - Surd(1));
    Surd golden = (sqrt_of(5) - Surd(1)) / Surd(2);
    CHECK(value(QuadraticIrrational::parse("2;1")) == (Surd(2) + golden).reciprocal());
}

TEST_CASE("values agree with MPFR evaluation of the truncated fraction") {
    for (const char* text : kTestCfs) {
        CAPTURE(text);
        auto cf = QuadraticIrrational::parse(text);
        double v = value(cf).to_double();
        CHECK(v > 0.0);
        CHECK(v < 1.0);
        CHECK(v == doctest::Approx(oracle::cf_value_mpfr(cf)).epsilon(1e-15));
    }
}

TEST_CASE("convergents") {
    auto g = convergents(QuadraticIrrational::parse(";1"), 5);
    long fp[] = {1, 1, 2, 3, 5}, fq[] = {1, 2, 3, 5, 8};
    for (int i = 0; i < 5; ++i) {
        CHECK(g[i].n == i + 1);
        CHECK(g[i].p == fp[i]);
        CHECK(g[i].q == fq[i]);
    }
    auto s = convergents(QuadraticIrrational::parse(";2"), 3);
    CHECK(s[0].p == 1);
    CHECK(s[0].q == 2);
    CHECK(s[1].p == 2);
    CHECK(s[1].q == 5);
    CHECK(s[2].p == 5);
    CHECK(s[2].q == 12);
    for (const char* text : kTestCfs) {
        auto cf = QuadraticIrrational::parse(text);
        auto c = convergents(cf, 1);
        CHECK(c[0].p == 1);
        CHECK(c[0].q == cf.quotient(1));
    }
}

TEST_CASE("convergents are exact far beyond 64-bit range") {
    auto c = convergents(QuadraticIrrational::parse(";1"), 200);
    // q_n = F_{n+1}; F_201 has 42 digits.
    CHECK(c.back().q.get_str() == "453973694165307953197296969697410619233826");
    for (size_t i = 1; i < c.size(); ++i) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), c[i].p.get_mpz_t(), c[i].q.get_mpz_t());
        CHECK(g == 1);
        CHECK(c[i].q > c[i - 1].q);
    }
}

TEST_CASE("closest-return offsets shrink and alternate in sign") {
    for (const char* text : kTestCfs) {
        CAPTURE(text);
        auto cf = QuadraticIrrational::parse(text);
        auto conv = convergents(cf, 30);
        Surd prev_abs;
        int prev_sign = 0;
        for (size_t i = 0; i < conv.size(); ++i) {
            Surd off = closest_return_offset(cf, conv[i]);
            Surd mag = off.sign() < 0 ? -off : off;
            // sign of q_n theta - p_n is (-1)^n
            CHECK(off.sign() == (conv[i].n % 2 == 0 ? 1 : -1));
            if (i > 0) {
                CHECK(mag < prev_abs);
                CHECK(off.sign() == -prev_sign);
            }
            prev_abs = mag;
            prev_sign = off.sign();
        }
    }
}

TEST_CASE("alpha is the product of the periodic tails") {
    CHECK(alpha(QuadraticIrrational::parse(";1")) == (sqrt_of(5) - Surd(1)) / Surd(2));
    CHECK(alpha(QuadraticIrrational::parse(";2")) == sqrt_of(2) - Surd(1));
    auto cf = QuadraticIrrational::parse(";1,2");
    Surd a = alpha(cf);
    CHECK(a == cf.tail(1) * cf.tail(2));
    // offsets one period apart differ by the factor alpha
    auto conv = convergents(cf, 40);
    double r = closest_return_offset(cf, conv[39]).to_double() / closest_return_offset(cf, conv[37]).to_double();
    CHECK(r == doctest::Approx(a.to_double()).epsilon(1e-12));
}

TEST_CASE("alpha agrees with float products of truncated tails") {
    for (const char* text : kTestCfs) {
        CAPTURE(text);
        auto cf = QuadraticIrrational::parse(text);
        double prod = 1.0;
        for (int i = cf.N() + 1; i <= cf.N() + cf.s(); ++i) {
            double x = 0.0;
            for (int n = i + 60; n >= i; --n) x = 1.0 / (cf.quotient(n) + x);
            prod *= x;
        }
        double a = alpha(cf).to_double();
        CHECK(a == doctest::Approx(prod).epsilon(1e-12));
        CHECK(a > 0.0);
        CHECK(a < 1.0);
    }
}

TEST_CASE("tails satisfy theta_i = 1/(a_i + theta_{i+1})") {
    for (const char* text : kTestCfs) {
        auto cf = QuadraticIrrational::parse(text);
        for (int i = 1; i <= cf.N() + 2 * cf.s(); ++i)
            CHECK(cf.tail(i) == (Surd(cf.quotient(i)) + cf.tail(i + 1)).reciprocal());
    }
}

TEST_CASE("periodic return identity holds exactly") {
    for (const char* text : kTestCfs) {
        CAPTURE(text);
        auto cf = QuadraticIrrational::parse(text);
        Surd a = alpha(cf);
        int s = cf.s();
        auto conv = convergents(cf, cf.N() + 4 * s + 2);
        for (int n = cf.N() + 1; n + s <= static_cast<int>(conv.size()); ++n) {
            Surd lhs = closest_return_offset(cf, conv[n + s - 1]);
            Surd rhs = a * closest_return_offset(cf, conv[n - 1]);
            if (s % 2) rhs = -rhs;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("vartheta and vartheta_B") {
    double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(vartheta_B(1) == doctest::Approx(golden).epsilon(1e-15));
    CHECK(vartheta(QuadraticIrrational::parse(";1")) == doctest::Approx(golden).epsilon(1e-15));
    CHECK(vartheta_B(2) == doctest::Approx((std::sqrt(12.0) + 2.0) / 4.0).epsilon(1e-15));
    for (long B = 1; B < 50; ++B) CHECK(vartheta_B(B + 1) < vartheta_B(B));
    // y = 1/(1 + 1/(B + y)) at the fixed point 1/y
    for (long B : {1L, 2L, 3L, 7L}) {
        double y = 1.0 / vartheta_B(B);
        CHECK(y == doctest::Approx(1.0 / (1.0 + 1.0 / (B + y))).epsilon(1e-14));
    }
    for (const char* text : kTestCfs) {
        auto cf = QuadraticIrrational::parse(text);
        CHECK(vartheta(cf) >= vartheta_B(cf.B()) * (1 - 1e-15));
    }
    CHECK_THROWS(vartheta_B(0));
}

TEST_CASE("surd arithmetic is closed and canonical") {
    Surd x = (Surd(3) + sqrt_of(2)) / Surd(7);
    Surd y = x.reciprocal();
    CHECK(x * y == Surd(1));
    CHECK((x - x).sign() == 0);
    CHECK(x.conjugate() == (Surd(3) - sqrt_of(2)) / Surd(7));
    CHECK(Surd(0, 2, 4, 8) == sqrt_of(2));  // 2*sqrt(8)/4 = sqrt(2)
    CHECK(Surd(0, 1, 1, 9) == Surd(3));
    CHECK((sqrt_of(2) - Surd(1)).sign() > 0);
    CHECK((sqrt_of(2) - Surd(2)).sign() < 0);
    CHECK_THROWS(Surd(0).reciprocal());
}

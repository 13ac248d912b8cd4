#include "mpfr_complex.hpp"

#include <cmath>
#include <vector>

namespace siegel::detail {

void Complex::mul(const Complex& o) {
    mpfr_mul(t1.get(), re.get(), o.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), im.get(), o.im.get(), MPFR_RNDN);
    mpfr_mul(t3.get(), re.get(), o.im.get(), MPFR_RNDN);
    mpfr_mul(im.get(), im.get(), o.re.get(), MPFR_RNDN);
    mpfr_add(im.get(), im.get(), t3.get(), MPFR_RNDN);
    mpfr_sub(re.get(), t1.get(), t2.get(), MPFR_RNDN);
}

void Complex::quad_step() {
    // z - z^2/2 = (x - (x^2 - y^2)/2) + i (y - x y)
    mpfr_sqr(t1.get(), re.get(), MPFR_RNDN);
    mpfr_sqr(t2.get(), im.get(), MPFR_RNDN);
    mpfr_sub(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_div_2ui(t1.get(), t1.get(), 1, MPFR_RNDN);
    mpfr_mul(t3.get(), re.get(), im.get(), MPFR_RNDN);
    mpfr_sub(re.get(), re.get(), t1.get(), MPFR_RNDN);
    mpfr_sub(im.get(), im.get(), t3.get(), MPFR_RNDN);
}

void Complex::sqrt() {
    // With r = |w|, the larger part is sqrt((r + |x|)/2) and the other is y / (2 * larger).
    mpfr_hypot(t1.get(), re.get(), im.get(), MPFR_RNDN);
    if (mpfr_zero_p(t1.get())) return;
    bool x_neg = mpfr_signbit(re.get());
    mpfr_abs(t2.get(), re.get(), MPFR_RNDN);
    mpfr_add(t2.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_div_2ui(t2.get(), t2.get(), 1, MPFR_RNDN);
    mpfr_sqrt(t2.get(), t2.get(), MPFR_RNDN);
    mpfr_mul_2ui(t3.get(), t2.get(), 1, MPFR_RNDN);
    mpfr_div(t3.get(), im.get(), t3.get(), MPFR_RNDN);
    if (!x_neg) {
        mpfr_set(re.get(), t2.get(), MPFR_RNDN);
        mpfr_set(im.get(), t3.get(), MPFR_RNDN);
    } else {
        bool y_neg = mpfr_signbit(im.get());
        mpfr_abs(re.get(), t3.get(), MPFR_RNDN);
        if (y_neg)
            mpfr_neg(im.get(), t2.get(), MPFR_RNDN);
        else
            mpfr_set(im.get(), t2.get(), MPFR_RNDN);
    }
}

namespace {

std::string to_str(mpfr_srcptr x) {
    mpfr_exp_t e;
    size_t digits = static_cast<size_t>(std::ceil(mpfr_get_prec(x) * 0.30103)) + 2;
    std::vector<char> buf(digits + 8);
    mpfr_get_str(buf.data(), &e, 10, digits, x, MPFR_RNDN);
    std::string m(buf.data());
    if (mpfr_zero_p(x)) return "0";
    bool neg = !m.empty() && m[0] == '-';
    if (neg) m.erase(0, 1);
    return (neg ? "-0." : "0.") + m + "e" + std::to_string(static_cast<long>(e));
}

}  // namespace

std::string Complex::re_str() const { return to_str(re.get()); }
std::string Complex::im_str() const { return to_str(im.get()); }

void expi2pi(Complex& out, mpfr_srcptr x) {
    mpfr_prec_t p = out.prec() + 32;
    Real ang(p);
    mpfr_const_pi(ang.get(), MPFR_RNDN);
    mpfr_mul_2ui(ang.get(), ang.get(), 1, MPFR_RNDN);
    mpfr_mul(ang.get(), ang.get(), x, MPFR_RNDN);
    mpfr_sin_cos(out.im.get(), out.re.get(), ang.get(), MPFR_RNDN);
}

}  // namespace siegel::detail

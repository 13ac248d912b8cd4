#pragma once

#include <mpfr.h>

#include <complex>
#include <string>

namespace siegel::detail {

class Real {
public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

// Complex number with MPFR parts and in-place arithmetic that reuses scratch storage.
class Complex {
public:
    explicit Complex(mpfr_prec_t prec) : re(prec), im(prec), t1(prec), t2(prec), t3(prec) {}

    mpfr_prec_t prec() const { return mpfr_get_prec(re.get()); }
    void set(double x, double y) {
        mpfr_set_d(re.get(), x, MPFR_RNDN);
        mpfr_set_d(im.get(), y, MPFR_RNDN);
    }
    void set(const Complex& o) {
        mpfr_set(re.get(), o.re.get(), MPFR_RNDN);
        mpfr_set(im.get(), o.im.get(), MPFR_RNDN);
    }
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

    // this *= o
    void mul(const Complex& o);
    // this = this * (1 - this/2)
    void quad_step();
    // this = sqrt(this), principal branch
    void sqrt();
    void add_real(double x) { mpfr_add_d(re.get(), re.get(), x, MPFR_RNDN); }
    void neg() {
        mpfr_neg(re.get(), re.get(), MPFR_RNDN);
        mpfr_neg(im.get(), im.get(), MPFR_RNDN);
    }
    double abs2_double() const {
        double x = re.to_double(), y = im.to_double();
        return x * x + y * y;
    }
    // Decimal strings with enough digits to round-trip the precision.
    std::string re_str() const;
    std::string im_str() const;

    Real re, im;

private:
    Real t1, t2, t3;
};

// e^{2 pi i x} for x held at the complex's precision.
void expi2pi(Complex& out, mpfr_srcptr x);

}  // namespace siegel::detail

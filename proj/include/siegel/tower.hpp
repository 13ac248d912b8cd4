#pragma once

#include <string>

namespace siegel {

// Extended-range real number:
//   level 0: |x| = mag
//   level 1: |x| = exp(mag)
//   level 2: |x| = exp(exp(mag)), or exp(-exp(mag)) when recip is set.
// `exact` is cleared whenever an addition drops the smaller operand.
class TowerReal {
public:
    TowerReal() = default;
    TowerReal(double x);

    static TowerReal from_log(double log_abs, int sign = 1);
    static TowerReal from_loglog(double loglog_abs, bool recip = false, int sign = 1);
    // Builds a value from raw fields and canonicalises it.
    static TowerReal raw(int sign, int level, double mag, bool recip = false, bool exact = true);

    int sign() const { return sign_; }
    int level() const { return level_; }
    double mag() const { return mag_; }
    bool recip() const { return recip_; }
    bool exact() const { return exact_; }
    bool is_zero() const { return sign_ == 0; }

    double to_double() const;
    // ln|x| as a TowerReal (x must be nonzero).
    TowerReal log() const;
    TowerReal exp() const;
    // ln|x| as a double; throws when it is outside the double range.
    double log_abs() const;
    // log10|x| as a TowerReal (x must be nonzero).
    TowerReal log10() const;

    TowerReal operator-() const;
    TowerReal abs() const;
    TowerReal reciprocal() const;
    TowerReal pow(const TowerReal& p) const;

    friend TowerReal operator+(const TowerReal& x, const TowerReal& y);
    friend TowerReal operator-(const TowerReal& x, const TowerReal& y);
    friend TowerReal operator*(const TowerReal& x, const TowerReal& y);
    friend TowerReal operator/(const TowerReal& x, const TowerReal& y);

    // Three-way comparison of values.
    friend int compare(const TowerReal& x, const TowerReal& y);
    friend bool operator<(const TowerReal& x, const TowerReal& y) { return compare(x, y) < 0; }
    friend bool operator>(const TowerReal& x, const TowerReal& y) { return compare(x, y) > 0; }
    friend bool operator<=(const TowerReal& x, const TowerReal& y) { return compare(x, y) <= 0; }
    friend bool operator>=(const TowerReal& x, const TowerReal& y) { return compare(x, y) >= 0; }

    TowerReal with_exact(bool e) const;

    // Compact human-readable form, e.g. "1.5e+12", "10^(4.2e+07)" or "10^(-10^(5.3e+07))".
    std::string str() const;

private:
    void canonicalize();
    int sign_ = 0;
    int level_ = 0;
    double mag_ = 0.0;
    bool recip_ = false;
    bool exact_ = true;
};

// "1 - eps" rendered with eps in decimal tower form.
std::string render_one_minus(const TowerReal& eps);
std::string render_one_plus(const TowerReal& eps);

}  // namespace siegel

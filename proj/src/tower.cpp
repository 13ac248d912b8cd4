#include "siegel/tower.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace siegel {

namespace {

// |ln|x|| above this leaves level 0; ln|ln|x|| above it leaves level 1.
constexpr double kLevelLimit = 690.0;
// Operands further apart than this in the log layer collapse to the larger.
constexpr double kDominance = 40.0;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

TowerReal::TowerReal(double x) {
    if (!std::isfinite(x)) throw std::domain_error("TowerReal from non-finite double");
    sign_ = x > 0 ? 1 : (x < 0 ? -1 : 0);
    mag_ = std::fabs(x);
}

TowerReal TowerReal::raw(int sign, int level, double mag, bool recip, bool exact) {
    if (!std::isfinite(mag)) throw std::domain_error("TowerReal with non-finite magnitude");
    if (level < 0 || level > 2) throw std::domain_error("TowerReal level must be 0, 1 or 2");
    TowerReal t;
    t.sign_ = sign;
    t.level_ = level;
    t.mag_ = mag;
    t.recip_ = level == 2 && recip;
    t.exact_ = exact;
    t.canonicalize();
    return t;
}

TowerReal TowerReal::from_log(double log_abs, int sign) { return raw(sign, 1, log_abs); }

TowerReal TowerReal::from_loglog(double loglog_abs, bool recip, int sign) {
    return raw(sign, 2, loglog_abs, recip);
}

void TowerReal::canonicalize() {
    if (sign_ == 0) {
        level_ = 0;
        mag_ = 0.0;
        recip_ = false;
        return;
    }
    if (level_ == 0 && mag_ == 0.0) {
        sign_ = 0;
        return;
    }
    // Move down while the value fits the lower level, up while it does not.
    for (;;) {
        if (level_ == 2 && mag_ <= std::log(1e300)) {
            mag_ = recip_ ? -std::exp(mag_) : std::exp(mag_);
            level_ = 1;
            recip_ = false;
            continue;
        }
        if (level_ == 1 && std::fabs(mag_) <= kLevelLimit) {
            mag_ = std::exp(mag_);
            level_ = 0;
            continue;
        }
        if (level_ == 1 && std::fabs(mag_) > 1e300) {
            recip_ = mag_ < 0;
            mag_ = std::log(std::fabs(mag_));
            level_ = 2;
            continue;
        }
        if (level_ == 0 && (mag_ > 1e300 || mag_ < 1e-300)) {
            mag_ = std::log(mag_);
            level_ = 1;
            continue;
        }
        break;
    }
}

double TowerReal::to_double() const {
    switch (level_) {
        case 0: return sign_ * mag_;
        case 1: return sign_ * std::exp(mag_);
        default: return recip_ ? sign_ * 0.0 : sign_ * HUGE_VAL;
    }
}

TowerReal TowerReal::log() const {
    if (sign_ == 0) throw std::domain_error("log of zero TowerReal");
    switch (level_) {
        case 0: return TowerReal(std::log(mag_)).with_exact(exact_);
        case 1: return TowerReal(mag_).with_exact(exact_);
        default: return raw(recip_ ? -1 : 1, 1, mag_, false, exact_);
    }
}

TowerReal TowerReal::exp() const {
    int lvl = sign_ == 0 ? 0 : level_;
    switch (lvl) {
        case 0: return raw(1, 1, sign_ * mag_, false, exact_);
        case 1: return raw(1, 2, mag_, sign_ < 0, exact_);
        default:
            if (sign_ < 0 && !recip_) return TowerReal(0.0).with_exact(false);
            if (recip_) return TowerReal(1.0).with_exact(false);
            throw std::overflow_error("TowerReal exp overflows level 2");
    }
}

double TowerReal::log_abs() const {
    TowerReal l = log();
    if (l.level_ != 0) throw std::overflow_error("ln|x| exceeds double range");
    return l.sign_ * l.mag_;
}

TowerReal TowerReal::log10() const { return log() / TowerReal(std::log(10.0)); }

TowerReal TowerReal::operator-() const {
    TowerReal t = *this;
    t.sign_ = -t.sign_;
    return t;
}

TowerReal TowerReal::abs() const {
    TowerReal t = *this;
    t.sign_ = t.sign_ == 0 ? 0 : 1;
    return t;
}

TowerReal TowerReal::with_exact(bool e) const {
    TowerReal t = *this;
    t.exact_ = e;
    return t;
}

TowerReal TowerReal::reciprocal() const {
    if (sign_ == 0) throw std::domain_error("reciprocal of zero TowerReal");
    if (level_ == 0) return TowerReal(sign_ / mag_).with_exact(exact_);
    if (level_ == 1) return raw(sign_, 1, -mag_, false, exact_);
    return raw(sign_, 2, mag_, !recip_, exact_);
}

TowerReal TowerReal::pow(const TowerReal& p) const {
    if (sign_ < 0) throw std::domain_error("pow of negative TowerReal");
    if (sign_ == 0) {
        if (p.sign_ > 0) return TowerReal(0.0);
        throw std::domain_error("pow of zero with non-positive exponent");
    }
    if (level_ == 0 && p.level_ == 0) {
        double r = std::pow(mag_, p.sign_ * p.mag_);
        if (std::isfinite(r) && r > 1e-300 && r < 1e300)
            return TowerReal(r).with_exact(exact_ && p.exact_);
    }
    return (p * log()).exp();
}

TowerReal operator+(const TowerReal& x, const TowerReal& y) {
    if (x.sign_ == 0) return y.with_exact(x.exact_ && y.exact_);
    if (y.sign_ == 0) return x.with_exact(x.exact_ && y.exact_);
    bool ex = x.exact_ && y.exact_;
    if (x.level_ == 0 && y.level_ == 0) {
        double r = x.sign_ * x.mag_ + y.sign_ * y.mag_;
        if (std::isfinite(r)) return TowerReal(r).with_exact(ex);
    }
    // Order by magnitude, then work in the log layer.
    int c = compare(x.abs(), y.abs());
    const TowerReal& big = c >= 0 ? x : y;
    const TowerReal& small = c >= 0 ? y : x;
    if (c == 0 && x.sign_ != y.sign_) return TowerReal(0.0).with_exact(ex);
    TowerReal lb = big.log(), ls = small.log();
    if (lb.level_ == 0 && ls.level_ == 0) {
        double db = lb.sign_ * lb.mag_, ds = ls.sign_ * ls.mag_;
        double gap = db - ds;
        if (gap > kDominance) return big.with_exact(false);
        double t = std::exp(-gap);
        double corr = big.sign_ == small.sign_ ? std::log1p(t) : std::log1p(-t);
        return TowerReal::raw(big.sign_, 1, db + corr, false, ex);
    }
    // At least one log is itself beyond double range: the larger operand wins
    // unless the two are the same number.
    if (c == 0) return (big * TowerReal(2.0)).with_exact(ex);
    return big.with_exact(false);
}

TowerReal operator-(const TowerReal& x, const TowerReal& y) { return x + (-y); }

TowerReal operator*(const TowerReal& x, const TowerReal& y) {
    bool ex = x.exact_ && y.exact_;
    if (x.sign_ == 0 || y.sign_ == 0) return TowerReal(0.0).with_exact(ex);
    if (x.level_ == 0 && y.level_ == 0) {
        double r = x.mag_ * y.mag_;
        if (r > 1e-300 && r < 1e300) return TowerReal(x.sign_ * y.sign_ * r).with_exact(ex);
    }
    TowerReal r = (x.log() + y.log()).exp();
    r.sign_ = x.sign_ * y.sign_;
    return r.with_exact(r.exact_ && ex);
}

TowerReal operator/(const TowerReal& x, const TowerReal& y) { return x * y.reciprocal(); }

int compare(const TowerReal& x, const TowerReal& y) {
    if (x.sign_ != y.sign_) return x.sign_ < y.sign_ ? -1 : 1;
    if (x.sign_ == 0) return 0;
    int mag_cmp;
    if (x.level_ == 0 && y.level_ == 0) {
        mag_cmp = x.mag_ < y.mag_ ? -1 : (x.mag_ > y.mag_ ? 1 : 0);
    } else {
        mag_cmp = compare(x.log(), y.log());
    }
    return x.sign_ > 0 ? mag_cmp : -mag_cmp;
}

std::string TowerReal::str() const {
    if (sign_ == 0) return "0";
    std::string s = sign_ < 0 ? "-" : "";
    if (level_ == 0) return s + fmt(mag_);
    TowerReal l10 = log10();
    if (l10.level_ == 0) return s + "10^(" + fmt(l10.sign_ * l10.mag_) + ")";
    TowerReal ll10 = l10.abs().log10();
    std::string inner = "10^(" + fmt(ll10.to_double()) + ")";
    return s + "10^(" + (l10.sign_ < 0 ? "-" : "") + inner + ")";
}

std::string render_one_minus(const TowerReal& eps) {
    if (eps.sign() <= 0) return "1";
    return "1 - " + eps.str();
}

std::string render_one_plus(const TowerReal& eps) {
    if (eps.sign() <= 0) return "1";
    return "1 + " + eps.str();
}

}  // namespace siegel

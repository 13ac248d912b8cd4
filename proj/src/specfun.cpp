#include "siegel/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace siegel {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLn4 = std::log(4.0);
// Below ln r = -40 the correction to (1/2pi) ln(4/r) is under r^2 ~ 1e-35.
constexpr double kLogAsymptotic = -40.0;

}  // namespace

double agm(double a, double b) {
    for (int i = 0; i < 64; ++i) {
        double an = 0.5 * (a + b);
        double bn = std::sqrt(a * b);
        bool done = std::fabs(an - a) <= 1e-16 * std::fabs(an);
        a = an;
        b = bn;
        if (done) break;
    }
    return 0.5 * (a + b);
}

double ellipK(double r) {
    if (!(r >= 0.0 && r < 1.0)) throw std::domain_error("ellipK requires 0 <= r < 1");
    double rp = std::sqrt((1.0 - r) * (1.0 + r));
    return kPi / (2.0 * agm(1.0, rp));
}

double ellipKp(double r) {
    if (!(r > 0.0 && r <= 1.0)) throw std::domain_error("ellipKp requires 0 < r <= 1");
    return kPi / (2.0 * agm(1.0, r));
}

double mu(double r) {
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("mu requires 0 < r < 1");
    double rp = std::sqrt((1.0 - r) * (1.0 + r));
    return agm(1.0, rp) / (4.0 * agm(1.0, r));
}

double mu_of_log(double u) {
    if (!(u < 0.0)) throw std::domain_error("mu_of_log requires ln r < 0");
    if (u < kLogAsymptotic) return (kLn4 - u) / (2.0 * kPi);
    return mu(std::exp(u));
}

double mu_from_complement(double rp) {
    if (!(rp > 0.0 && rp < 1.0)) throw std::domain_error("mu_from_complement requires 0 < r' < 1");
    double r = std::sqrt((1.0 - rp) * (1.0 + rp));
    return agm(1.0, rp) / (4.0 * agm(1.0, r));
}

double dmu_dlog(double r) {
    double rp2 = (1.0 - r) * (1.0 + r);
    double k = ellipK(r);
    return -kPi / (8.0 * rp2 * k * k);
}

double log_mu_inv(double x) {
    if (!(x > 0.0)) throw std::domain_error("mu_inv requires x > 0");
    if (x < 1.0) return std::log(mu_inv(x));
    double u = kLn4 - 2.0 * kPi * x;
    if (u < kLogAsymptotic) return u;
    for (int i = 0; i < 60; ++i) {
        double r = std::exp(u);
        double du = (mu(r) - x) / dmu_dlog(r);
        u -= du;
        if (std::fabs(du) < 1e-15 * std::max(1.0, std::fabs(u))) break;
    }
    return u;
}

TowerReal log_mu_inv(const TowerReal& x) {
    if (x.sign() <= 0) throw std::domain_error("mu_inv requires x > 0");
    if (x.level() == 0) return TowerReal(log_mu_inv(x.to_double()));
    return TowerReal(kLn4) - TowerReal(2.0 * kPi) * x;
}

double mu_inv(double x) {
    if (!(x > 0.0)) throw std::domain_error("mu_inv requires x > 0");
    if (x >= 1.0) return std::exp(log_mu_inv(x));
    if (x <= 1.0 / 16.0) {
        double s = mu_inv(1.0 / (16.0 * x));
        return std::sqrt((1.0 - s) * (1.0 + s));
    }
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 52; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mu(mid) > x)
            lo = mid;
        else
            hi = mid;
    }
    double u = std::log(0.5 * (lo + hi));
    for (int i = 0; i < 4; ++i) {
        double r = std::exp(u);
        double du = (mu(r) - x) / dmu_dlog(r);
        u -= du;
        if (std::fabs(du) < 1e-16) break;
    }
    return std::exp(u);
}

double log_one_minus_mu_inv_sq(double x) {
    if (!(x > 0.0)) throw std::domain_error("mu_inv requires x > 0");
    if (x <= 1.0 / 16.0) return 2.0 * log_mu_inv(1.0 / (16.0 * x));
    double r = mu_inv(x);
    return std::log1p(-r * r);
}

double phi_M(double r, double M) {
    if (!(M >= 1.0)) throw std::domain_error("phi_M requires M >= 1");
    if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("phi_M requires 0 <= r <= 1");
    if (r == 0.0 || r == 1.0 || M == 1.0) return r;
    return mu_inv(M * mu(r));
}

TowerReal phi_M_tower(double r, const TowerReal& M) {
    if (M < TowerReal(1.0)) throw std::domain_error("phi_M requires M >= 1");
    if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("phi_M requires 0 <= r <= 1");
    if (r == 0.0 || r == 1.0) return TowerReal(r);
    return log_mu_inv(M * TowerReal(mu(r))).exp();
}

TowerReal lambda_circ_bound(const TowerReal& M, bool sharp) {
    if (M < TowerReal(1.0)) throw std::domain_error("circular distortion requires M >= 1");
    if (sharp && compare(M, TowerReal(1.0)) == 0) return TowerReal(1.0);
    return (M * TowerReal(kPi) - TowerReal(std::log(16.0))).exp();
}

double astala_eta(double t, double M, bool sharp) {
    if (!(t >= 0.0)) throw std::domain_error("astala_eta requires t >= 0");
    double lam = lambda_circ_bound(TowerReal(M), sharp).to_double();
    return std::pow(lam, 2.0 * M) * std::max(std::pow(t, M), std::pow(t, 1.0 / M));
}

}  // namespace siegel

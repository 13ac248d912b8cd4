#include "siegel/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "siegel/specfun.hpp"

namespace siegel {

namespace {

constexpr double kPi = std::numbers::pi;

// Largest m with 2^m * alpha <= 1, decided in exact arithmetic.
int floor_log2_inverse(const Surd& alpha) {
    int m = 0;
    Surd scaled = alpha * Surd(2);
    while (!(Surd(1) < scaled)) {
        ++m;
        scaled = scaled * Surd(2);
    }
    return m;
}

// Returns (upper, 1 - upper) for (1 + 1/K)^(-e).
std::pair<TowerReal, TowerReal> power_bound(const TowerReal& K, double e) {
    if (e == 0.0) return {TowerReal(1.0), TowerReal(0.0)};
    TowerReal inv = K.reciprocal();
    if (inv.level() == 0) {
        double gap = -std::expm1(-e * std::log1p(inv.to_double()));
        return {TowerReal(1.0 - gap), TowerReal(gap)};
    }
    TowerReal gap = TowerReal(e) * inv;
    return {TowerReal(1.0) - gap, gap};
}

// Returns (upper, 1 - upper) for (eps + 1)^(-power), eps = K^{-1} (1 + K)^{-(e + 1)}.
std::pair<TowerReal, TowerReal> ratio_bound(const TowerReal& K, double e, double power) {
    TowerReal eps = K.reciprocal() * (TowerReal(1.0) + K).pow(TowerReal(-(e + 1.0)));
    if (eps.level() == 0) {
        double gap = -std::expm1(-power * std::log1p(eps.to_double()));
        return {TowerReal(1.0 - gap), TowerReal(gap)};
    }
    TowerReal gap = TowerReal(power) * eps;
    return {TowerReal(1.0) - gap, gap};
}

BoundsReport evaluate(double alpha, int s, int m, ScalingCase scase, const ConstantsLedger& ledger) {
    BoundsReport r;
    r.scase = scase;
    r.alpha = alpha;
    r.s = s;
    r.vartheta = std::pow(alpha, -1.0 / s);
    r.B = ledger.B;

    // alpha^gamma = alpha * exp((1 - gamma) ln(1/alpha))
    TowerReal t = ledger.one_minus_gamma * TowerReal(-std::log(alpha));
    r.lower_excess = t.level() == 0 ? TowerReal(std::expm1(t.to_double())) : t;
    r.lower = alpha * (1.0 + r.lower_excess.to_double());

    std::pair<TowerReal, TowerReal> ub;
    switch (scase) {
        case ScalingCase::OddAtMostInvSqrt2:
            r.exponent = m;
            ub = power_bound(ledger.K, 0.5 * m);
            break;
        case ScalingCase::EvenAtMostHalf:
            r.exponent = m;
            ub = power_bound(ledger.K, m);
            break;
        case ScalingCase::OddAboveInvSqrt2:
            r.exponent = std::log2(alpha * alpha / (1.0 - alpha * alpha));
            ub = ratio_bound(ledger.K, r.exponent, 0.5);
            break;
        case ScalingCase::EvenAboveHalf:
            r.exponent = std::log2(alpha / (1.0 - alpha));
            ub = ratio_bound(ledger.K, r.exponent, 1.0);
            break;
    }
    r.upper = ub.first;
    r.one_minus_upper = ub.second;
    r.upper_vacuous = ub.second.sign() <= 0;
    return r;
}

}  // namespace

double ln_K1_closed_form(int Q) {
    double c = std::log(5.0 / 3.0) / (8.0 * kPi) * std::pow(static_cast<double>(Q), -6.0);
    return std::log(2.0) - 6.0 * std::log(16.0) + 3.0 * kPi / (2.0 * c);
}

ConstantsLedger constants_ledger(int Q, long B) {
    if (Q < 1) throw std::invalid_argument("cross-ratio bound Q must be at least 1");
    if (B < 1) throw std::invalid_argument("B must be at least 1");
    ConstantsLedger L;
    L.Q = Q;
    L.B = B;
    L.c = std::log(5.0 / 3.0) / (8.0 * kPi) * std::pow(static_cast<double>(Q), -6.0);
    L.ln_K1 = std::log(2.0) - 6.0 * log_one_minus_mu_inv_sq(L.c);
    L.K1 = TowerReal::from_log(L.ln_K1);

    TowerReal two(2.0), one(1.0);
    TowerReal K1_pow = TowerReal(static_cast<double>(B + 1)) * L.K1.log();
    L.K2 = std::max(two, K1_pow.exp(), [](const TowerReal& x, const TowerReal& y) { return x < y; });
    L.M = two * L.K2 - one;

    // ln K = 2M (pi M - ln 16) + M ln K2
    TowerReal ln_lambda = L.M * TowerReal(kPi) - TowerReal(std::log(16.0));
    TowerReal lnK = two * L.M * ln_lambda + L.M * L.K2.log();
    L.K = lnK.exp();

    // 1 - gamma = (16/pi) zeta16^{M/2}, zeta16 = sqrt2 (sqrt3 - 1)/16
    double zeta16 = std::sqrt(2.0) * (std::sqrt(3.0) - 1.0) / 16.0;
    TowerReal ln_gap = TowerReal(std::log(16.0 / kPi)) + L.M * TowerReal(0.5 * std::log(zeta16));
    L.one_minus_gamma = ln_gap.exp();
    return L;
}

std::string case_tag(ScalingCase c) {
    switch (c) {
        case ScalingCase::OddAboveInvSqrt2: return "odd-period/alpha>1/sqrt2";
        case ScalingCase::OddAtMostInvSqrt2: return "odd-period/alpha<=1/sqrt2";
        case ScalingCase::EvenAboveHalf: return "even-period/alpha>1/2";
        case ScalingCase::EvenAtMostHalf: return "even-period/alpha<=1/2";
    }
    return "unknown";
}

ScalingCase select_case(double alpha, int s) {
    if (s % 2 == 1)
        return alpha * alpha > 0.5 ? ScalingCase::OddAboveInvSqrt2 : ScalingCase::OddAtMostInvSqrt2;
    return alpha > 0.5 ? ScalingCase::EvenAboveHalf : ScalingCase::EvenAtMostHalf;
}

BoundsReport scaling_bounds(const QuadraticIrrational& cf, const ConstantsLedger& ledger) {
    if (ledger.B < cf.B())
        throw std::invalid_argument("ledger B is smaller than the largest partial quotient");
    Surd a = alpha(cf);
    int s = cf.s();
    ScalingCase scase;
    if (s % 2 == 1)
        scase = Surd::rational(1, 2) < a * a ? ScalingCase::OddAboveInvSqrt2 : ScalingCase::OddAtMostInvSqrt2;
    else
        scase = Surd::rational(1, 2) < a ? ScalingCase::EvenAboveHalf : ScalingCase::EvenAtMostHalf;
    int m = floor_log2_inverse(a);
    return evaluate(a.to_double(), s, m, scase, ledger);
}

BoundsReport scaling_bounds(double alpha, int s, const ConstantsLedger& ledger) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (s < 1) throw std::invalid_argument("period must be at least 1");
    int m = static_cast<int>(std::floor(-std::log2(alpha)));
    return evaluate(alpha, s, m, select_case(alpha, s), ledger);
}

UniformConstants uniform_constants(long B, int s, ScalingCase scase, const ConstantsLedger& ledger) {
    if (B < 1 || s < 1) throw std::invalid_argument("B and s must be at least 1");
    double vB = vartheta_B(B);
    TowerReal one(1.0);
    TowerReal big_beta = one + ledger.K;                // 1 + K
    TowerReal small_beta = one + ledger.K.reciprocal();  // 1 + 1/K
    UniformConstants out;
    double e = 0.0;
    switch (scase) {
        case ScalingCase::OddAboveInvSqrt2:
            e = 0.5 * std::log2(vB * vB - 1.0);
            out.C2 = (ledger.K * big_beta).pow(TowerReal(0.5));
            out.delta2 = big_beta.pow(TowerReal(-e));
            break;
        case ScalingCase::EvenAboveHalf:
            e = std::log2(vB - 1.0);
            out.C2 = ledger.K * big_beta;
            out.delta2 = big_beta.pow(TowerReal(-e));
            break;
        case ScalingCase::OddAtMostInvSqrt2:
            e = 0.5 * std::floor(std::log2(vB));
            out.C2 = one;
            out.delta2 = e == 0.0 ? one : small_beta.pow(TowerReal(-e));
            break;
        case ScalingCase::EvenAtMostHalf:
            e = std::floor(std::log2(vB));
            out.C2 = one;
            out.delta2 = e == 0.0 ? one : small_beta.pow(TowerReal(-e));
            break;
    }
    out.bound = out.C2 * out.delta2.pow(TowerReal(static_cast<double>(s)));
    out.vacuous = out.delta2 >= one;
    return out;
}

std::pair<double, double> bh_bounds(const Surd& alpha) {
    if (!(Surd(0) < alpha && alpha < Surd(1))) throw std::invalid_argument("alpha must lie in (0, 1)");
    return {alpha.to_double(), 1.0};
}

bool triangle_criterion(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    return cylinder_modulus(alpha) > 0.5;
}

double cylinder_modulus(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    return -kPi / std::log(alpha * alpha);
}

std::pair<double, double> qs_interval_bounds(double K, double alpha, int s, int part) {
    if (!(K >= 1.0)) throw std::invalid_argument("quasisymmetric constant must be at least 1");
    if (s < 1) throw std::invalid_argument("s must be at least 1");
    double lo_step = 1.0 / (1.0 + K), hi_step = 1.0 / (1.0 + 1.0 / K);
    switch (part) {
        case 1: {
            if (!(alpha > 0.0 && alpha <= 0.5)) throw std::invalid_argument("part 1 needs 0 < alpha <= 1/2");
            double m = std::floor(-std::log2(alpha));
            return {std::pow(lo_step, m + 1.0), std::pow(hi_step, m)};
        }
        case 2: {
            if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("part 2 needs 0 < alpha <= 1");
            double m = std::floor(std::log2((1.0 + alpha) / alpha));
            return {1.0 / (std::pow(1.0 + K, m + 1.0) - 1.0), 1.0 / (std::pow(1.0 + 1.0 / K, m) - 1.0)};
        }
        case 3: {
            if (!(alpha > 0.5 && alpha < 1.0)) throw std::invalid_argument("part 3 needs 1/2 < alpha < 1");
            double e = std::log2(alpha / (1.0 - alpha));
            double lower = 1.0 / (K * std::pow(hi_step, std::floor(e)) + 1.0);
            double upper = 1.0 / (std::pow(lo_step, e + 1.0) / K + 1.0);
            return {lower, upper};
        }
        default: throw std::invalid_argument("part must be 1, 2 or 3");
    }
}

double agard_gehring_angle(std::complex<double> z0, std::complex<double> z1, std::complex<double> z2) {
    if (z0 == z1 || z0 == z2 || z1 == z2) throw std::invalid_argument("angle points must be distinct");
    double ratio = std::abs(z1 - z2) / (std::abs(z1 - z0) + std::abs(z2 - z0));
    return std::asin(std::min(1.0, ratio));
}

double agard_gehring_beta(double M, std::complex<double> z0, std::complex<double> z1,
                          std::complex<double> z2) {
    double theta = agard_gehring_angle(z0, z1, z2);
    return 2.0 * std::asin(phi_M(std::sin(theta / 2.0), M));
}

double zeta_constant() { return std::sqrt(2.0) * (std::sqrt(3.0) - 1.0) / 4.0; }

GammaMax gamma_max_formula(double M) {
    if (!(M >= 1.0)) throw std::invalid_argument("gamma_max needs M >= 1");
    double v = kPi - 16.0 * std::pow(zeta_constant() / 4.0, M);
    return {v, v > 0.0};
}

double rengel_lower_bound(double alpha, double gamma_max) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (!(gamma_max > 0.0 && gamma_max <= kPi)) throw std::invalid_argument("gamma_max must lie in (0, pi]");
    return std::pow(alpha, gamma_max / kPi);
}

}  // namespace siegel

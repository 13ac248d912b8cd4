#pragma once

#include <complex>
#include <string>
#include <utility>

#include "siegel/contfrac.hpp"
#include "siegel/tower.hpp"

namespace siegel {

struct ConstantsLedger {
    int Q = 8;
    long B = 1;
    double c = 0.0;     // argument of mu^{-1} in K1
    double ln_K1 = 0.0;
    TowerReal K1, K2, M, K;
    TowerReal one_minus_gamma;
};

ConstantsLedger constants_ledger(int Q, long B);

// Closed form of ln K1 through the asymptotic dual identity.
double ln_K1_closed_form(int Q);

enum class ScalingCase { OddAboveInvSqrt2, OddAtMostInvSqrt2, EvenAboveHalf, EvenAtMostHalf };

std::string case_tag(ScalingCase c);
ScalingCase select_case(double alpha, int s);

struct BoundsReport {
    ScalingCase scase = ScalingCase::OddAtMostInvSqrt2;
    double alpha = 0.0;
    int s = 1;
    double vartheta = 0.0;
    long B = 1;
    // [s log2 vartheta] for the small-alpha cases, log2 ratio exponent otherwise.
    double exponent = 0.0;
    double lower = 0.0;          // alpha^gamma rounded to double
    TowerReal lower_excess;      // alpha^gamma / alpha - 1
    TowerReal upper;
    TowerReal one_minus_upper;
    bool upper_vacuous = false;
    std::string note = "asymptotic: C(n) -> 1 as n -> infinity, reported at the limit";
};

BoundsReport scaling_bounds(const QuadraticIrrational& cf, const ConstantsLedger& ledger);
// Entry point for a bare (alpha, s) pair; the continued-fraction form never reaches the
// large-alpha cases.
BoundsReport scaling_bounds(double alpha, int s, const ConstantsLedger& ledger);

struct UniformConstants {
    TowerReal C2;
    TowerReal delta2;
    TowerReal bound;  // C2 * delta2^s
    bool vacuous = false;
};

UniformConstants uniform_constants(long B, int s, ScalingCase scase, const ConstantsLedger& ledger);

std::pair<double, double> bh_bounds(const Surd& alpha);
bool triangle_criterion(double alpha);
double cylinder_modulus(double alpha);

// Part 1: I inside J sharing an endpoint, alpha <= 1/2.
// Part 2: I, J adjacent, 0 < alpha <= 1.
// Part 3: I inside J sharing an endpoint, 1/2 < alpha < 1.
std::pair<double, double> qs_interval_bounds(double K, double alpha, int s, int part);

double agard_gehring_angle(std::complex<double> z0, std::complex<double> z1, std::complex<double> z2);
double agard_gehring_beta(double M, std::complex<double> z0, std::complex<double> z1,
                          std::complex<double> z2);

struct GammaMax {
    double value;
    bool valid;
};

double zeta_constant();
GammaMax gamma_max_formula(double M);
double rengel_lower_bound(double alpha, double gamma_max);

}  // namespace siegel

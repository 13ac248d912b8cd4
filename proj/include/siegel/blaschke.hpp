#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "siegel/contfrac.hpp"
#include "siegel/tower.hpp"

namespace siegel {

// Degree-one lift of x -> Q^t(e^{2 pi i x}), Q^t(z) = e^{2 pi i t} z^2 (z - 3)/(1 - 3z).
// rigid = true replaces the map with the rotation x -> x + t.
struct CircleLift {
    double t = 0.0;
    bool rigid = false;
};

double lift_eval(const CircleLift& lift, double x);
double lift_derivative(const CircleLift& lift, double x);
// g^{-1}(y) by bisection.
double lift_inverse(const CircleLift& lift, double y);

// Lift obtained by following arg Q^t(e^{2 pi i s}) continuously from s = 0 to s = x.
// Independent of the closed form used by lift_eval; intended for cross-checks.
double lift_by_tracking(double t, double x, int steps_per_unit = 4096);

struct RotationEstimate {
    double rho;
    double err;  // |rho - true rotation number| <= err
};

RotationEstimate rotation_number(const CircleLift& lift, long n_iter, double x0 = 0.0);

// g^n(x) returned as integer part + fractional part to keep precision over long orbits.
struct LiftOrbitPoint {
    long whole;
    double frac;
    double value() const { return static_cast<double>(whole) + frac; }
};
LiftOrbitPoint lift_iterate(const CircleLift& lift, double x, long n);

struct SolveResult {
    double t = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    double enclosure = 0.0;  // |rho(t) - theta| < enclosure
    int convergent_index = 0;
    int iterations = 0;
};

// Bisection in t until the convergent sign test confines rho(t) to within tol of theta.
SolveResult solve_t(const QuadraticIrrational& cf, double tol = 1e-10, int max_bisections = 200);

// +1: rho(t) < theta (increase t); -1: rho(t) > theta; 0: rho(t) within 1/(q_n q_{n+1}) of theta
// for every convergent index up to n_max.
int rotation_side(const CircleLift& lift, const QuadraticIrrational& cf, int n_max);

double cross_ratio(double a, double b, double c, double d);
double chi_modulus(double a, double b, double c, double d);

struct Quadruple {
    double a, b, c, d;
};

struct XRatioResult {
    double product = 1.0;
    bool pass = true;
    int skipped = 0;
};

XRatioResult xratio_inequality_check(const CircleLift& lift, const std::vector<Quadruple>& config,
                                     double bound = 8.0);

int intersection_number(const std::vector<Quadruple>& config);
double xratio_product_bound(double Q, int k);

// Distance from [a, d] to the nearest integer (critical point of the lift).
double critical_distance(const Quadruple& q);

struct SamplerOptions {
    int max_quadruples = 6;
    double min_length = 1e-3;
    double max_length = 0.25;
    bool force_critical = false;   // first quadruple straddles an integer
    double noncritical_ratio = 0;  // > 0: every interval at least this many lengths from the integers
    int max_tries = 1000;
};

std::vector<Quadruple> sample_allowable(std::mt19937_64& rng, const SamplerOptions& opts);
bool is_allowable(const std::vector<Quadruple>& config);

struct CommensurabilityReport {
    double max_ratio = 1.0;
    double min_ratio = 1.0;
    bool signs_ok = true;
    bool within_K1 = true;
};

CommensurabilityReport commensurability_check(const CircleLift& lift, const QuadraticIrrational& cf, int n,
                                              const std::vector<double>& x_samples, const TowerReal& K1);

}  // namespace siegel

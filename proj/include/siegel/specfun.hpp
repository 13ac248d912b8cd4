#pragma once

#include "siegel/tower.hpp"

namespace siegel {

double agm(double a, double b);

// Complete elliptic integral of the first kind with modulus r, and its complement K(r').
double ellipK(double r);
double ellipKp(double r);

// Grotzsch ring modulus normalised as (1/4) K'(r)/K(r).
double mu(double r);
// mu expressed through u = ln r; valid far below double underflow of r.
double mu_of_log(double u);
// mu(r) when only the complementary modulus r' = sqrt(1 - r^2) is known accurately.
double mu_from_complement(double rp);
// Derivative of mu with respect to ln r.
double dmu_dlog(double r);

double mu_inv(double x);
// ln(mu^{-1}(x)), accurate for arguments where mu^{-1}(x) underflows.
double log_mu_inv(double x);
TowerReal log_mu_inv(const TowerReal& x);
// ln(1 - mu^{-1}(x)^2), accurate for small x where mu^{-1}(x) rounds to 1.
double log_one_minus_mu_inv_sq(double x);

double phi_M(double r, double M);
// phi_M as a TowerReal; stays meaningful when M * mu(r) is huge.
TowerReal phi_M_tower(double r, const TowerReal& M);

// Upper bound exp(pi M)/16 for the circular distortion; sharp = true returns the exact value 1 at M = 1.
TowerReal lambda_circ_bound(const TowerReal& M, bool sharp = false);

// lambda^{2M} max(t^M, t^{1/M}) with lambda = lambda_circ_bound(M, sharp).
double astala_eta(double t, double M, bool sharp = false);

}  // namespace siegel

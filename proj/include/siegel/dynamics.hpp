#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "siegel/contfrac.hpp"

namespace siegel {

// Raised when the orbit leaves the escape disk or a precision check fails.
struct PrecisionError : std::runtime_error {
    PrecisionError(const std::string& what, int n) : std::runtime_error(what), failing_n(n) {}
    int failing_n;
};

// Raised when the two backward preimages cannot be told apart.
struct AmbiguityError : std::runtime_error {
    AmbiguityError(const std::string& what, long step) : std::runtime_error(what), step(step) {}
    long step;
};

enum class Model { Polynomial, Rotation };

struct ReturnPoint {
    int n = 0;
    mpz_class q;
    std::complex<double> z;     // z_{q_n} rounded to double
    std::complex<double> w;     // z_{q_n} - 1, formed at full precision
    std::string z_re, z_im;     // full-precision decimal parts
    double dist = 0.0;          // |z - 1|
    double drift = 0.0;         // growth of max|z| beyond the initial envelope
    double escalation = -1.0;   // relative change under doubled precision, -1 if not checked
};

struct ReturnSequence {
    std::string cf;
    int s = 1;
    int bits = 212;
    double escape_radius = 4.0;
    bool backward = false;
    Model model = Model::Polynomial;
    std::vector<ReturnPoint> points;
};

ReturnSequence iterate_returns(const QuadraticIrrational& cf, int n_max, int bits = 212,
                               double escape_radius = 4.0, Model model = Model::Polynomial);

// Runs again at twice the precision and records the relative change of every z_{q_n}
// (relative to |z_{q_n} - 1|); throws PrecisionError when it exceeds tol.
void escalate_precision(ReturnSequence& seq, const QuadraticIrrational& cf, double tol = 1e-10);

struct BackwardOptions {
    // Length of the forward orbit used to predict boundary positions;
    // 0 selects max(20 * q_{n_max}, 1e5).
    long table_size = 0;
    double ambiguity_tol = 1e-3;
};

ReturnSequence backward_returns(const QuadraticIrrational& cf, int n_max, int bits = 212,
                                Model model = Model::Polynomial, BackwardOptions opts = {});

// Preimage of w under the polynomial closer to `prediction`; throws AmbiguityError when the two
// preimages are nearly equidistant (relative to |root - 1|).
std::complex<double> backward_step(std::complex<double> w, double theta,
                                   std::complex<double> prediction, double tol = 1e-3);

struct ScalingEstimate {
    int n = 0;
    std::complex<double> lambda_hat;  // w_{n+s} / w_n, denominator conjugated for odd s
    std::complex<double> lambda;      // three-point form
    double abs_lambda_hat = 0.0;
    double abs_lambda = 0.0;
    double gap = 0.0;                 // |lambda - lambda_hat|
    double cauchy = -1.0;             // |lambda_hat_n - lambda_hat_{n-1}|, -1 for the first
};

// conjugate = false computes the unconjugated ratios (used to show they fail for odd s).
std::vector<ScalingEstimate> scaling_sequence(const ReturnSequence& fwd, int s, bool conjugate = true);

// First index from which alpha < |lambda_hat_n| < 1 holds for every later estimate; -1 if none.
int bh_transient(const std::vector<ScalingEstimate>& est, double alpha);

struct Direction {
    double degrees = 0.0;
    double error = 0.0;
};

struct AngleReport {
    Direction forward_odd, forward_even, backward_odd, backward_even;
    Direction forward_separation, backward_separation;
};

// Extrapolated limit of a geometrically converging sequence (Aitken on the last terms).
Direction extrapolate_limit(const std::vector<double>& seq);

AngleReport return_angles(const ReturnSequence& fwd, const ReturnSequence& bwd);

struct StripWindow {
    double top = 0.0;            // upper edge in ln|z - 1|
    double gamma_min = 0.0;
    double gamma_max = 0.0;
    int bins_used = 0;
};

struct StripReport {
    double gamma_min = 0.0;      // radians
    double gamma_max = 0.0;
    long points_in_window = 0;
    long orbit_length = 0;
    std::vector<StripWindow> windows;
};

struct StripOptions {
    double r0 = 0.1;
    long target_points = 20000;
    long max_iterations = 20000000;
    long window_cap = 1000000;
    int bins_per_width = 24;
    int min_per_strand = 3;
};

// Dense boundary samples z_k, k = 0..count-1, of the forward orbit of 1 (double precision).
std::vector<std::complex<double>> dense_orbit(double theta, long count, Model model = Model::Polynomial);

StripReport strip_heights(const std::vector<std::complex<double>>& near_one, double abs_lambda,
                          const StripOptions& opts = {});
StripReport strip_heights(double theta, double abs_lambda, Model model = Model::Polynomial,
                          const StripOptions& opts = {});

struct QSEstimate {
    double K = 1.0;
    std::vector<std::pair<double, double>> per_scale;  // (delta, max distortion)
};

// Symmetric-triple distortion of the boundary parametrised by rotation angle.
QSEstimate empirical_qs_constant(const QuadraticIrrational& cf, const std::vector<std::complex<double>>& orbit,
                                 int scales, long samples_per_scale);

}  // namespace siegel

#include "siegel/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "siegel/specfun.hpp"

namespace siegel {

namespace {

constexpr double kPi = std::numbers::pi;

std::complex<double> blaschke(double t, std::complex<double> z) {
    return std::polar(1.0, 2.0 * kPi * t) * z * z * (z - 3.0) / (1.0 - 3.0 * z);
}

}  // namespace

double lift_eval(const CircleLift& lift, double x) {
    if (lift.rigid) return x + lift.t;
    double s = std::sin(2.0 * kPi * x), c = std::cos(2.0 * kPi * x);
    return lift.t + x + std::atan2(-s / 3.0, 1.0 - c / 3.0) / kPi;
}

double lift_derivative(const CircleLift& lift, double x) {
    if (lift.rigid) return 1.0;
    // d/dx atan2(-s/3, 1 - c/3) = 2 pi (1/3)(1/3 - c) / ((1 - c/3)^2 + s^2/9)
    double s = std::sin(2.0 * kPi * x), c = std::cos(2.0 * kPi * x);
    double den = (1.0 - c / 3.0) * (1.0 - c / 3.0) + s * s / 9.0;
    return 1.0 + 2.0 * (1.0 / 3.0) * (1.0 / 3.0 - c) / den;
}

double lift_inverse(const CircleLift& lift, double y) {
    // g(x) - x lies within t + [-1/2, 1/2]
    double lo = y - lift.t - 1.0, hi = y - lift.t + 1.0;
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (lift_eval(lift, mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double lift_by_tracking(double t, double x, int steps_per_unit) {
    int steps = std::max(1, static_cast<int>(std::ceil(std::fabs(x) * steps_per_unit)));
    std::complex<double> prev = blaschke(t, 1.0);
    double acc = std::arg(prev) / (2.0 * kPi);
    if (acc < t - 0.5) acc += 1.0;
    if (acc > t + 0.5) acc -= 1.0;
    for (int i = 1; i <= steps; ++i) {
        double s = x * i / steps;
        std::complex<double> cur = blaschke(t, std::polar(1.0, 2.0 * kPi * s));
        double step = std::arg(cur / prev) / (2.0 * kPi);
        if (std::fabs(step) > 0.25) throw std::runtime_error("argument tracking step too coarse");
        acc += step;
        prev = cur;
    }
    return acc;
}

LiftOrbitPoint lift_iterate(const CircleLift& lift, double x, long n) {
    long whole = static_cast<long>(std::floor(x));
    double fr = x - whole;
    for (long i = 0; i < n; ++i) {
        double y = lift_eval(lift, fr);
        double fl = std::floor(y);
        whole += static_cast<long>(fl);
        fr = y - fl;
    }
    return {whole, fr};
}

RotationEstimate rotation_number(const CircleLift& lift, long n_iter, double x0) {
    if (n_iter < 1) throw std::invalid_argument("n_iter must be positive");
    LiftOrbitPoint p = lift_iterate(lift, x0, n_iter);
    long x0_whole = static_cast<long>(std::floor(x0));
    double disp = static_cast<double>(p.whole - x0_whole) + (p.frac - (x0 - x0_whole));
    return {disp / static_cast<double>(n_iter), 1.0 / static_cast<double>(n_iter)};
}

int rotation_side(const CircleLift& lift, const QuadraticIrrational& cf, int n_max) {
    std::vector<Convergent> conv = convergents(cf, n_max);
    LiftOrbitPoint p{0, 0.0};
    long k = 0;
    for (const Convergent& c : conv) {
        long q = c.q.get_si();
        p = lift_iterate(lift, p.value(), q - k);
        k = q;
        double D = static_cast<double>(p.whole - c.p.get_si()) + p.frac;
        int want = closest_return_offset(cf, c).sign();
        if (D * want <= 0.0) return want > 0 ? 1 : -1;
    }
    return 0;
}

SolveResult solve_t(const QuadraticIrrational& cf, double tol, int max_bisections) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    // Smallest n with 1/(q_n q_{n+1}) <= tol.
    std::vector<Convergent> conv = convergents(cf, 200);
    int n_max = 0;
    for (size_t i = 0; i + 1 < conv.size(); ++i) {
        mpz_class prod = conv[i].q * conv[i + 1].q;
        if (prod.get_d() * tol >= 1.0) {
            n_max = static_cast<int>(i + 1);
            break;
        }
    }
    if (n_max == 0 || conv[n_max].q > 100000000) throw std::invalid_argument("tolerance needs too many iterations");
    SolveResult r;
    r.convergent_index = n_max;
    r.enclosure = 1.0 / (conv[n_max - 1].q.get_d() * conv[n_max].q.get_d());
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < max_bisections; ++it) {
        double mid = 0.5 * (lo + hi);
        r.iterations = it + 1;
        int side = rotation_side(CircleLift{mid, false}, cf, n_max);
        if (side == 0) {
            r.t = mid;
            r.t_lo = lo;
            r.t_hi = hi;
            return r;
        }
        if (side > 0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-17) break;
    }
    throw std::runtime_error("solve_t: bisection budget exhausted; best bracket [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
}

double cross_ratio(double a, double b, double c, double d) {
    double num = std::fabs(a - b) * std::fabs(c - d);
    if (num == 0.0) return 0.0;
    double den = std::fabs(a - c) * std::fabs(d - b);
    if (den == 0.0) throw std::invalid_argument("cross ratio with coincident a, c or b, d");
    return num / den;
}

double chi_modulus(double a, double b, double c, double d) {
    if (a == b || c == d) return 0.0;
    double cr = cross_ratio(a, b, c, d);
    double root = std::sqrt(cr);
    double k = (1.0 - root) / (1.0 + root);
    double kp = 2.0 * std::sqrt(root) / (1.0 + root);
    // K'(k) / (2 K(k)) with K(k) = pi/(2 agm(1, k')), K'(k) = pi/(2 agm(1, k))
    return agm(1.0, kp) / (2.0 * agm(1.0, k));
}

XRatioResult xratio_inequality_check(const CircleLift& lift, const std::vector<Quadruple>& config, double bound) {
    XRatioResult r;
    for (const Quadruple& q : config) {
        double base = chi_modulus(q.a, q.b, q.c, q.d);
        if (base == 0.0) {
            ++r.skipped;
            continue;
        }
        double img = chi_modulus(lift_eval(lift, q.a), lift_eval(lift, q.b), lift_eval(lift, q.c),
                                 lift_eval(lift, q.d));
        r.product *= img / base;
    }
    r.pass = r.product <= bound * (1.0 + 1e-6);
    return r;
}

int intersection_number(const std::vector<Quadruple>& config) {
    // Sweep over [0, 1) with intervals reduced mod 1; ends sort before starts.
    std::vector<std::pair<double, int>> events;
    for (const Quadruple& q : config) {
        double len = q.d - q.a;
        if (len <= 0.0) continue;
        if (len >= 1.0) throw std::invalid_argument("interval longer than the circle");
        double s = q.a - std::floor(q.a), e = s + len;
        if (e <= 1.0) {
            events.push_back({s, +1});
            events.push_back({e, -1});
        } else {
            events.push_back({s, +1});
            events.push_back({1.0, -1});
            events.push_back({0.0, +1});
            events.push_back({e - 1.0, -1});
        }
    }
    std::sort(events.begin(), events.end());
    int cur = 0, best = 0;
    for (const auto& ev : events) {
        cur += ev.second;
        best = std::max(best, cur);
    }
    return best;
}

double xratio_product_bound(double Q, int k) { return std::pow(Q, 2.0 * k); }

double critical_distance(const Quadruple& q) {
    double fl = std::floor(q.a);
    if (q.d > fl + 1.0) return 0.0;
    return std::min(q.a - fl, fl + 1.0 - q.d);
}

bool is_allowable(const std::vector<Quadruple>& config) {
    for (const Quadruple& q : config) {
        if (!(q.a <= q.b && q.b <= q.c && q.c <= q.d)) return false;
        if (!(q.d - q.a < 1.0)) return false;
    }
    return intersection_number(config) <= 1;
}

std::vector<Quadruple> sample_allowable(std::mt19937_64& rng, const SamplerOptions& opts) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> count(1, opts.max_quadruples);
    double llo = std::log(opts.min_length), lhi = std::log(opts.max_length);
    int n = count(rng);
    std::vector<Quadruple> out;
    for (int tries = 0; static_cast<int>(out.size()) < n && tries < opts.max_tries; ++tries) {
        double len = std::exp(llo + (lhi - llo) * unit(rng));
        bool crit = opts.force_critical && out.empty();
        double a = crit ? -len * unit(rng) : unit(rng);
        Quadruple q{a, 0.0, 0.0, a + len};
        if (!crit && critical_distance(q) <= 0.0) continue;
        if (opts.noncritical_ratio > 0.0 && critical_distance(q) < opts.noncritical_ratio * len) continue;
        std::vector<Quadruple> trial = out;
        trial.push_back(q);
        if (intersection_number(trial) > 1) continue;
        double u = a + len * unit(rng), v = a + len * unit(rng);
        q.b = std::min(u, v);
        q.c = std::max(u, v);
        out.push_back(q);
    }
    return out;
}

CommensurabilityReport commensurability_check(const CircleLift& lift, const QuadraticIrrational& cf, int n,
                                              const std::vector<double>& x_samples, const TowerReal& K1) {
    std::vector<Convergent> conv = convergents(cf, n);
    const Convergent& c = conv.back();
    long q = c.q.get_si(), p = c.p.get_si();
    int want = closest_return_offset(cf, c).sign();
    CommensurabilityReport rep;
    rep.max_ratio = 0.0;
    rep.min_ratio = HUGE_VAL;
    for (double x : x_samples) {
        double fwd = lift_iterate(lift, x, q).value() - static_cast<double>(p) - x;
        double y = x;
        for (long i = 0; i < q; ++i) y = lift_inverse(lift, y);
        double bwd = y + static_cast<double>(p) - x;
        if (fwd * want <= 0.0) rep.signs_ok = false;
        double ratio = std::fabs(bwd) / std::fabs(fwd);
        rep.max_ratio = std::max(rep.max_ratio, std::max(ratio, 1.0 / ratio));
        rep.min_ratio = std::min(rep.min_ratio, ratio);
    }
    rep.within_K1 = TowerReal(rep.max_ratio) <= K1;
    return rep;
}

}  // namespace siegel

#include "siegel/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mpfr_complex.hpp"

namespace siegel {

namespace {

using detail::Complex;
using detail::Real;

constexpr double kPi = std::numbers::pi;
constexpr double kMaxIterations = 4e9;
constexpr long kEnvelopeSteps = 1000;

unsigned long checked_q(const mpz_class& q) {
    if (q > kMaxIterations) throw std::invalid_argument("q_n exceeds the iteration budget; lower n_max");
    return q.get_ui();
}

void fill_point(ReturnPoint& pt, const Complex& z, int prec) {
    pt.z = z.to_complex();
    pt.z_re = z.re_str();
    pt.z_im = z.im_str();
    Real wre(prec);
    mpfr_sub_ui(wre.get(), z.re.get(), 1, MPFR_RNDN);
    pt.w = {wre.to_double(), z.im.to_double()};
    pt.dist = std::abs(pt.w);
}

// e^{2 pi i x} for an exact surd x, at the given precision.
void surd_rotation(Complex& out, const Surd& x, int bits) {
    Real xr(bits + 64);
    x.to_mpfr(xr.get());
    detail::expi2pi(out, xr.get());
}

double frac(double x) { return x - std::floor(x); }

}  // namespace

ReturnSequence iterate_returns(const QuadraticIrrational& cf, int n_max, int bits, double escape_radius,
                               Model model) {
    if (bits < 64) throw std::invalid_argument("precision must be at least 64 bits");
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    if (!(escape_radius > 0.0)) throw std::invalid_argument("escape radius must be positive");
    ReturnSequence seq;
    seq.cf = cf.str();
    seq.s = cf.s();
    seq.bits = bits;
    seq.escape_radius = escape_radius;
    seq.model = model;
    std::vector<Convergent> conv = convergents(cf, n_max);

    if (model == Model::Rotation) {
        for (const Convergent& c : conv) {
            Complex z(bits);
            surd_rotation(z, closest_return_offset(cf, c), bits);
            ReturnPoint pt;
            pt.n = c.n;
            pt.q = c.q;
            fill_point(pt, z, bits);
            seq.points.push_back(pt);
        }
        return seq;
    }

    Complex e(bits), z(bits);
    surd_rotation(e, value(cf), bits);
    z.set(1.0, 0.0);
    double r2 = escape_radius * escape_radius;
    double envelope = 1.0, running_max = 1.0;
    unsigned long k = 0;
    for (const Convergent& c : conv) {
        unsigned long target = checked_q(c.q);
        for (; k < target; ++k) {
            z.quad_step();
            z.mul(e);
            double a2 = z.abs2_double();
            if (!(a2 <= r2)) {
                std::ostringstream os;
                os << "orbit left |z| <= " << escape_radius << " at iteration " << k + 1 << " (before q_" << c.n
                   << "); precision insufficient";
                throw PrecisionError(os.str(), c.n);
            }
            double a = std::sqrt(a2);
            running_max = std::max(running_max, a);
            if (static_cast<long>(k) < kEnvelopeSteps) envelope = running_max;
        }
        ReturnPoint pt;
        pt.n = c.n;
        pt.q = c.q;
        fill_point(pt, z, bits);
        pt.drift = std::max(0.0, running_max - envelope);
        if (pt.dist == 0.0) throw PrecisionError("orbit returned exactly to the critical point", c.n);
        seq.points.push_back(pt);
    }
    return seq;
}

void escalate_precision(ReturnSequence& seq, const QuadraticIrrational& cf, double tol) {
    int n_max = static_cast<int>(seq.points.size());
    ReturnSequence hi = seq.backward ? backward_returns(cf, n_max, 2 * seq.bits, seq.model)
                                     : iterate_returns(cf, n_max, 2 * seq.bits, seq.escape_radius, seq.model);
    for (size_t i = 0; i < seq.points.size(); ++i) {
        ReturnPoint& pt = seq.points[i];
        double dev = std::abs(pt.w - hi.points[i].w) / hi.points[i].dist;
        pt.escalation = dev;
        if (!(dev <= tol)) {
            std::ostringstream os;
            os << "doubling the precision moved z_{q_" << pt.n << "} by " << dev << " relative to |z - 1|"
               << " (limit " << tol << "); precision insufficient";
            throw PrecisionError(os.str(), pt.n);
        }
    }
}

std::complex<double> backward_step(std::complex<double> w, double theta, std::complex<double> prediction,
                                   double tol) {
    std::complex<double> einv = std::polar(1.0, -2.0 * kPi * theta);
    std::complex<double> s = std::sqrt(1.0 - 2.0 * einv * w);
    std::complex<double> r1 = 1.0 + s, r2 = 1.0 - s;
    double d1 = std::abs(r1 - prediction), d2 = std::abs(r2 - prediction);
    if (std::abs(s) > 0.0 && std::fabs(d1 - d2) < tol * std::abs(s))
        throw AmbiguityError("backward preimages are indistinguishable from the prediction", 0);
    return d1 <= d2 ? r1 : r2;
}

namespace {

// Boundary points P^j(1) indexed by their rotation angle {j theta}, thinned so that cells near
// angle 0 have width proportional to the distance from 0.
class AnglePredictor {
public:
    AnglePredictor(double theta, long orbit_length) {
        double a_min = 1.0 / static_cast<double>(orbit_length);
        span_ = static_cast<long>(std::ceil(kCellsPerEFold * std::log(0.5 / a_min))) + 1;
        std::vector<long> slot(2 * span_ + 1, -1);
        std::complex<double> e = std::polar(1.0, 2.0 * kPi * theta), z = 1.0;
        for (long j = 0; j < orbit_length; ++j) {
            double a = frac(static_cast<double>(j) * theta);
            if (a > 0.5) a -= 1.0;
            long key = cell(a, a_min);
            if (slot[key + span_] < 0) {
                slot[key + span_] = static_cast<long>(entries_.size());
                entries_.push_back({a, z});
            }
            z = e * z * (1.0 - 0.5 * z);
            if (!(std::norm(z) <= 16.0)) throw PrecisionError("double-precision predictor orbit escaped", 0);
        }
        std::sort(entries_.begin(), entries_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    }

    // angle in [0, 1)
    std::complex<double> nearest(double angle) const {
        if (angle > 0.5) angle -= 1.0;
        auto it = std::lower_bound(entries_.begin(), entries_.end(), angle,
                                   [](const auto& e, double v) { return e.first < v; });
        auto circ = [](double x, double y) {
            double d = std::fabs(x - y);
            return std::min(d, 1.0 - d);
        };
        const auto& hi = it == entries_.end() ? entries_.front() : *it;
        const auto& lo = it == entries_.begin() ? entries_.back() : *(it - 1);
        return circ(hi.first, angle) <= circ(lo.first, angle) ? hi.second : lo.second;
    }

private:
    static constexpr double kCellsPerEFold = 200.0;

    long cell(double a, double a_min) const {
        double m = std::fabs(a);
        if (m < a_min) return 0;
        long k = 1 + static_cast<long>(kCellsPerEFold * std::log(m / a_min));
        k = std::min(k, span_);
        return a < 0 ? -k : k;
    }

    long span_ = 0;
    std::vector<std::pair<double, std::complex<double>>> entries_;
};

}  // namespace

ReturnSequence backward_returns(const QuadraticIrrational& cf, int n_max, int bits, Model model,
                                BackwardOptions opts) {
    if (bits < 64) throw std::invalid_argument("precision must be at least 64 bits");
    ReturnSequence seq;
    seq.cf = cf.str();
    seq.s = cf.s();
    seq.bits = bits;
    seq.backward = true;
    seq.model = model;
    std::vector<Convergent> conv = convergents(cf, n_max);

    if (model == Model::Rotation) {
        for (const Convergent& c : conv) {
            Complex z(bits);
            surd_rotation(z, -closest_return_offset(cf, c), bits);
            ReturnPoint pt;
            pt.n = c.n;
            pt.q = c.q;
            fill_point(pt, z, bits);
            seq.points.push_back(pt);
        }
        return seq;
    }

    unsigned long q_last = checked_q(conv.back().q);
    long table = opts.table_size > 0 ? opts.table_size : std::max<long>(20L * static_cast<long>(q_last), 100000L);
    double theta = value(cf).to_double();
    AnglePredictor predictor(theta, table);

    Complex einv(bits), z(bits), u(bits);
    surd_rotation(einv, -value(cf), bits);
    z.set(1.0, 0.0);
    Real theta_hp(bits + 64);
    value(cf).to_mpfr(theta_hp.get());
    Real angle(bits + 64);
    unsigned long k = 0;
    for (const Convergent& c : conv) {
        unsigned long target = checked_q(c.q);
        for (; k < target; ++k) {
            // u = sqrt(1 - 2 e^{-2 pi i theta} w); roots 1 +- u
            u.set(z);
            u.mul(einv);
            mpfr_mul_2ui(u.re.get(), u.re.get(), 1, MPFR_RNDN);
            mpfr_mul_2ui(u.im.get(), u.im.get(), 1, MPFR_RNDN);
            u.neg();
            u.add_real(1.0);
            u.sqrt();
            mpfr_mul_ui(angle.get(), theta_hp.get(), k + 1, MPFR_RNDN);
            mpfr_frac(angle.get(), angle.get(), MPFR_RNDN);
            double a = 1.0 - angle.to_double();
            if (a >= 1.0) a -= 1.0;
            std::complex<double> pred = predictor.nearest(a);
            std::complex<double> s = u.to_complex();
            double d1 = std::abs(1.0 + s - pred), d2 = std::abs(1.0 - s - pred);
            double gap = std::abs(s);
            if (gap > 0.0 && std::fabs(d1 - d2) < opts.ambiguity_tol * gap) {
                std::ostringstream os;
                os << "backward step " << k + 1 << ": preimages equidistant from the predicted boundary point";
                throw AmbiguityError(os.str(), static_cast<long>(k + 1));
            }
            if (d2 < d1) u.neg();
            z.set(u);
            z.add_real(1.0);
        }
        ReturnPoint pt;
        pt.n = c.n;
        pt.q = c.q;
        fill_point(pt, z, bits);
        seq.points.push_back(pt);
    }
    return seq;
}

std::vector<ScalingEstimate> scaling_sequence(const ReturnSequence& fwd, int s, bool conjugate) {
    if (s < 1) throw std::invalid_argument("period must be at least 1");
    std::vector<ScalingEstimate> out;
    const auto& pts = fwd.points;
    double floor = 10.0 * std::ldexp(1.0, -fwd.bits);
    bool conj = conjugate && (s % 2 == 1);
    auto c = [&](std::complex<double> x) { return conj ? std::conj(x) : x; };
    for (size_t i = s; i + s < pts.size(); ++i) {
        std::complex<double> w0 = pts[i - s].w, w1 = pts[i].w, w2 = pts[i + s].w;
        if (std::abs(w1) <= floor || std::abs(w1 - w0) <= floor) continue;
        ScalingEstimate e;
        e.n = pts[i].n;
        e.lambda_hat = w2 / c(w1);
        e.lambda = (w2 - w1) / c(w1 - w0);
        e.abs_lambda_hat = std::abs(e.lambda_hat);
        e.abs_lambda = std::abs(e.lambda);
        e.gap = std::abs(e.lambda - e.lambda_hat);
        if (!out.empty()) e.cauchy = std::abs(e.lambda_hat - out.back().lambda_hat);
        out.push_back(e);
    }
    return out;
}

int bh_transient(const std::vector<ScalingEstimate>& est, double alpha) {
    int first = -1;
    for (auto it = est.rbegin(); it != est.rend(); ++it) {
        if (!(it->abs_lambda_hat > alpha && it->abs_lambda_hat < 1.0)) break;
        first = it->n;
    }
    return first;
}

Direction extrapolate_limit(const std::vector<double>& seq) {
    size_t k = seq.size();
    if (k == 0) throw std::invalid_argument("empty sequence");
    if (k < 3) return {seq.back(), k == 2 ? std::fabs(seq[1] - seq[0]) : 0.0};
    auto aitken = [&](size_t j) {
        double a = seq[j], b = seq[j + 1], c = seq[j + 2];
        double den = (c - b) - (b - a);
        if (std::fabs(den) < 1e-300) return c;
        return c - (c - b) * (c - b) / den;
    };
    double last = seq.back();
    double lim = aitken(k - 3);
    double err = std::fabs(lim - last);
    if (k >= 4) err = std::max(err, std::fabs(lim - aitken(k - 4)));
    return {lim, err};
}

namespace {

std::vector<double> unwrapped_degrees(const ReturnSequence& seq, int parity) {
    std::vector<double> out;
    for (const ReturnPoint& p : seq.points) {
        if (p.n % 2 != parity) continue;
        double d = std::arg(p.w) * 180.0 / kPi;
        if (!out.empty()) {
            while (d - out.back() > 180.0) d -= 360.0;
            while (d - out.back() < -180.0) d += 360.0;
        }
        out.push_back(d);
    }
    return out;
}

Direction separation(const Direction& a, const Direction& b) {
    double d = std::fmod(std::fabs(a.degrees - b.degrees), 360.0);
    return {std::min(d, 360.0 - d), a.error + b.error};
}

// Uses the last four terms of each parity class.
Direction tail_limit(const std::vector<double>& seq) {
    if (seq.size() <= 4) return extrapolate_limit(seq);
    return extrapolate_limit(std::vector<double>(seq.end() - 4, seq.end()));
}

}  // namespace

AngleReport return_angles(const ReturnSequence& fwd, const ReturnSequence& bwd) {
    if (fwd.points.size() < 6 || bwd.points.size() < 6)
        throw std::invalid_argument("return_angles needs at least 6 returns in each direction");
    AngleReport r;
    r.forward_odd = tail_limit(unwrapped_degrees(fwd, 1));
    r.forward_even = tail_limit(unwrapped_degrees(fwd, 0));
    r.backward_odd = tail_limit(unwrapped_degrees(bwd, 1));
    r.backward_even = tail_limit(unwrapped_degrees(bwd, 0));
    r.forward_separation = separation(r.forward_odd, r.forward_even);
    r.backward_separation = separation(r.backward_odd, r.backward_even);
    return r;
}

std::vector<std::complex<double>> dense_orbit(double theta, long count, Model model) {
    std::vector<std::complex<double>> out;
    out.reserve(count);
    if (model == Model::Rotation) {
        for (long k = 0; k < count; ++k) out.push_back(std::polar(1.0, 2.0 * kPi * frac(k * theta)));
        return out;
    }
    std::complex<double> e = std::polar(1.0, 2.0 * kPi * theta), z = 1.0;
    for (long k = 0; k < count; ++k) {
        out.push_back(z);
        z = e * z * (1.0 - 0.5 * z);
        if (!(std::norm(z) <= 16.0)) throw PrecisionError("double-precision orbit escaped", static_cast<int>(k));
    }
    return out;
}

StripReport strip_heights(const std::vector<std::complex<double>>& near_one, double abs_lambda,
                          const StripOptions& opts) {
    if (!(abs_lambda > 0.0 && abs_lambda < 1.0)) throw std::invalid_argument("|lambda| must lie in (0, 1)");
    if (near_one.size() < 10000) throw std::invalid_argument("strip_heights needs at least 1e4 points near 1");
    StripReport rep;
    rep.points_in_window = static_cast<long>(near_one.size());
    std::vector<double> x, a;
    x.reserve(near_one.size());
    a.reserve(near_one.size());
    for (const auto& z : near_one) {
        std::complex<double> w = z - 1.0;
        double ang = std::arg(w);
        if (ang < 0) ang += 2.0 * kPi;
        x.push_back(std::log(std::abs(w)));
        a.push_back(ang);
    }
    double width = -2.0 * std::log(abs_lambda);
    int nb = opts.bins_per_width;
    for (double top = std::log(opts.r0);; top -= width) {
        std::vector<double> up_min(nb, 1e9), up_max(nb, -1e9), lo_min(nb, 1e9), lo_max(nb, -1e9);
        std::vector<int> up_n(nb, 0), lo_n(nb, 0);
        for (size_t i = 0; i < x.size(); ++i) {
            if (x[i] >= top || x[i] < top - width) continue;
            int b = std::min(nb - 1, static_cast<int>((top - x[i]) / width * nb));
            if (a[i] < kPi) {
                up_min[b] = std::min(up_min[b], a[i]);
                up_max[b] = std::max(up_max[b], a[i]);
                ++up_n[b];
            } else {
                lo_min[b] = std::min(lo_min[b], a[i]);
                lo_max[b] = std::max(lo_max[b], a[i]);
                ++lo_n[b];
            }
        }
        StripWindow win;
        win.top = top;
        win.gamma_min = 1e9;
        win.gamma_max = -1e9;
        for (int b = 0; b < nb; ++b) {
            if (up_n[b] < opts.min_per_strand || lo_n[b] < opts.min_per_strand) continue;
            ++win.bins_used;
            win.gamma_max = std::max(win.gamma_max, lo_max[b] - up_min[b]);
            win.gamma_min = std::min(win.gamma_min, lo_min[b] - up_max[b]);
        }
        if (2 * win.bins_used < nb) break;
        rep.windows.push_back(win);
    }
    if (rep.windows.empty()) throw std::runtime_error("insufficient point density for strip heights");
    rep.gamma_min = rep.windows.back().gamma_min;
    rep.gamma_max = rep.windows.back().gamma_max;
    return rep;
}

StripReport strip_heights(double theta, double abs_lambda, Model model, const StripOptions& opts) {
    std::vector<std::complex<double>> near;
    std::complex<double> e = std::polar(1.0, 2.0 * kPi * theta), z = 1.0;
    long k = 0;
    for (; k < opts.max_iterations && static_cast<long>(near.size()) < opts.target_points; ++k) {
        if (model == Model::Rotation)
            z = std::polar(1.0, 2.0 * kPi * frac(k * theta));
        else if (k > 0)
            z = e * z * (1.0 - 0.5 * z);
        if (!(std::norm(z) <= 16.0)) throw PrecisionError("double-precision orbit escaped", 0);
        if (k > 0 && std::abs(z - 1.0) < opts.r0 && static_cast<long>(near.size()) < opts.window_cap)
            near.push_back(z);
    }
    StripReport rep = strip_heights(near, abs_lambda, opts);
    rep.orbit_length = k;
    return rep;
}

QSEstimate empirical_qs_constant(const QuadraticIrrational& cf, const std::vector<std::complex<double>>& orbit,
                                 int scales, long samples_per_scale) {
    QSEstimate est;
    long N = static_cast<long>(orbit.size());
    std::vector<Convergent> conv = convergents(cf, 80);
    std::vector<const Convergent*> usable;
    for (const Convergent& c : conv)
        if (c.q * 4 < N) usable.push_back(&c);
    if (usable.empty()) throw std::invalid_argument("orbit too short for any closest-return scale");
    size_t first = usable.size() > static_cast<size_t>(scales) ? usable.size() - scales : 0;
    for (size_t u = first; u < usable.size(); ++u) {
        const Convergent& c = *usable[u];
        long q = static_cast<long>(c.q.get_si());
        double delta = std::fabs(closest_return_offset(cf, c).to_double());
        long span = N - 2 * q;
        long stride = std::max(1L, span / std::max(1L, samples_per_scale));
        double worst = 1.0;
        for (long k = q; k < N - q; k += stride) {
            double fwd = std::abs(orbit[k + q] - orbit[k]);
            double bwd = std::abs(orbit[k] - orbit[k - q]);
            if (fwd == 0.0 || bwd == 0.0) continue;
            double r = fwd / bwd;
            worst = std::max(worst, std::max(r, 1.0 / r));
        }
        est.per_scale.push_back({delta, worst});
        est.K = std::max(est.K, worst);
    }
    return est;
}

}  // namespace siegel

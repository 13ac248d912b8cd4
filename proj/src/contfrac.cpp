#include "siegel/contfrac.hpp"

#include <cmath>
#include <sstream>

namespace siegel {

namespace {

// Splits d into f^2 * r with r square-free (trial division, then a square test).
void square_part(mpz_class& d, mpz_class& f) {
    f = 1;
    for (unsigned long p = 2; p < 1000000; ++p) {
        mpz_class pp = p * p;
        if (pp > d) break;
        while (d % pp == 0) {
            d /= pp;
            f *= p;
        }
    }
    if (mpz_perfect_square_p(d.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), d.get_mpz_t());
        f *= r;
        d = 1;
    }
}

const mpz_class& common_field(const Surd& x, const Surd& y) {
    if (x.is_rational()) return y.d();
    if (y.is_rational() || x.d() == y.d()) return x.d();
    throw std::runtime_error("surds belong to different quadratic fields");
}

}  // namespace

Surd::Surd(const mpz_class& a, const mpz_class& b, const mpz_class& c, const mpz_class& d)
    : a_(a), b_(b), c_(c), d_(d) {
    normalize();
}

Surd Surd::rational(const mpz_class& num, const mpz_class& den) { return Surd(num, 0, den, 1); }

void Surd::normalize() {
    if (c_ == 0) throw std::runtime_error("surd with zero denominator");
    if (c_ < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
    }
    if (b_ != 0) {
        if (d_ <= 0) throw std::runtime_error("surd radicand must be positive");
        mpz_class f;
        square_part(d_, f);
        b_ *= f;
        if (d_ == 1) {
            a_ += b_;
            b_ = 0;
        }
    }
    if (b_ == 0) d_ = 1;
    mpz_class g = gcd(gcd(a_, b_), c_);
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
    }
}

int Surd::sign() const {
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    mpz_class lhs = a_ * a_, rhs = b_ * b_ * d_;
    return lhs > rhs ? sa : sb;
}

Surd Surd::operator-() const { return Surd(-a_, -b_, c_, d_); }

Surd Surd::conjugate() const { return Surd(a_, -b_, c_, d_); }

Surd Surd::reciprocal() const {
    mpz_class norm = a_ * a_ - b_ * b_ * d_;
    if (norm == 0) throw std::runtime_error("reciprocal of zero surd");
    return Surd(c_ * a_, -c_ * b_, norm, d_);
}

Surd operator+(const Surd& x, const Surd& y) {
    const mpz_class& d = common_field(x, y);
    return Surd(x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_, x.c_ * y.c_, d);
}

Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }

Surd operator*(const Surd& x, const Surd& y) {
    const mpz_class& d = common_field(x, y);
    return Surd(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, x.c_ * y.c_, d);
}

Surd operator/(const Surd& x, const Surd& y) { return x * y.reciprocal(); }

bool operator==(const Surd& x, const Surd& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
}

void Surd::to_mpfr(mpfr_t out, mpfr_rnd_t rnd) const {
    mpfr_prec_t prec = mpfr_get_prec(out) + 64;
    mpfr_t root, num;
    mpfr_init2(root, prec);
    mpfr_init2(num, prec);
    mpfr_set_z(root, d_.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(root, root, MPFR_RNDN);
    mpfr_mul_z(root, root, b_.get_mpz_t(), MPFR_RNDN);
    mpfr_add_z(num, root, a_.get_mpz_t(), MPFR_RNDN);
    mpfr_div_z(out, num, c_.get_mpz_t(), rnd);
    mpfr_clear(root);
    mpfr_clear(num);
}

double Surd::to_double() const {
    mpfr_t x;
    mpfr_init2(x, 128);
    to_mpfr(x);
    double r = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return r;
}

std::string Surd::str() const {
    std::ostringstream os;
    if (b_ == 0) {
        os << a_.get_str();
        if (c_ != 1) os << "/" << c_.get_str();
        return os.str();
    }
    os << "(" << a_.get_str() << (b_ < 0 ? " - " : " + ");
    mpz_class ab = abs(b_);
    if (ab != 1) os << ab.get_str() << "*";
    os << "sqrt(" << d_.get_str() << "))";
    if (c_ != 1) os << "/" << c_.get_str();
    return os.str();
}

QuadraticIrrational::QuadraticIrrational(std::vector<long> preperiod, std::vector<long> period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
    if (per_.empty()) throw ParseError("continued fraction period must be nonempty");
    for (long a : pre_) {
        if (a < 1) throw ParseError("partial quotients must be positive integers");
        max_quotient_ = std::max(max_quotient_, a);
    }
    for (long a : per_) {
        if (a < 1) throw ParseError("partial quotients must be positive integers");
        max_quotient_ = std::max(max_quotient_, a);
    }
}

namespace {

std::vector<long> parse_list(const std::string& part) {
    std::vector<long> out;
    if (part.find_first_not_of(" \t") == std::string::npos) return out;
    std::string item;
    std::istringstream in(part + ",");
    while (std::getline(in, item, ',')) {
        size_t b = item.find_first_not_of(" \t");
        size_t e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw ParseError("empty partial quotient in '" + part + "'");
        item = item.substr(b, e - b + 1);
        for (char ch : item)
            if (ch < '0' || ch > '9')
                throw ParseError("partial quotient '" + item + "' is not a positive integer");
        if (item.size() > 12) throw ParseError("partial quotient '" + item + "' is too large");
        long v = std::stol(item);
        if (v < 1) throw ParseError("partial quotients must be positive, got " + item);
        out.push_back(v);
    }
    return out;
}

}  // namespace

QuadraticIrrational QuadraticIrrational::parse(const std::string& text) {
    size_t semi = text.find(';');
    if (semi == std::string::npos || text.find(';', semi + 1) != std::string::npos)
        throw ParseError("expected exactly one ';' separating preperiod and period in '" + text + "'");
    std::vector<long> pre = parse_list(text.substr(0, semi));
    std::vector<long> per = parse_list(text.substr(semi + 1));
    return QuadraticIrrational(pre, per);
}

long QuadraticIrrational::quotient(int n) const {
    if (n < 1) throw std::out_of_range("partial quotient index starts at 1");
    if (n <= N()) return pre_[n - 1];
    return per_[(n - N() - 1) % s()];
}

Surd QuadraticIrrational::tail(int i) const {
    if (i < 1) throw std::out_of_range("tail index starts at 1");
    int start = std::max(i, N() + 1);
    // x -> 1/(a + x) is the matrix [[0,1],[1,a]]; compose one full period.
    mpz_class P = 1, Q = 0, R = 0, S = 1;
    for (int k = 0; k < s(); ++k) {
        long a = quotient(start + k);
        mpz_class nP = Q, nQ = P + a * Q, nR = S, nS = R + a * S;
        P = nP;
        Q = nQ;
        R = nR;
        S = nS;
    }
    // Positive root of R x^2 + (S - P) x - Q = 0.
    mpz_class disc = (S - P) * (S - P) + 4 * Q * R;
    Surd x(P - S, 1, 2 * R, disc);
    for (int k = start - 1; k >= i; --k) x = (Surd(quotient(k)) + x).reciprocal();
    return x;
}

std::string QuadraticIrrational::str() const {
    std::ostringstream os;
    for (size_t k = 0; k < pre_.size(); ++k) os << (k ? "," : "") << pre_[k];
    os << ";";
    for (size_t k = 0; k < per_.size(); ++k) os << (k ? "," : "") << per_[k];
    return os.str();
}

Surd value(const QuadraticIrrational& cf) { return cf.tail(1); }

std::vector<Convergent> convergents(const QuadraticIrrational& cf, int n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    std::vector<Convergent> out;
    out.reserve(n_max);
    mpz_class p2 = 1, q2 = 0, p1 = 0, q1 = 1;
    for (int n = 1; n <= n_max; ++n) {
        long a = cf.quotient(n);
        mpz_class p = a * p1 + p2, q = a * q1 + q2;
        out.push_back({n, p, q});
        p2 = p1;
        q2 = q1;
        p1 = p;
        q1 = q;
    }
    return out;
}

Surd alpha(const QuadraticIrrational& cf) {
    Surd prod(1);
    for (int i = cf.N() + 1; i <= cf.N() + cf.s(); ++i) prod = prod * cf.tail(i);
    return prod;
}

Surd closest_return_offset(const QuadraticIrrational& cf, const Convergent& c) {
    return Surd(c.q) * value(cf) - Surd(c.p);
}

double vartheta(const QuadraticIrrational& cf) {
    return std::pow(alpha(cf).to_double(), -1.0 / cf.s());
}

double vartheta_B(long B) {
    if (B < 1) throw std::invalid_argument("B must be at least 1");
    double b = static_cast<double>(B);
    return (std::sqrt(b * b + 4 * b) + b) / (2 * b);
}

}  // namespace siegel

#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// (a + b*sqrt(d)) / c with c > 0, gcd(a, b, c) = 1 and d square-free.
// A rational value is stored with b = 0 and d = 1.
class Surd {
public:
    Surd() : a_(0), b_(0), c_(1), d_(1) {}
    Surd(long n) : a_(n), b_(0), c_(1), d_(1) {}
    explicit Surd(const mpz_class& n) : a_(n), b_(0), c_(1), d_(1) {}
    Surd(const mpz_class& a, const mpz_class& b, const mpz_class& c, const mpz_class& d);

    static Surd rational(const mpz_class& num, const mpz_class& den);

    const mpz_class& a() const { return a_; }
    const mpz_class& b() const { return b_; }
    const mpz_class& c() const { return c_; }
    const mpz_class& d() const { return d_; }

    bool is_rational() const { return b_ == 0; }
    int sign() const;

    Surd operator-() const;
    Surd conjugate() const;
    Surd reciprocal() const;

    friend Surd operator+(const Surd& x, const Surd& y);
    friend Surd operator-(const Surd& x, const Surd& y);
    friend Surd operator*(const Surd& x, const Surd& y);
    friend Surd operator/(const Surd& x, const Surd& y);
    friend bool operator==(const Surd& x, const Surd& y);
    friend bool operator<(const Surd& x, const Surd& y) { return (x - y).sign() < 0; }

    double to_double() const;
    void to_mpfr(mpfr_t out, mpfr_rnd_t rnd = MPFR_RNDN) const;
    std::string str() const;

private:
    void normalize();
    mpz_class a_, b_, c_, d_;
};

struct Convergent {
    int n;
    mpz_class p, q;
};

class QuadraticIrrational {
public:
    QuadraticIrrational(std::vector<long> preperiod, std::vector<long> period);

    // Text form "pre;per", comma separated, e.g. "2;1" or ";1,2".
    static QuadraticIrrational parse(const std::string& text);

    const std::vector<long>& preperiod() const { return pre_; }
    const std::vector<long>& period() const { return per_; }
    int N() const { return static_cast<int>(pre_.size()); }
    int s() const { return static_cast<int>(per_.size()); }
    long B() const { return max_quotient_; }

    // Partial quotient a_n, n >= 1.
    long quotient(int n) const;

    // Tail theta_i = [a_i, a_{i+1}, ...], i >= 1; theta_1 is the value.
    Surd tail(int i) const;

    std::string str() const;

private:
    std::vector<long> pre_, per_;
    long max_quotient_ = 0;
};

Surd value(const QuadraticIrrational& cf);
std::vector<Convergent> convergents(const QuadraticIrrational& cf, int n_max);
Surd alpha(const QuadraticIrrational& cf);

// Signed distance q*theta - p as an exact surd.
Surd closest_return_offset(const QuadraticIrrational& cf, const Convergent& c);

double vartheta(const QuadraticIrrational& cf);
double vartheta_B(long B);

}  // namespace siegel

#pragma once

// Exact scalars: GMP integers and rationals, a + b*sqrt(d) surds, values r*pi^e,
// Kronecker symbols, Bernoulli numbers and L-values at nonpositive integers.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace siegel {

using Integer = mpz_class;
using Rational = mpq_class;

// ---------------------------------------------------------------------------
// integer helpers

inline Integer ipow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Integer ipow(long b, unsigned long e) { return ipow(Integer(b), e); }

/// b^e for any integer e (negative allowed).
inline Rational rpow(const Rational& b, long e) {
    if (e >= 0) {
        Rational r(ipow(b.get_num(), (unsigned long)e), ipow(b.get_den(), (unsigned long)e));
        r.canonicalize();
        return r;
    }
    if (b == 0) throw InvalidArgument("rpow: 0 to a negative power");
    Rational r(ipow(b.get_den(), (unsigned long)(-e)), ipow(b.get_num(), (unsigned long)(-e)));
    r.canonicalize();
    return r;
}

/// p-adic valuation; throws on zero.
inline int valuation(Integer n, long p) {
    if (n == 0) throw InvalidArgument("valuation of zero");
    int v = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)p)) {
        n /= p;
        ++v;
    }
    return v;
}

inline int valuation(long long n, long p) { return valuation(Integer((long)n), p); }

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<long> prime_divisors(Integer n) {
    std::vector<long> ps;
    if (n < 0) n = -n;
    for (long d = 2; Integer(d) * d <= n; ++d) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)d)) {
            ps.push_back(d);
            while (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)d)) n /= d;
        }
    }
    if (n > 1) ps.push_back(n.get_si());
    return ps;
}

/// Squarefree part s of n > 0 with n = s * t^2; returns (s, t).
inline std::pair<Integer, Integer> squarefree_decompose(Integer n) {
    if (n <= 0) throw InvalidArgument("squarefree_decompose: n must be positive");
    Integer s = 1, t = 1;
    for (long p : prime_divisors(n)) {
        int v = valuation(n, p);
        if (v % 2) s *= p;
        t *= ipow(p, (unsigned long)(v / 2));
    }
    return {s, t};
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer floor_mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline long long mod_ll(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

/// Inverse of a unit modulo m.
inline long long inv_mod(long long a, long long m) {
    long long g = m, x = 0, x1 = 1, aa = mod_ll(a, m);
    long long b = aa;
    while (b) {
        long long q = g / b;
        long long t = g - q * b;
        g = b;
        b = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) throw InvalidArgument("inv_mod: not a unit");
    return mod_ll(x, m);
}

// ---------------------------------------------------------------------------
// rational serialization

inline std::string to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw InvalidArgument("not a rational: " + s);
    if (r.get_den() == 0) throw InvalidArgument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// ---------------------------------------------------------------------------
// Kronecker symbol

/// Kronecker symbol (a/n), extended to all integers a, n.
inline int kronecker_symbol(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int res = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) res = -res;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0) return 0;
        long long a8 = mod_ll(a, 8);
        if ((v % 2) && (a8 == 3 || a8 == 5)) res = -res;
    }
    // Jacobi symbol (a/n) for odd n > 0
    long long aa = mod_ll(a, n);
    while (aa != 0) {
        while (aa % 2 == 0) {
            aa /= 2;
            long long n8 = n % 8;
            if (n8 == 3 || n8 == 5) res = -res;
        }
        std::swap(aa, n);
        if (aa % 4 == 3 && n % 4 == 3) res = -res;
        aa %= n;
    }
    return n == 1 ? res : 0;
}

inline int kronecker_symbol(const Integer& a, long long n) {
    if (a.fits_slong_p()) return kronecker_symbol((long long)a.get_si(), n);
    if (n == 0) return 0;
    // (a/n) only depends on the sign of a and on a mod 4|n|
    long long m = 4 * (n < 0 ? -n : n);
    long long r = floor_mod(a, Integer((long)m)).get_si();
    if (a < 0) r -= m;
    return kronecker_symbol(r, n);
}

// ---------------------------------------------------------------------------
// QuadExtScalar: a + b sqrt(d), d squarefree

class QuadExtScalar {
public:
    QuadExtScalar() : a_(0), b_(0), d_(1) {}
    QuadExtScalar(const Rational& a) : a_(a), b_(0), d_(1) {}  // NOLINT
    QuadExtScalar(long a) : a_(a), b_(0), d_(1) {}              // NOLINT
    QuadExtScalar(const Integer& a) : a_(a), b_(0), d_(1) {}    // NOLINT

    /// a + b sqrt(n) for any positive n; the radicand is reduced to its squarefree kernel.
    QuadExtScalar(const Rational& a, const Rational& b, long n) : a_(a), b_(b), d_(1) {
        if (n <= 0) throw InvalidArgument("QuadExtScalar: radicand must be positive");
        auto [s, t] = squarefree_decompose(Integer(n));
        b_ *= t;
        d_ = s.get_si();
        normalize();
    }

    static QuadExtScalar sqrt(long n) { return QuadExtScalar(0, 1, n); }

    /// p^(e/2) for an integer e.
    static QuadExtScalar half_power(long p, long e) {
        long q = e >= 0 ? e / 2 : -((-e + 1) / 2);
        long rem = e - 2 * q;  // 0 or 1
        Rational base = rpow(Rational(p), q);
        if (rem == 0) return QuadExtScalar(base);
        return QuadExtScalar(0, base, p);
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    long d() const { return d_; }
    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    Rational rational() const {
        if (!is_rational()) throw NonIntegralResult("QuadExtScalar is irrational: " + str());
        return a_;
    }

    double to_double() const { return a_.get_d() + b_.get_d() * std::sqrt((double)d_); }

    std::string str() const {
        if (b_ == 0) return to_string(a_);
        return to_string(a_) + "+" + to_string(b_) + "*sqrt(" + std::to_string(d_) + ")";
    }

    friend QuadExtScalar operator+(const QuadExtScalar& x, const QuadExtScalar& y) {
        long d = common(x, y);
        QuadExtScalar r;
        r.a_ = x.a_ + y.a_;
        r.b_ = x.b_ + y.b_;
        r.d_ = d;
        r.normalize();
        return r;
    }
    friend QuadExtScalar operator-(const QuadExtScalar& x) {
        QuadExtScalar r = x;
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        return r;
    }
    friend QuadExtScalar operator-(const QuadExtScalar& x, const QuadExtScalar& y) { return x + (-y); }
    friend QuadExtScalar operator*(const QuadExtScalar& x, const QuadExtScalar& y) {
        long d = common(x, y);
        QuadExtScalar r;
        r.a_ = x.a_ * y.a_ + x.b_ * y.b_ * d;
        r.b_ = x.a_ * y.b_ + x.b_ * y.a_;
        r.d_ = d;
        r.normalize();
        return r;
    }
    QuadExtScalar conj() const {
        QuadExtScalar r = *this;
        r.b_ = -r.b_;
        return r;
    }
    Rational norm() const { return a_ * a_ - b_ * b_ * d_; }
    friend QuadExtScalar operator/(const QuadExtScalar& x, const QuadExtScalar& y) {
        if (y.is_zero()) throw InvalidArgument("QuadExtScalar: division by zero");
        Rational n = y.norm();
        QuadExtScalar t = x * y.conj();
        t.a_ /= n;
        t.b_ /= n;
        return t;
    }
    QuadExtScalar& operator+=(const QuadExtScalar& y) { return *this = *this + y; }
    QuadExtScalar& operator-=(const QuadExtScalar& y) { return *this = *this - y; }
    QuadExtScalar& operator*=(const QuadExtScalar& y) { return *this = *this * y; }
    QuadExtScalar& operator/=(const QuadExtScalar& y) { return *this = *this / y; }

    friend bool operator==(const QuadExtScalar& x, const QuadExtScalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
    }
    friend bool operator!=(const QuadExtScalar& x, const QuadExtScalar& y) { return !(x == y); }
    friend std::ostream& operator<<(std::ostream& os, const QuadExtScalar& x) { return os << x.str(); }

private:
    static long common(const QuadExtScalar& x, const QuadExtScalar& y) {
        if (x.b_ == 0) return y.d_;
        if (y.b_ == 0) return x.d_;
        if (x.d_ != y.d_)
            throw InvalidArgument("QuadExtScalar: mixed radicands " + std::to_string(x.d_) + " and " +
                                  std::to_string(y.d_));
        return x.d_;
    }
    void normalize() {
        if (d_ == 1) {
            a_ += b_;
            b_ = 0;
        }
        if (b_ == 0) d_ = 1;
    }

    Rational a_, b_;
    long d_;
};

// ---------------------------------------------------------------------------
// PiScaledRational: scalar * pi^(e2/2)

class PiScaledRational {
public:
    PiScaledRational() : scalar_(0), e2_(0) {}
    PiScaledRational(const QuadExtScalar& s, long pi_exp_times_2) : scalar_(s), e2_(pi_exp_times_2) {
        if (scalar_.is_zero()) e2_ = 0;
    }
    const QuadExtScalar& scalar() const { return scalar_; }
    long pi_exp_times_2() const { return e2_; }
    bool is_zero() const { return scalar_.is_zero(); }

    friend PiScaledRational operator*(const PiScaledRational& x, const PiScaledRational& y) {
        return PiScaledRational(x.scalar_ * y.scalar_, x.e2_ + y.e2_);
    }
    friend PiScaledRational operator/(const PiScaledRational& x, const PiScaledRational& y) {
        return PiScaledRational(x.scalar_ / y.scalar_, x.e2_ - y.e2_);
    }
    friend bool operator==(const PiScaledRational& x, const PiScaledRational& y) {
        return x.scalar_ == y.scalar_ && x.e2_ == y.e2_;
    }
    double to_double() const { return scalar_.to_double() * std::pow(M_PI, e2_ / 2.0); }
    std::string str() const { return scalar_.str() + " * pi^(" + std::to_string(e2_) + "/2)"; }

private:
    QuadExtScalar scalar_;
    long e2_;
};

// ---------------------------------------------------------------------------
// Bernoulli numbers and L-values

/// B_0..B_jmax with B_1 = -1/2.
inline std::vector<Rational> bernoulli_table(unsigned jmax) {
    // Akiyama-Tanigawa produces B_1 = +1/2; flip afterwards.
    std::vector<Rational> out(jmax + 1), a(jmax + 1);
    for (unsigned m = 0; m <= jmax; ++m) {
        a[m] = Rational(1, m + 1);
        for (unsigned j = m; j >= 1; --j) {
            a[j - 1] = j * (a[j - 1] - a[j]);
            a[j - 1].canonicalize();
        }
        out[m] = a[0];
    }
    if (jmax >= 1) out[1] = Rational(-1, 2);
    return out;
}

inline Rational bernoulli_number(unsigned j) { return bernoulli_table(j)[j]; }

/// Bernoulli polynomial B_j(x), B_1(x) = x - 1/2.
inline Rational bernoulli_polynomial(unsigned j, const Rational& x) {
    auto B = bernoulli_table(j);
    Rational s = 0, xp = 1;
    // sum_i C(j,i) B_i x^{j-i}, accumulated from i = j down
    for (unsigned i = j + 1; i-- > 0;) {
        s += Rational(binomial(j, i)) * B[i] * xp;
        xp *= x;
    }
    return s;
}

inline bool is_fundamental_discriminant(long long D) {
    if (D == 1) return true;
    if (D == 0) return false;
    auto sqfree = [](long long n) {
        if (n < 0) n = -n;
        for (long long p = 2; p * p <= n; ++p)
            if (n % (p * p) == 0) return false;
        return true;
    };
    long long r4 = mod_ll(D, 4);
    if (r4 == 1) return sqfree(D);
    if (r4 == 0) {
        long long m = D / 4;
        long long m4 = mod_ll(m, 4);
        return (m4 == 2 || m4 == 3) && sqfree(m);
    }
    return false;
}

/// Generalized Bernoulli number B_{j,chi_D} = f^{j-1} sum_{a=1}^{f} chi_D(a) B_j(a/f), f = |D|.
/// For D = 1 returns B_j.
inline Rational generalized_bernoulli(unsigned j, long long D) {
    if (j < 1) throw InvalidArgument("generalized_bernoulli: j >= 1 required");
    if (!is_fundamental_discriminant(D))
        throw InvalidArgument("generalized_bernoulli: not a fundamental discriminant: " + std::to_string(D));
    if (D == 1) return bernoulli_number(j);
    long long f = D < 0 ? -D : D;
    auto B = bernoulli_table(j);
    Rational s = 0;
    for (long long a = 1; a <= f; ++a) {
        int c = kronecker_symbol(D, a);
        if (c == 0) continue;
        Rational x((long)a, (long)f);
        x.canonicalize();
        Rational bp = 0, xp = 1;
        for (unsigned i = j + 1; i-- > 0;) {
            bp += Rational(binomial(j, i)) * B[i] * xp;
            xp *= x;
        }
        s += c * bp;
    }
    return s * Rational(ipow(Integer((long)f), j - 1));
}

/// L(1-j, chi_D) = -B_{j,chi_D}/j; for D = 1 this is zeta(1-j) (zeta(0) = -1/2).
inline Rational dirichlet_L_negative(long one_minus_j, long long D) {
    if (one_minus_j > 0) throw InvalidArgument("dirichlet_L_negative: argument must be <= 0");
    unsigned j = (unsigned)(1 - one_minus_j);
    if (D == 1 && j == 1) return Rational(-1, 2);
    Rational r = -generalized_bernoulli(j, D) / Rational(j);
    r.canonicalize();
    return r;
}

/// zeta(2j) = (-1)^{j+1} B_{2j} (2 pi)^{2j} / (2 (2j)!) as r * pi^{2j}.
inline PiScaledRational zeta_even(unsigned two_j) {
    if (two_j == 0 || two_j % 2) throw InvalidArgument("zeta_even: positive even argument required");
    unsigned j = two_j / 2;
    Rational r = bernoulli_number(two_j) * Rational(ipow(2, two_j)) / Rational(2 * factorial(two_j));
    if (j % 2 == 0) r = -r;
    r.canonicalize();
    return PiScaledRational(QuadExtScalar(r), 2 * (long)two_j);
}

}  // namespace siegel

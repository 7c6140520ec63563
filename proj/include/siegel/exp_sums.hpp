#pragma once

// Gauss sums, Ramanujan sums and the two exponential-sum routes to
//   B_{r,eta} = sum_{u mod p^r, q(u) = 0 mod p^r} e((eta, u) / p^r).

#include <complex>
#include <cstdlib>
#include <thread>
#include <vector>

#include "cyclotomic.hpp"
#include "quad_space.hpp"

namespace siegel {

inline constexpr unsigned long long kDefaultBudget = 20000000ULL;

/// Brute-force budget, overridable through SIEGEL_BUDGET.
inline unsigned long long default_budget() {
    if (const char* e = std::getenv("SIEGEL_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(e, &end, 10);
        if (end != e && v > 0) return v;
    }
    return kDefaultBudget;
}

inline long long ipow_ll(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

inline int vp_mod(long long x, long p, int r, long long P) {
    x = mod_ll(x, P);
    if (x == 0) return r;
    int j = 0;
    while (x % p == 0) {
        x /= p;
        ++j;
    }
    return j;
}

/// An exact value sign * p^{e2/2} * zeta_M^phase (or zero).
struct GaussSumValue {
    bool zero = true;
    int sign = 1;
    long p = 0;
    int e2 = 0;
    long long phase = 0;
    long long phase_mod = 1;

    static GaussSumValue zero_value(long p) {
        GaussSumValue g;
        g.p = p;
        return g;
    }
    static GaussSumValue make(long p, int sign, int e2, long long num, long long mod) {
        GaussSumValue g;
        g.zero = false;
        g.p = p;
        g.sign = sign;
        g.e2 = e2;
        g.phase_mod = mod;
        g.phase = mod_ll(num, mod);
        return g;
    }

    std::complex<double> to_complex() const {
        if (zero) return 0.0;
        double mag = std::pow((double)p, e2 / 2.0) * sign;
        double ang = 2 * M_PI * (double)phase / (double)phase_mod;
        return std::polar(mag, ang);
    }

    friend GaussSumValue operator*(const GaussSumValue& x, const GaussSumValue& y) {
        if (x.zero || y.zero) return zero_value(x.p);
        long long g = std::gcd(x.phase_mod, y.phase_mod);
        long long M = x.phase_mod / g * y.phase_mod;
        long long num = x.phase * (M / x.phase_mod) + y.phase * (M / y.phase_mod);
        return make(x.p, x.sign * y.sign, x.e2 + y.e2, num, M);
    }

    /// Adds mult * (sign * zeta^phase) to acc, dropping the magnitude p^{e2/2}.
    void add_unit_part(CyclotomicAccumulator& acc, long long mult = 1) const {
        if (zero) return;
        acc.add(phase, phase_mod, sign * mult);
    }
};

/// Adds the exact value g into acc (p^R accumulator); handles half-integral magnitudes.
inline void accumulate_value(CyclotomicAccumulator& acc, const GaussSumValue& g, int R) {
    if (g.zero) return;
    if (g.e2 % 2 == 0) {
        g.add_unit_part(acc, ipow_ll(g.p, g.e2 / 2));
        return;
    }
    CyclotomicAccumulator t(acc.p(), R);
    g.add_unit_part(t, ipow_ll(g.p, (g.e2 - 1) / 2));
    t.multiply_sqrt_p();
    acc += t;
}

// ---------------------------------------------------------------------------
// Gauss sums

/// sum_{u,v mod p^r} e((x u v + a v + b u) / p^r)
inline GaussSumValue bilinear_gauss_sum(long long x, long long a, long long b, long p, int r) {
    if (r < 1) throw InvalidArgument("bilinear_gauss_sum: r >= 1");
    long long P = ipow_ll(p, r);
    a = mod_ll(a, P);
    b = mod_ll(b, P);
    int j = vp_mod(x, p, r, P);
    if (j >= r) {
        if (a == 0 && b == 0) return GaussSumValue::make(p, 1, 4 * r, 0, 1);
        return GaussSumValue::zero_value(p);
    }
    long long pj = ipow_ll(p, j);
    if (a % pj || b % pj) return GaussSumValue::zero_value(p);
    long long T = ipow_ll(p, r - j);
    long long x0 = mod_ll(x, P) / pj;
    long long ap = a / pj, bp = b / pj;
    long long xi = inv_mod(x0, T);
    long long num = -(long long)((__int128)mod_ll(ap, T) * mod_ll(bp, T) % T * xi % T);
    return GaussSumValue::make(p, 1, 2 * (r + j), num, T);
}

/// sum_{u mod p^r} e((x u^2 + 2 a0 u) / p^r), p odd
inline GaussSumValue odd_quadratic_gauss_sum(long long x, long long a0, long p, int r) {
    if (p == 2 || !is_prime(p)) throw InvalidArgument("odd_quadratic_gauss_sum: odd prime required");
    if (r < 1) throw InvalidArgument("odd_quadratic_gauss_sum: r >= 1");
    long long P = ipow_ll(p, r);
    a0 = mod_ll(a0, P);
    int j = vp_mod(x, p, r, P);
    if (j >= r) {
        if (a0 == 0) return GaussSumValue::make(p, 1, 2 * r, 0, 1);
        return GaussSumValue::zero_value(p);
    }
    long long pj = ipow_ll(p, j);
    if (a0 % pj) return GaussSumValue::zero_value(p);
    int t = r - j;
    long long T = ipow_ll(p, t);
    long long c = mod_ll(x, P) / pj;
    long long ap = (a0 / pj) % T;
    long long ci = inv_mod(c, T);
    long long ph = -(long long)((__int128)ap * ap % T * ci % T);
    if (t % 2 == 0) return GaussSumValue::make(p, 1, r + j, ph, T);
    // (c/p) sqrt((-1/p)) p^{(r+j)/2}; sqrt(-1) = i = zeta_4
    int s = kronecker_symbol(c, (long long)p);
    long long M = 4 * T;
    long long num = ph * 4 + ((p % 4 == 3) ? T : 0);
    return GaussSumValue::make(p, s, r + j, num, M);
}

/// G(x, a) = sum_{u mod 2^r} e((x u^2 + 2 a u) / 2^r)
inline GaussSumValue two_adic_gauss_sum(long long x, long long a, int r) {
    if (r < 1) throw InvalidArgument("two_adic_gauss_sum: r >= 1");
    long long P = 1LL << r;
    int j = vp_mod(x, 2, r, P);
    long long twoa = mod_ll(2 * a, P);
    if (j >= r) {
        if (twoa == 0) return GaussSumValue::make(2, 1, 2 * r, 0, 1);
        return GaussSumValue::zero_value(2);
    }
    long long pj = 1LL << j;
    if (twoa % pj) return GaussSumValue::zero_value(2);
    int t = r - j;
    long long T = 1LL << t;
    long long x0 = mod_ll(x, P) >> j;
    long long app = (twoa >> j) % T;  // a'' = 2a / 2^j mod 2^t
    if (t == 1) {
        if (app % 2 == 1) return GaussSumValue::make(2, 1, 2 * r, 0, 1);
        return GaussSumValue::zero_value(2);
    }
    if (app % 2 == 1) return GaussSumValue::zero_value(2);
    long long ap = app / 2;
    long long xi = inv_mod(x0, T);
    long long ph = -(long long)((__int128)ap * ap % T * xi % T);
    // (1 + i^{x0}) = sqrt2 * zeta_8^{+-1}
    int s = (t % 2 == 1) ? kronecker_symbol(x0, 2LL) : 1;
    long long M = std::max<long long>(T, 8);
    long long num = ph * (M / T) + ((x0 % 4 == 1) ? 1 : -1) * (M / 8);
    return GaussSumValue::make(2, s, r + j + 1, num, M);
}

/// Ramanujan-type sum over units c mod p^t of e(c A / p^t).
inline Integer ramanujan_sum(int t, const Integer& A, long p) {
    if (t < 1) throw InvalidArgument("ramanujan_sum: t >= 1");
    Integer pt = ipow(p, t), pt1 = ipow(p, t - 1);
    if (A == 0 || mpz_divisible_p(A.get_mpz_t(), pt.get_mpz_t())) return pt - pt1;
    if (mpz_divisible_p(A.get_mpz_t(), pt1.get_mpz_t())) return -pt1;
    return 0;
}

/// Same evaluation from v = v_p(A) (v < 0 meaning A = 0).
inline Integer ramanujan_sum_v(int t, int v, long p) {
    if (v < 0 || v >= t) return ipow(p, t) - ipow(p, t - 1);
    if (v == t - 1) return -ipow(p, t - 1);
    return 0;
}

/// sum_{x odd mod 2^T} e(-x m / 2^T) (2/x)^T (1 + i^x), closed form.
inline QuadExtScalar tsum(int T, const Integer& m) {
    if (T < 2) throw InvalidArgument("tsum: T >= 2");
    Integer PT = ipow(2, T);
    Integer mm = floor_mod(m, PT);
    int v = mm == 0 ? T + 100 : valuation(mm, 2);
    auto odd_part = [&](int s) { return Integer(mm / ipow(2, s)); };
    if (T == 2) {
        if (v >= 2) return QuadExtScalar(2);
        if (v == 1) return QuadExtScalar(-2);
        return QuadExtScalar(floor_mod(mm, 4) == 1 ? 2 : -2);
    }
    if (T == 3) {
        if (v != 0) return QuadExtScalar(0);
        int c2 = kronecker_symbol(mm, 2LL);
        int cm1 = floor_mod(mm, 4) == 1 ? 1 : -1;
        return QuadExtScalar::half_power(2, 3) * QuadExtScalar(c2 * (1 + cm1));
    }
    if (T % 2 == 0) {
        if (v >= T) return QuadExtScalar(Integer(ipow(2, T) - ipow(2, T - 1)));
        if (v == T - 1) return QuadExtScalar(Integer(-ipow(2, T - 1)));
        if (v == T - 2) {
            int cm1 = floor_mod(odd_part(T - 2), 4) == 1 ? 1 : -1;
            return QuadExtScalar(Integer(cm1 * ipow(2, T - 1)));
        }
        return QuadExtScalar(0);
    }
    if (v == T - 3) {
        Integer mp = odd_part(T - 3);
        int c2 = kronecker_symbol(mp, 2LL);
        int cm1 = floor_mod(mp, 4) == 1 ? 1 : -1;
        return QuadExtScalar::half_power(2, 2 * T - 3) * QuadExtScalar(c2 * (1 + cm1));
    }
    return QuadExtScalar(0);
}

/// The literal defining sum of tsum, evaluated exactly.
inline QuadExtScalar tsum_literal(int T, long long m) {
    CyclotomicAccumulator acc(2, T);
    long long PT = 1LL << T;
    long long N = acc.order();
    for (long long x = 1; x < PT; x += 2) {
        int s = (T % 2) ? kronecker_symbol(x, 2LL) : 1;
        long long base = -(long long)((__int128)x * mod_ll(m, PT) % PT) * (N / PT);
        acc.add_index(base, s);
        acc.add_index(base + (x % 4) * (N / 4), s);
    }
    auto c = acc.reduced();
    // value lies in Z + Z sqrt 2; sqrt2 = zeta_8 + zeta_8^{-1} = zeta_8 - zeta_8^3 (mod Phi)
    long long s8 = N / 8;
    for (size_t k = 1; k < c.size(); ++k)
        if (c[k] && (long long)k != s8 && (long long)k != 3 * s8)
            throw NonIntegralResult("tsum_literal: value outside Q(sqrt 2)");
    if (c[s8] != -c[3 * s8]) throw NonIntegralResult("tsum_literal: value outside Q(sqrt 2)");
    return QuadExtScalar(Rational((long)c[0]), Rational((long)c[s8]), 2);
}

// ---------------------------------------------------------------------------
// B_{r,eta} by brute force

inline Integer b_r_bruteforce(const EtaVector& eta, long p, int r, unsigned long long budget = default_budget()) {
    if (r == 0) return 1;
    const SplitQuadraticSpace& sp = eta.space;
    ResidueVectorRange range(sp, p, r, budget);
    const long long P = range.modulus();
    const int dim = sp.dim();
    const int m = sp.m;
    // per coordinate: partner index for q and weight in the pairing
    std::vector<long long> w(dim);
    for (int i = 0; i < m; ++i) {
        w[i] = mod_ll(eta.coords[m + i], P);      // u_i pairs with b_i
        w[m + i] = mod_ll(eta.coords[i], P);      // v_i pairs with a_i
    }
    if (sp.odd()) w[2 * m] = mod_ll(2 * eta.coords[2 * m], P);
    auto partner = [&](int i) { return i < m ? i + m : (i < 2 * m ? i - m : i); };

    auto run = [&](long long first_lo, long long first_hi, std::vector<long long>& counts) {
        std::vector<long long> u(dim, 0);
        u[0] = first_lo;
        long long q = 0, pr = mod_ll(first_lo * w[0], P);
        while (true) {
            if (q == 0) counts[pr]++;
            // odometer step on coordinates dim-1 .. 0
            int i = dim - 1;
            for (;; --i) {
                long long old = u[i];
                long long nw = old + 1;
                bool wrap = nw == P;
                if (wrap) nw = 0;
                if (i == 0 && (wrap || nw >= first_hi)) return;
                long long d = nw - old;
                int j = partner(i);
                if (j == i)
                    q = mod_ll(q + (nw * nw - old * old) % P, P);
                else
                    q = mod_ll(q + d % P * u[j], P);
                pr = mod_ll(pr + mod_ll(d, P) * w[i], P);
                u[i] = nw;
                if (!wrap) break;
            }
        }
    };

    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<long long> counts(P, 0);
    if (range.size() > 100000ULL && threads > 1 && P > 1) {
        unsigned nt = std::min<unsigned long long>(threads, P);
        std::vector<std::vector<long long>> part(nt, std::vector<long long>(P, 0));
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t) {
            long long lo = P * t / nt, hi = P * (t + 1) / nt;
            pool.emplace_back([&, lo, hi, t] { run(lo, hi, part[t]); });
        }
        for (auto& th : pool) th.join();
        for (auto& pc : part)
            for (long long c = 0; c < P; ++c) counts[c] += pc[c];
    } else {
        run(0, P, counts);
    }
    CyclotomicAccumulator acc(p, r);
    for (long long c = 0; c < P; ++c)
        if (counts[c]) acc.add(c, P, counts[c]);
    auto v = acc.as_integer();
    if (!v) throw NonIntegralResult("b_r_bruteforce: character sum is not a rational integer");
    return Integer((long)*v);
}

// ---------------------------------------------------------------------------
// B_{r,eta} through the Gauss-sum factorization over x mod p^r

/// Product over the factors of the u-sum for a fixed x.
inline GaussSumValue gauss_product(const EtaVector& eta, long p, int r, long long x) {
    const int m = eta.space.m;
    GaussSumValue g = GaussSumValue::make(p, 1, 0, 0, 1);
    for (int i = 0; i < m && !g.zero; ++i) g = g * bilinear_gauss_sum(x, eta.a(i), eta.b(i), p, r);
    if (eta.space.odd() && !g.zero) {
        if (p == 2)
            g = g * two_adic_gauss_sum(x, eta.a0(), r);
        else
            g = g * odd_quadratic_gauss_sum(x, eta.a0(), p, r);
    }
    return g;
}

inline Integer b_r_reduced(const EtaVector& eta, long p, int r, unsigned long long budget = default_budget()) {
    if (r == 0) return 1;
    long long P = ipow_ll(p, r);
    unsigned long long cost = (unsigned long long)P * (eta.space.m + 1);
    if (cost > budget) throw BudgetExceeded("b_r_reduced: p^r too large for budget");
    Integer total = 0;
    // classes of x by j = v_p(x); each class shares one magnitude
    for (int j = 0; j <= r; ++j) {
        int t = j >= r ? 0 : r - j;
        CyclotomicAccumulator acc(p, std::max(t, 1));
        int e2 = -1;
        bool any = false;
        long long pj = ipow_ll(p, j);
        long long T = ipow_ll(p, t);
        for (long long c = (j >= r ? 0 : 1); c < std::max<long long>(T, 1); ++c) {
            if (j < r && c % p == 0) continue;
            long long x = j >= r ? 0 : pj * c;
            GaussSumValue g = gauss_product(eta, p, r, x);
            if (g.zero) continue;
            if (e2 >= 0 && g.e2 != e2) throw NonIntegralResult("b_r_reduced: inconsistent magnitude in class");
            e2 = g.e2;
            g.add_unit_part(acc);
            any = true;
            if (j >= r) break;
        }
        if (!any) continue;
        if (e2 % 2) acc.multiply_sqrt_p();
        auto v = acc.as_integer();
        if (!v) throw NonIntegralResult("b_r_reduced: class sum is not a rational integer");
        total += Integer((long)*v) * ipow(p, e2 / 2);
    }
    Integer Pz = ipow(p, r);
    if (!mpz_divisible_p(total.get_mpz_t(), Pz.get_mpz_t()))
        throw NonIntegralResult("b_r_reduced: sum not divisible by p^r");
    return total / Pz;
}

}  // namespace siegel

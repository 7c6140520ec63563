#pragma once

// Fourier coefficients of the Eisenstein series E_l and of the lift F_f,
// formal Fourier-Jacobi coefficients, and local standard L-factors.

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <map>
#include <string>
#include <vector>

#include "arch_num.hpp"
#include "eigenforms.hpp"
#include "siegel_series.hpp"

namespace siegel {

using Decimal50 = boost::multiprecision::cpp_dec_float_50;

struct LiftContext {
    SplitQuadraticSpace space;
    int l = 0;
    int k = 0;  // weight of f
    EigenformData f;
    bool f_builtin = false;
    std::map<long, Rational> cmap;

    LiftContext() = default;
    LiftContext(int n, int l_) : space(n), l(l_) {
        if (l % 2) throw WeightOutOfRange("l must be even, got " + std::to_string(l));
        if (l <= n + 1) throw WeightOutOfRange("l > n + 1 required");
        k = space.odd() ? 2 * l - n + 1 : l - (n - 2) / 2;
    }

    /// Attach the eigenform of weight k spanning S_k (dimension one only).
    void use_builtin_eigenform(int N = 64) {
        f = eigenform(k, N);
        f_builtin = true;
    }
    void use_eigenform(const EigenformData& g) {
        if (g.k != k)
            throw WeightOutOfRange("eigenform weight " + std::to_string(g.k) + " does not match k = " + std::to_string(k));
        f = g;
        f_builtin = false;
    }

    Integer lambda(long m) {
        if (f.k == 0) throw InvalidArgument("LiftContext: no eigenform attached");
        if (m > f.precision()) {
            if (!f_builtin) (void)f(m);  // throws InsufficientPrecision
            f = eigenform(k, std::max<long>(2 * m, 64));
        }
        return f(m);
    }
};

// ---------------------------------------------------------------------------
// Eisenstein coefficients
//
// Specialization table (s = l + 1 in X = p^{m-s}, written through the
// displayed forms):
//   n even:  Q at X = p^{l-n/2};  Qtilde at X = p^{(l-n/2)/2} with q^{(l-n/2)/2}
//   n odd:   Qtilde at X = p^{l-n/2}, i.e. Q at X = p^{l-(n+1)/2} after the
//            sqrt(p) rescaling inside Qtilde

inline PiScaledRational eisenstein_constant_even(int l, int n) {
    int z = l + 1 - n / 2;
    if (z < 2 || z % 2) throw WeightOutOfRange("zeta(" + std::to_string(z) + ") is not at a positive even integer");
    PiScaledRational zeta = zeta_even(z);
    return PiScaledRational(QuadExtScalar(1), 2 * (2 * l + 1 - n / 2)) / zeta;
}

/// C'_{l,n} = (-1)^{(3n+1)/2} 2^{l-(n-1)/2} pi^{l+1/2} (2l-n+1)! / (B_{2l-n+1} (l-(n+1)/2)!)
inline PiScaledRational eisenstein_constant_odd(int l, int n) {
    int b = 2 * l - n + 1;
    if (l - (n + 1) / 2 < 0) throw WeightOutOfRange("l >= (n+1)/2 required");
    Rational c = Rational(factorial(b)) * Rational(ipow(2, l - (n - 1) / 2)) /
                 (bernoulli_number(b) * Rational(factorial(l - (n + 1) / 2)));
    if (((3 * n + 1) / 2) % 2) c = -c;
    c.canonicalize();
    return PiScaledRational(QuadExtScalar(c), 2 * l + 1);
}

/// Value of Q at p^e.
inline Rational evaluate_Q(const RatLaurent& Q, long p, long e) {
    Rational x = rpow(Rational(p), e), acc = 0, xp = 1;
    for (int a = 0; a <= Q.max_exp(); ++a) {
        acc += Q.coeff(a) * xp;
        xp *= x;
    }
    return acc;
}

inline void require_positive_q(const Integer& q) {
    if (q == 0) throw ZeroQ();
    if (q < 0) throw InvalidArgument("q(eta) > 0 required");
}

struct EisensteinDetail {
    PiScaledRational value;
    PiScaledRational constant;
    QuadExtScalar local_product;  // prod Q (even) or f^{l-n/2} prod Qtilde (odd)
    Rational L_value;             // odd only
    Integer fundamental;          // odd only
    bool forms_agree = true;      // even: the two displayed forms coincide
};

inline EisensteinDetail eisenstein_detail(int l, const EtaVector& eta) {
    const auto& sp = eta.space;
    const int n = sp.n;
    if (l % 2 || l <= n + 1) throw WeightOutOfRange("l even and > n + 1 required");
    Integer q = qform(eta);
    require_positive_q(q);
    EisensteinDetail d;
    if (!sp.odd()) {
        d.constant = eisenstein_constant_even(l, n);
        const int e = l - n / 2;
        Rational prodQ = 1, prodT = 1;
        for (long p : prime_divisors(q)) {
            auto inv = local_invariants(eta, p);
            RatLaurent Q = closed_Q_even(inv, sp.m);
            prodQ *= evaluate_Q(Q, p, e);
            // q^{e/2} Qtilde(p^{e/2}) = p^{d e} Q(p^{-e})
            prodT *= rpow(Rational(p), (long)inv.v() * e) * evaluate_Q(Q, p, -e);
        }
        d.forms_agree = prodQ == prodT;
        if (!d.forms_agree) throw NotSymmetric("eisenstein: displayed forms disagree");
        d.local_product = QuadExtScalar(prodQ);
        d.value = d.constant * PiScaledRational(d.local_product, 0);
        return d;
    }
    d.constant = eisenstein_constant_odd(l, n);
    DiscDecomposition dd = disc_decompose(q);
    d.fundamental = dd.fundamental;
    const long j = l - (n - 1) / 2;  // L(1 - j, chi)
    d.L_value = dirichlet_L_negative(1 - j, dd.fundamental.get_si());
    // f^{e} prod_p Qtilde_p(p^{e}), e = (2l - n)/2; collect p^{E/2}
    Rational rat = 1;
    long radicand = 1;
    auto primes = prime_divisors(q);
    if (std::find(primes.begin(), primes.end(), 2L) == primes.end()) primes.insert(primes.begin(), 2L);
    for (long p : primes) {
        auto data = siegel_local_data(eta, p);
        int D = expected_Q_degree(data.inv, Parity::Odd);
        int vf = valuation(dd.f_eta.get_num(), p) - valuation(dd.f_eta.get_den(), p);
        long E = (long)(2 * l - n) * (vf - D / 2);  // exponent of p in halves
        long half = E >= 0 ? E / 2 : -((-E + 1) / 2);
        rat *= evaluate_Q(data.Q, p, l - (n + 1) / 2) * rpow(Rational(p), half);
        if (E - 2 * half) radicand *= p;
    }
    d.local_product = radicand == 1 ? QuadExtScalar(rat) : QuadExtScalar(0, rat, radicand);
    d.value = d.constant * PiScaledRational(QuadExtScalar(d.L_value) * d.local_product, 0);
    return d;
}

inline PiScaledRational eisenstein_coefficient(int l, const EtaVector& eta) { return eisenstein_detail(l, eta).value; }

// ---------------------------------------------------------------------------
// lift coefficients

/// p^{d(k-1)/2} Qtilde(alpha_p) as a polynomial in lambda(p); exact.
inline Rational local_lift_factor_even(const QuadLaurent& Qt, int d, const Integer& lambda_p, long p, int k) {
    QuadLaurent R = laurent_symmetric_rewrite(Qt);
    Rational acc = 0;
    for (auto& [e, c] : R.terms()) {
        if ((d - e) % 2) throw NotSymmetric("lift: parity mismatch in symmetric rewrite");
        acc += c.rational() * Rational(ipow(lambda_p, e)) * rpow(Rational(p), (long)(d - e) / 2 * (k - 1));
    }
    return acc;
}

inline Rational lift_coefficient_even(LiftContext& ctx, const EtaVector& eta) {
    if (ctx.space.odd()) throw OddParityUnsupported("lift_coefficient_even: n must be even");
    Integer q = qform(eta);
    require_positive_q(q);
    Rational A = 1;
    for (long p : prime_divisors(q)) {
        auto inv = local_invariants(eta, p);
        RatLaurent Q = closed_Q_even(inv, ctx.space.m);
        QuadLaurent Qt = normalize_Qtilde(Q, inv, Parity::Even);
        A *= local_lift_factor_even(Qt, inv.v(), ctx.lambda(p), p, ctx.k);
    }
    if (!is_integer(A)) throw NonIntegralResult("lift coefficient not integral: " + to_string(A));
    return A;
}

/// Same value by floating evaluation at a root alpha of X + 1/X = a_f(p); an oracle.
inline double lift_coefficient_even_numeric(LiftContext& ctx, const EtaVector& eta) {
    Integer q = qform(eta);
    require_positive_q(q);
    double A = std::pow(q.get_d(), (ctx.k - 1) / 2.0);
    for (long p : prime_divisors(q)) {
        auto inv = local_invariants(eta, p);
        QuadLaurent Qt = normalize_Qtilde(closed_Q_even(inv, ctx.space.m), inv, Parity::Even);
        double t = ctx.lambda(p).get_d() / std::pow((double)p, (ctx.k - 1) / 2.0);
        std::complex<double> alpha = (t + std::sqrt(std::complex<double>(t * t - 4))) / 2.0;
        std::complex<double> s = 0;
        for (auto& [e, c] : Qt.terms()) s += c.to_double() * std::pow(alpha, e);
        A *= s.real();
    }
    return A;
}

struct LiftValue {
    bool exact = true;
    Rational value;      // when exact
    Decimal50 numeric;   // always filled
    std::string str() const { return exact ? to_string(value) : numeric.str(50); }
};

inline Decimal50 to_decimal(const QuadExtScalar& x) {
    Decimal50 a = Decimal50(x.a().get_num().get_str()) / Decimal50(x.a().get_den().get_str());
    Decimal50 b = Decimal50(x.b().get_num().get_str()) / Decimal50(x.b().get_den().get_str());
    return a + b * boost::multiprecision::sqrt(Decimal50(x.d()));
}

/// c(d) f^{(k-1)/2} prod_{p | q} Qtilde_p(alpha_p).
inline LiftValue lift_coefficient_odd(LiftContext& ctx, const EtaVector& eta) {
    if (!ctx.space.odd()) throw InvalidArgument("lift_coefficient_odd: n must be odd");
    Integer q = qform(eta);
    require_positive_q(q);
    DiscDecomposition dd = disc_decompose(q);
    long dkey = dd.d_eta.get_si();
    const int k = ctx.k;
    Rational cval = 0;
    auto it = ctx.cmap.find(dkey);
    if (it != ctx.cmap.end()) {
        cval = it->second;
    } else {
        // the plus space only carries (-1)^{k/2} m = 0, 1 mod 4
        long s = mod_ll(((k / 2) % 2 ? -dkey : dkey), 4);
        if (s == 0 || s == 1) throw MissingC("no c(" + std::to_string(dkey) + ") in coefficient map");
    }
    std::vector<QuadExtScalar> parts;
    for (long p : prime_divisors(q)) {
        auto data = siegel_local_data(eta, p);
        QuadExtScalar t = QuadExtScalar(ctx.lambda(p)) * QuadExtScalar::half_power(p, -(k - 1));
        QuadExtScalar v = qtilde_value(data.Qtilde, t);
        int vf = valuation(dd.f_eta.get_num(), p) - valuation(dd.f_eta.get_den(), p);
        v *= QuadExtScalar::half_power(p, (long)vf * (k - 1));
        parts.push_back(v);
    }
    // f may carry primes outside q only if f has a denominator, which divides 2 and 2 | q then
    LiftValue out;
    Rational r = cval;
    Decimal50 num = Decimal50(r.get_num().get_str()) / Decimal50(r.get_den().get_str());
    for (auto& v : parts) {
        num *= to_decimal(v);
        if (v.is_rational())
            r *= v.rational();
        else
            out.exact = false;
    }
    out.numeric = num;
    if (out.exact) out.value = r;
    return out;
}

// ---------------------------------------------------------------------------
// formal Fourier-Jacobi coefficient

struct FjcTerm {
    long N = 0;       // index, exponent of q is N
    Integer a;        // a = -N - S sigma(xi, xi)
    Rational value;   // A_f(eta_{a,S,xi})
};

/// eta_{a,S,xi} = (a + S sigma(xi,xi), 0, ..., 0, S) in the antidiagonal frame,
/// i.e. a_1 = -N, b_1 = S in split coordinates with N = -(a + S sigma(xi,xi)).
inline std::vector<FjcTerm> fjc_series(LiftContext& ctx, long S, long xi_sigma, int cutoff) {
    if (ctx.space.odd()) throw OddParityUnsupported("fjc_series: the exact path needs n even");
    if (S == 0) throw InvalidArgument("fjc_series: S != 0");
    if (cutoff < 1) throw InvalidArgument("fjc_series: cutoff >= 1");
    std::vector<FjcTerm> out;
    for (long N = 1; N <= cutoff; ++N) {
        std::vector<long long> x(ctx.space.dim(), 0);
        x.front() = -N;
        x.back() = S;
        EtaVector eta = antidiagonal_to_split(ctx.space, x);
        FjcTerm t;
        t.N = N;
        t.a = Integer(-N) - Integer(S) * Integer(xi_sigma);
        if (qform(eta) <= 0)
            t.value = 0;
        else
            t.value = lift_coefficient_even(ctx, eta);
        out.push_back(t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// standard L-factor

struct EulerFactor {
    long p = 0;
    int degree = 0;
    QuadLaurent poly;  // in T = p^{-s}
};

inline QuadLaurent linear_factor(const QuadExtScalar& root) {
    return QuadLaurent(QuadExtScalar(1)) - QuadLaurent::monomial(1, root);
}

/// even: (1 - T)(1 - (t^2 - 2)T + T^2) prod_{i=-n/2}^{n/2} (1 - p^{-i} T), t^2 = lambda^2 / p^{k-1}
/// odd:  (1 - tT + T^2) prod_{i=0}^{n} (1 - p^{i-n/2} T), t = lambda / p^{(k-1)/2}
inline EulerFactor euler_factor_standard(LiftContext& ctx, long p) {
    if (!is_prime(p)) throw InvalidArgument("euler_factor_standard: p must be prime");
    const int n = ctx.space.n, k = ctx.k;
    Integer lam = ctx.lambda(p);
    EulerFactor E;
    E.p = p;
    QuadLaurent P(QuadExtScalar(1));
    if (!ctx.space.odd()) {
        Rational t2 = Rational(lam * lam) / Rational(ipow(p, k - 1));
        QuadLaurent sym = QuadLaurent(QuadExtScalar(1)) - QuadLaurent::monomial(1, QuadExtScalar(t2 - 2)) +
                          QuadLaurent::monomial(2, QuadExtScalar(1));
        P = linear_factor(QuadExtScalar(1)) * sym;
        for (int i = -n / 2; i <= n / 2; ++i) P *= linear_factor(QuadExtScalar(rpow(Rational(p), -i)));
    } else {
        QuadExtScalar t = QuadExtScalar(lam) * QuadExtScalar::half_power(p, -(k - 1));
        P = QuadLaurent(QuadExtScalar(1)) - QuadLaurent::monomial(1, t) + QuadLaurent::monomial(2, QuadExtScalar(1));
        for (int i = 0; i <= n; ++i) P *= linear_factor(QuadExtScalar::half_power(p, 2 * i - n));
    }
    E.poly = P;
    E.degree = P.max_exp();
    return E;
}

/// Same polynomial from power sums of the reciprocal roots via Newton's identities,
/// with alpha^j + alpha^{-j} taken from lambda(p^j).
inline QuadLaurent euler_factor_newton(LiftContext& ctx, long p) {
    const int n = ctx.space.n, k = ctx.k;
    const bool odd = ctx.space.odd();
    const int d = odd ? n + 3 : n + 4;
    Integer lam = ctx.lambda(p);
    // s_j = alpha^j + alpha^{-j} = (lambda(p^j) - p^{k-1} lambda(p^{j-2})) / p^{j(k-1)/2}
    auto sym_power = [&](int j) -> QuadExtScalar {
        if (j == 0) return QuadExtScalar(2);
        Integer num = satake_hecke_power(lam, k, p, j);
        if (j >= 2) num -= ipow(p, k - 1) * satake_hecke_power(lam, k, p, j - 2);
        return QuadExtScalar(num) * QuadExtScalar::half_power(p, -(long)j * (k - 1));
    };
    std::vector<QuadExtScalar> ps(d + 1);
    for (int j = 1; j <= d; ++j) {
        QuadExtScalar s = 0;
        if (odd) {
            s = sym_power(j);
            for (int i = 0; i <= n; ++i) s += QuadExtScalar::half_power(p, (long)j * (2 * i - n));
        } else {
            s = sym_power(2 * j) + QuadExtScalar(1);
            for (int i = -n / 2; i <= n / 2; ++i) s += QuadExtScalar(rpow(Rational(p), -(long)i * j));
        }
        ps[j] = s;
    }
    // e_j from Newton: j e_j = sum_{i=1}^{j} (-1)^{i-1} e_{j-i} p_i
    std::vector<QuadExtScalar> e(d + 1);
    e[0] = 1;
    for (int j = 1; j <= d; ++j) {
        QuadExtScalar s = 0;
        for (int i = 1; i <= j; ++i) {
            QuadExtScalar term = e[j - i] * ps[i];
            s += (i % 2) ? term : -term;
        }
        e[j] = s / QuadExtScalar(j);
    }
    QuadLaurent P;
    for (int j = 0; j <= d; ++j) P.set(j, (j % 2) ? -e[j] : e[j]);
    return P;
}

/// c_{d-i} = (-1)^d c_i, equivalent to the reciprocal roots being closed under inversion.
inline bool euler_factor_self_dual(const EulerFactor& E) {
    for (int i = 0; i <= E.degree; ++i) {
        QuadExtScalar a = E.poly.coeff(E.degree - i), b = E.poly.coeff(i);
        if (a != ((E.degree % 2) ? -b : b)) return false;
    }
    return E.poly.coeff(0) == QuadExtScalar(1);
}

// ---------------------------------------------------------------------------
// Whittaker-weighted partial sum

struct WhittakerPartialSum {
    std::vector<cplx> comp;        // v = -l..l
    std::vector<double> magnitude;  // |comp|
    long terms = 0;
};

/// sum over eta = a e_1 + S f_1 with 1 <= aS <= cutoff of A_F(eta) W_{2 pi eta}(t, m).
/// Only this two-coordinate family is summed: the profile is defined through
/// u_eta for exactly these eta.
inline WhittakerPartialSum whittaker_weight_partial_sum(LiftContext& ctx, double t, double x1, double xn,
                                                        double xprime_norm, long cutoff,
                                                        const QuadratureConfig& cfg = {}, long budget = 100000) {
    if (cutoff < 0) throw InvalidArgument("whittaker_weight_partial_sum: cutoff >= 0");
    WhittakerPartialSum out;
    out.comp.assign(2 * ctx.l + 1, cplx(0));
    long count = 0;
    for (long N = 1; N <= cutoff; ++N)
        for (long a = 1; a <= N; ++a)
            if (N % a == 0) count += 2;
    if (count > budget)
        throw BudgetExceeded("whittaker_weight_partial_sum: " + std::to_string(count) + " terms exceed budget " +
                             std::to_string(budget));
    const int m = ctx.space.m;
    for (long N = 1; N <= cutoff; ++N)
        for (long a = 1; a <= N; ++a) {
            if (N % a) continue;
            for (int sg : {1, -1}) {
                long A = sg * a, S = sg * (N / a);
                std::vector<long long> c(ctx.space.dim(), 0);
                c[0] = A;
                c[m] = S;
                EtaVector eta(ctx.space, c);
                double coef = ctx.space.odd() ? lift_coefficient_odd(ctx, eta).numeric.convert_to<double>()
                                              : lift_coefficient_even(ctx, eta).get_d();
                WhittakerPoint P{(double)A, (double)S, t, x1, xn, xprime_norm};
                auto W = whittaker_profile(ctx.l, P, cfg);
                for (size_t i = 0; i < W.comp.size(); ++i) out.comp[i] += coef * W.comp[i];
                ++out.terms;
            }
        }
    for (auto& z : out.comp) out.magnitude.push_back(std::abs(z));
    return out;
}

}  // namespace siegel

#pragma once

// Local Siegel series J(s, eta) = sum_r B_r p^{-rs} for the characteristic
// function of the standard lattice, the polynomial Q with
//   J = (1 - X/p) Q(X)                    n even
//   J = (1 - X^2) / (1 - chi X) Q(X)      n odd
// in X = p^{m-s}, and the symmetric normalization Qtilde.

#include <optional>
#include <string>
#include <vector>

#include "exp_sums.hpp"
#include "laurent.hpp"
#include "quad_space.hpp"

namespace siegel {

// ---------------------------------------------------------------------------
// closed B_r

namespace detail {

inline Integer b_even(const LocalInvariants& inv, int m, int r) {
    const long p = inv.p;
    const int k = inv.k, v = inv.v();
    Integer B = 0;
    if (r <= k) B += ipow(p, 2 * r * m - r);
    for (int j = 0; j <= std::min(k, r - 1); ++j)
        B += ipow(p, r * m - r + j * m) * ramanujan_sum_v(r - j, v - 2 * j, p);
    return B;
}

inline Integer b_odd(const LocalInvariants& inv, int m, int r) {
    const long p = inv.p;
    const int k = inv.k, v = inv.v();
    Integer B = 0;
    if (r <= k) B += ipow(p, 2 * r * m);
    int eps = kronecker_symbol(inv.q1, p);
    for (int j = 0; j <= std::min(k, r - 1); ++j) {
        int t = r - j, vj = v - 2 * j;
        if (t % 2 == 0)
            B += ipow(p, r * m + j * m - t / 2) * ramanujan_sum_v(t, vj, p);
        else if (vj == t - 1)
            B += eps * ipow(p, r * m + j * m + (t - 1) / 2);
    }
    return B;
}

inline Integer b_two_adic(const LocalInvariants& inv, int m, int r) {
    const int k = inv.k, v = inv.v();
    const bool case1 = inv.two_adic_case == 1;
    Integer B = 0;
    if (r <= k + (case1 ? 1 : 0)) B += ipow(2, 2 * m * r);
    QuadExtScalar S = 0;
    for (int j = 0; j <= std::min(k, r - 2); ++j) {
        Integer A = ipow(2, v - 2 * j) * inv.q1;
        S += QuadExtScalar::half_power(2, 2 * (m * (r + j) - r) + r + j) * tsum(r - j, A);
    }
    Rational s = S.rational();
    if (!is_integer(s)) throw NonIntegralResult("b_r_closed: non-integral 2-adic sum " + to_string(s));
    B += s.get_num();
    if (case1 && r == k + 2) {
        int sign = floor_mod(inv.q1, 8) == 1 ? 1 : -1;
        B += sign * ipow(2, m * (2 * r - 1));
    }
    return B;
}

}  // namespace detail

/// B_r from the local invariants. At p = 2 in odd parity inv.two_adic_case
/// must be set (local_invariants does this from the coordinates).
inline Integer b_r_closed(const LocalInvariants& inv, int m, Parity parity, int r) {
    if (r < 0) throw InvalidArgument("b_r_closed: r >= 0");
    if (r == 0) return 1;
    if (parity == Parity::Even) return detail::b_even(inv, m, r);
    if (inv.p != 2) return detail::b_odd(inv, m, r);
    if (inv.two_adic_case != 1 && inv.two_adic_case != 2)
        throw InvalidArgument("b_r_closed: 2-adic case flag missing");
    return detail::b_two_adic(inv, m, r);
}

inline Integer b_r_closed(const EtaVector& eta, long p, int r) {
    return b_r_closed(local_invariants(eta, p), eta.space.m, eta.space.parity, r);
}

/// Index past which every B_r vanishes.
inline int j_degree_bound(const LocalInvariants& inv, Parity parity) {
    if (parity == Parity::Odd && inv.p == 2) return inv.v() + 3;
    return inv.v() + 1;
}

/// J as a polynomial in X_s = p^{-s}.
inline RatLaurent local_J(const LocalInvariants& inv, int m, Parity parity) {
    RatLaurent J;
    int R = j_degree_bound(inv, parity) + 2;
    for (int r = 0; r <= R; ++r) J.set(r, Rational(b_r_closed(inv, m, parity, r)));
    return J;
}

inline RatLaurent local_J(const EtaVector& eta, long p) {
    return local_J(local_invariants(eta, p), eta.space.m, eta.space.parity);
}

// ---------------------------------------------------------------------------
// Q and its normalization

/// Rewrites J(X_s) as a polynomial in X = p^m X_s.
inline RatLaurent j_in_X(const RatLaurent& J, long p, int m) {
    RatLaurent r;
    for (auto& [e, c] : J.terms()) r.set(e, c * rpow(Rational(p), -(long)m * e));
    return r;
}

inline void assert_integral(const RatLaurent& Q, const char* who) {
    for (auto& [e, c] : Q.terms())
        if (!is_integer(c))
            throw NonIntegralCoefficient(std::string(who) + ": coefficient " + to_string(c) + " at X^" +
                                         std::to_string(e));
}

/// Q from J after dividing out the predicted factor; inv.chi is used in odd parity.
inline RatLaurent extract_Q(const RatLaurent& J, const LocalInvariants& inv, int m, Parity parity) {
    RatLaurent JX = j_in_X(J, inv.p, m);
    RatLaurent Q;
    if (parity == Parity::Even) {
        RatLaurent den = RatLaurent(Rational(1)) - RatLaurent::monomial(1, Rational(1, inv.p));
        Q = laurent_divide_exact(JX, den);
    } else {
        RatLaurent num = JX * (RatLaurent(Rational(1)) - RatLaurent::monomial(1, Rational(inv.chi)));
        RatLaurent den = RatLaurent(Rational(1)) - RatLaurent::monomial(2, Rational(1));
        Q = laurent_divide_exact(num, den);
    }
    if (!Q.is_zero() && Q.min_exp() < 0) throw NonIntegralCoefficient("extract_Q: negative exponent");
    assert_integral(Q, "extract_Q");
    return Q;
}

/// Expected degree of Q.
inline int expected_Q_degree(const LocalInvariants& inv, Parity parity) {
    int d = inv.v();
    if (parity == Parity::Even) return d;
    int l = d / 2;
    if (inv.p != 2) return 2 * l;
    return inv.chi == 0 ? 2 * l : 2 * l + 2;
}

inline bool check_functional_equation(const RatLaurent& Q, const LocalInvariants& inv, Parity parity) {
    int D = expected_Q_degree(inv, parity);
    if (Q.is_zero() || Q.min_exp() < 0 || Q.max_exp() != D) return false;
    if (parity == Parity::Even) return Q.inverted().shift(D) == Q;
    // p^{D/2} X^D Q(1/(pX)) = Q, i.e. c_{D-a} = p^{D/2-a} c_a
    for (int a = 0; a <= D; ++a)
        if (Q.coeff(D - a) != Q.coeff(a) * rpow(Rational(inv.p), D / 2 - a)) return false;
    return true;
}

inline QuadLaurent normalize_Qtilde(const RatLaurent& Q, const LocalInvariants& inv, Parity parity) {
    QuadLaurent T;
    int D = expected_Q_degree(inv, parity);
    if (parity == Parity::Even) {
        for (auto& [a, c] : Q.terms()) T.set(D - 2 * a, QuadExtScalar(c));
    } else {
        for (auto& [a, c] : Q.terms()) T.set(a - D / 2, QuadExtScalar(c) * QuadExtScalar::half_power(inv.p, -a));
    }
    if (T.inverted() != T) throw NotSymmetric("normalize_Qtilde: " + T.str());
    return T;
}

/// Qtilde at X with X + 1/X = t.
inline Rational qtilde_value(const QuadLaurent& Qt, const Rational& t) {
    QuadLaurent R = laurent_symmetric_rewrite(Qt);
    QuadExtScalar acc = 0, tp = 1;
    for (int e = 0; e <= R.max_exp(); ++e) {
        acc += R.coeff(e) * tp;
        tp *= QuadExtScalar(t);
    }
    return acc.rational();
}

inline QuadExtScalar qtilde_value(const QuadLaurent& Qt, const QuadExtScalar& t) {
    QuadLaurent R = laurent_symmetric_rewrite(Qt);
    QuadExtScalar acc = 0, tp = 1;
    for (int e = 0; e <= R.max_exp(); ++e) {
        acc += R.coeff(e) * tp;
        tp *= t;
    }
    return acc;
}

inline double qtilde_value(const QuadLaurent& Qt, double t) {
    QuadLaurent R = laurent_symmetric_rewrite(Qt);
    double acc = 0, tp = 1;
    for (int e = 0; e <= R.max_exp(); ++e) {
        acc += R.coeff(e).to_double() * tp;
        tp *= t;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// closed Q

inline RatLaurent closed_Q_even(const LocalInvariants& inv, int m) {
    const long p = inv.p;
    const int k = inv.k, d = inv.v();
    RatLaurent Q;
    for (int a = 0; a <= d; ++a) {
        int top = std::min({a, k, d - a});
        Integer A = 0;
        for (int i = 0; i <= top; ++i) A += ipow(p, (m - 1) * i);
        Q.set(a, Rational(A));
    }
    return Q;
}

inline RatLaurent closed_Q_odd(const LocalInvariants& inv, int m) {
    const long p = inv.p;
    if (p == 2) throw InvalidArgument("closed_Q_odd: p > 2 only");
    const int k = inv.k, d = inv.v();
    RatLaurent Q;
    if (d % 2) {
        for (int b = 0; b <= d - 1; ++b) {
            Integer C = 0;
            for (int u = 0; u <= std::min({b, k, d - 1 - b}); ++u)
                if ((b - u) % 2 == 0) C += ipow(p, m * u + (b - u) / 2);
            Q.set(b, Rational(C));
        }
        return Q;
    }
    const int eps = kronecker_symbol(inv.q1, p);
    for (int b = 0; b <= d; ++b) {
        Integer C = 0;
        for (int j = 0; j <= std::min({b, k, d - b}); ++j)
            C += ((j % 2 && eps == 1) ? -1 : 1) * ipow(p, j * m + (b - j) / 2);
        Q.set(b, Rational((b % 2 && eps == 1) ? Integer(-C) : C));
    }
    return Q;
}

/// sum_{r <= b, b - r even} p^{-mr} B_r
inline Rational series_C(const LocalInvariants& inv, int m, int b) {
    Rational s = 0;
    for (int r = b % 2; r <= b; r += 2) s += Rational(b_r_closed(inv, m, Parity::Odd, r)) * rpow(Rational(inv.p), -(long)m * r);
    return s;
}

/// sum_{r <= b} (-eps)^r p^{-mr} B_r
inline Rational series_C_eps(const LocalInvariants& inv, int m, int b, int eps) {
    Rational s = 0, w = 1;
    for (int r = 0; r <= b; ++r) {
        s += w * Rational(b_r_closed(inv, m, Parity::Odd, r)) * rpow(Rational(inv.p), -(long)m * r);
        w *= -eps;
    }
    return s;
}

// ---------------------------------------------------------------------------
// assembled local data

struct Chi2Trial {
    Chi2Convention convention;
    int chi = 0;
    bool passed = false;
    std::string reason;
};

struct SiegelLocalData {
    LocalInvariants inv;
    int m = 0;
    Parity parity = Parity::Even;
    RatLaurent J;
    RatLaurent Q;
    QuadLaurent Qtilde;
    int degree = 0;
    bool functional_eq = false;
    std::vector<Chi2Trial> chi2_trials;  // p = 2, odd parity
};

/// Q from J. At p = 2 in odd parity every chi(2) convention is tried; the first
/// giving exact division, integral coefficients and the functional equation is
/// kept (Local first). Throws InexactDivision when none passes.
inline RatLaurent extract_Q_arbitrated(const RatLaurent& J, LocalInvariants& inv, int m, Parity parity,
                                       std::vector<Chi2Trial>* trials = nullptr) {
    if (parity == Parity::Even || inv.p != 2) return extract_Q(J, inv, m, parity);
    std::optional<RatLaurent> best;
    LocalInvariants chosen = inv;
    for (auto conv : {Chi2Convention::Local, Chi2Convention::Field, Chi2Convention::Kronecker}) {
        LocalInvariants t = inv;
        t.chi = chi_eta_from(inv, conv);
        Chi2Trial tr{conv, t.chi, false, ""};
        try {
            RatLaurent Q = extract_Q(J, t, m, parity);
            if (check_functional_equation(Q, t, parity)) {
                tr.passed = true;
                if (!best) {
                    best = Q;
                    chosen = t;
                }
            } else {
                tr.reason = "functional equation";
            }
        } catch (const InexactDivision&) {
            tr.reason = "inexact division";
        } catch (const NonIntegralCoefficient&) {
            tr.reason = "non-integral";
        }
        if (trials) trials->push_back(tr);
    }
    if (!best) throw InexactDivision("no chi(2) convention divides J");
    inv = chosen;
    return *best;
}

inline SiegelLocalData siegel_local_data(const EtaVector& eta, long p) {
    SiegelLocalData d;
    d.inv = local_invariants(eta, p);
    d.m = eta.space.m;
    d.parity = eta.space.parity;
    d.J = local_J(d.inv, d.m, d.parity);
    d.Q = extract_Q_arbitrated(d.J, d.inv, d.m, d.parity, &d.chi2_trials);
    d.degree = d.Q.max_exp();
    d.functional_eq = check_functional_equation(d.Q, d.inv, d.parity);
    if (!d.functional_eq) throw NotSymmetric("functional equation fails for Q = " + d.Q.str());
    d.Qtilde = normalize_Qtilde(d.Q, d.inv, d.parity);
    return d;
}

}  // namespace siegel

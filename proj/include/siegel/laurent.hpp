#pragma once

// Laurent polynomials in one variable with exact coefficients.

#include <map>
#include <string>
#include <vector>

#include "exact.hpp"

namespace siegel {

namespace detail {
inline bool is_zero(const Rational& r) { return r == 0; }
inline bool is_zero(const QuadExtScalar& r) { return r.is_zero(); }
inline std::string coeff_str(const Rational& r) { return to_string(r); }
inline std::string coeff_str(const QuadExtScalar& r) { return r.str(); }
}  // namespace detail

template <class C>
class LaurentPolynomial {
public:
    using Map = std::map<int, C>;

    LaurentPolynomial() = default;
    LaurentPolynomial(const C& c) { set(0, c); }  // NOLINT

    static LaurentPolynomial monomial(int e, const C& c = C(1)) {
        LaurentPolynomial r;
        r.set(e, c);
        return r;
    }

    /// From a dense coefficient list c[0] + c[1] X + ...
    static LaurentPolynomial from_coeffs(const std::vector<C>& cs, int shift = 0) {
        LaurentPolynomial r;
        for (size_t i = 0; i < cs.size(); ++i) r.set((int)i + shift, cs[i]);
        return r;
    }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int max_exp() const { return t_.empty() ? 0 : t_.rbegin()->first; }
    int min_exp() const { return t_.empty() ? 0 : t_.begin()->first; }

    C coeff(int e) const {
        auto it = t_.find(e);
        return it == t_.end() ? C(0) : it->second;
    }

    void set(int e, const C& c) {
        if (detail::is_zero(c))
            t_.erase(e);
        else
            t_[e] = c;
    }
    void add(int e, const C& c) { set(e, coeff(e) + c); }

    /// Dense list c[min_exp..max_exp] starting at exponent `from`.
    std::vector<C> dense(int from, int to) const {
        std::vector<C> v;
        for (int e = from; e <= to; ++e) v.push_back(coeff(e));
        return v;
    }

    friend LaurentPolynomial operator+(const LaurentPolynomial& x, const LaurentPolynomial& y) {
        LaurentPolynomial r = x;
        for (auto& [e, c] : y.t_) r.add(e, c);
        return r;
    }
    friend LaurentPolynomial operator-(const LaurentPolynomial& x) {
        LaurentPolynomial r;
        for (auto& [e, c] : x.t_) r.set(e, C(0) - c);
        return r;
    }
    friend LaurentPolynomial operator-(const LaurentPolynomial& x, const LaurentPolynomial& y) { return x + (-y); }
    friend LaurentPolynomial operator*(const LaurentPolynomial& x, const LaurentPolynomial& y) {
        LaurentPolynomial r;
        for (auto& [e1, c1] : x.t_)
            for (auto& [e2, c2] : y.t_) r.add(e1 + e2, c1 * c2);
        return r;
    }
    friend LaurentPolynomial operator*(const C& s, const LaurentPolynomial& x) {
        LaurentPolynomial r;
        for (auto& [e, c] : x.t_) r.set(e, s * c);
        return r;
    }
    LaurentPolynomial& operator+=(const LaurentPolynomial& y) { return *this = *this + y; }
    LaurentPolynomial& operator-=(const LaurentPolynomial& y) { return *this = *this - y; }
    LaurentPolynomial& operator*=(const LaurentPolynomial& y) { return *this = *this * y; }

    friend bool operator==(const LaurentPolynomial& x, const LaurentPolynomial& y) {
        if (x.t_.size() != y.t_.size()) return false;
        auto i = x.t_.begin();
        auto j = y.t_.begin();
        for (; i != x.t_.end(); ++i, ++j)
            if (i->first != j->first || !(i->second == j->second)) return false;
        return true;
    }
    friend bool operator!=(const LaurentPolynomial& x, const LaurentPolynomial& y) { return !(x == y); }

    /// P(X^k) for a nonzero integer k.
    LaurentPolynomial substitute_power(int k) const {
        LaurentPolynomial r;
        for (auto& [e, v] : t_) r.set(e * k, v);
        return r;
    }

    LaurentPolynomial shift(int s) const {
        LaurentPolynomial r;
        for (auto& [e, v] : t_) r.set(e + s, v);
        return r;
    }

    /// P(1/X)
    LaurentPolynomial inverted() const { return substitute_power(-1); }

    template <class T>
    T evaluate(const T& x) const {
        T acc = T(0);
        for (auto& [e, c] : t_) {
            T xp = T(1);
            if (e >= 0)
                for (int i = 0; i < e; ++i) xp = xp * x;
            else
                for (int i = 0; i < -e; ++i) xp = xp / x;
            acc = acc + T(c) * xp;
        }
        return acc;
    }

    std::string str(const std::string& var = "X") const {
        if (t_.empty()) return "0";
        std::string s;
        for (auto& [e, c] : t_) {
            if (!s.empty()) s += " + ";
            s += "(" + detail::coeff_str(c) + ")";
            if (e != 0) s += "*" + var + "^" + std::to_string(e);
        }
        return s;
    }

private:
    Map t_;
};

using RatLaurent = LaurentPolynomial<Rational>;
using QuadLaurent = LaurentPolynomial<QuadExtScalar>;

inline QuadLaurent to_quad(const RatLaurent& p) {
    QuadLaurent r;
    for (auto& [e, c] : p.terms()) r.set(e, QuadExtScalar(c));
    return r;
}

/// Exact division numer / denom of Laurent polynomials; throws InexactDivision
/// carrying the remainder when denom does not divide numer.
template <class C>
LaurentPolynomial<C> laurent_divide_exact(const LaurentPolynomial<C>& numer, const LaurentPolynomial<C>& denom) {
    if (denom.is_zero()) throw InvalidArgument("laurent_divide_exact: zero divisor");
    if (numer.is_zero()) return {};
    // normalize to ordinary polynomials and do long division from the top
    int dshift = denom.min_exp();
    LaurentPolynomial<C> d = denom.shift(-dshift);
    LaurentPolynomial<C> rem = numer;
    LaurentPolynomial<C> quo;
    int dd = d.max_exp();
    C lead = d.coeff(dd);
    int guard = numer.max_exp() - numer.min_exp() + 2;
    while (!rem.is_zero() && rem.max_exp() - rem.min_exp() >= dd && guard-- > 0) {
        int e = rem.max_exp() - dd;
        C c = rem.coeff(rem.max_exp()) / lead;
        quo.set(e, c);
        rem -= LaurentPolynomial<C>::monomial(e, c) * d;
    }
    if (!rem.is_zero()) throw InexactDivision(rem.str());
    return quo.shift(-dshift);
}

/// Polynomial R with R(X + 1/X) = P(X) for a symmetric Laurent polynomial P.
/// R is returned as a LaurentPolynomial with nonnegative exponents in t.
template <class C>
LaurentPolynomial<C> laurent_symmetric_rewrite(const LaurentPolynomial<C>& P) {
    if (P.inverted() != P) throw NotSymmetric("laurent_symmetric_rewrite: P(X) != P(1/X): " + P.str());
    LaurentPolynomial<C> rest = P, R;
    LaurentPolynomial<C> t = LaurentPolynomial<C>::monomial(1) + LaurentPolynomial<C>::monomial(-1);
    while (!rest.is_zero()) {
        int e = rest.max_exp();
        C c = rest.coeff(e);
        R.set(e, c);
        LaurentPolynomial<C> tp(C(1));
        for (int i = 0; i < e; ++i) tp *= t;
        rest -= c * tp;
    }
    return R;
}

}  // namespace siegel

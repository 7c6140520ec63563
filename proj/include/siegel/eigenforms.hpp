#pragma once

// Level one elliptic modular forms as truncated q-expansions.
// Eigenvalues are stored unnormalized: lambda(m) = a_f(m) m^{(k-1)/2}.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "exact.hpp"

namespace siegel {

struct QExpansion {
    int weight = 0;
    std::vector<Rational> a;  // a[0..N]

    int precision() const { return (int)a.size() - 1; }
    Rational coeff(long n) const { return n < (long)a.size() ? a[n] : Rational(0); }

    friend QExpansion operator*(const QExpansion& f, const QExpansion& g) {
        QExpansion h;
        h.weight = f.weight + g.weight;
        int N = std::min(f.precision(), g.precision());
        h.a.assign(N + 1, Rational(0));
        for (int i = 0; i <= N; ++i) {
            if (f.a[i] == 0) continue;
            for (int j = 0; i + j <= N; ++j)
                if (g.a[j] != 0) h.a[i + j] += f.a[i] * g.a[j];
        }
        return h;
    }
    friend QExpansion operator-(const QExpansion& f, const QExpansion& g) {
        QExpansion h = f;
        int N = std::min(f.precision(), g.precision());
        h.a.resize(N + 1);
        for (int i = 0; i <= N; ++i) h.a[i] -= g.a[i];
        return h;
    }
    QExpansion scaled(const Rational& c) const {
        QExpansion h = *this;
        for (auto& x : h.a) x *= c;
        return h;
    }
};

inline QExpansion constant_one(int N) {
    QExpansion f;
    f.a.assign(N + 1, Rational(0));
    f.a[0] = 1;
    return f;
}

inline Integer divisor_power_sum(long n, unsigned e) {
    Integer s = 0;
    for (long d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            s += ipow(d, e);
            if (d * d != n) s += ipow(n / d, e);
        }
    return s;
}

/// E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n
inline QExpansion eisenstein_qexp(int k, int N) {
    if (k < 4 || k % 2) throw UnsupportedWeight("eisenstein_qexp: even weight >= 4 required, got " + std::to_string(k));
    if (N < 0) throw InvalidArgument("eisenstein_qexp: N >= 0");
    Rational c = Rational(-2 * k) / bernoulli_number(k);
    QExpansion f;
    f.weight = k;
    f.a.assign(N + 1, Rational(0));
    f.a[0] = 1;
    for (int n = 1; n <= N; ++n) f.a[n] = c * divisor_power_sum(n, k - 1);
    return f;
}

inline QExpansion delta_qexp(int N) {
    auto E4 = eisenstein_qexp(4, N), E6 = eisenstein_qexp(6, N);
    QExpansion D = (E4 * E4 * E4 - E6 * E6).scaled(Rational(1, 1728));
    D.weight = 12;
    return D;
}

inline int modular_forms_dim(int k) {
    if (k < 0 || k % 2) return 0;
    if (k == 2) return 0;
    return k / 12 + (k % 12 == 2 ? 0 : 1);
}

inline int cusp_forms_dim(int k) { return k >= 4 ? std::max(0, modular_forms_dim(k) - 1) : 0; }

/// Echelon basis f_c = q^c + O(q^dim) from Delta^c E4^a E6^b.
inline std::vector<QExpansion> miller_basis(int k, int N) {
    if (k < 4 || k % 2) throw UnsupportedWeight("miller_basis: even weight >= 4 required");
    int dim = modular_forms_dim(k);
    if (N < dim) throw InsufficientPrecision("miller_basis: N >= dim required");
    auto E4 = eisenstein_qexp(4, N), E6 = eisenstein_qexp(6, N), D = delta_qexp(N);
    std::vector<QExpansion> B;
    for (int c = 0; c < dim; ++c) {
        int w = k - 12 * c;
        int b = w % 4 == 0 ? 0 : 1;
        int a = (w - 6 * b) / 4;
        QExpansion f = constant_one(N);
        for (int i = 0; i < c; ++i) f = f * D;
        for (int i = 0; i < a; ++i) f = f * E4;
        for (int i = 0; i < b; ++i) f = f * E6;
        f.weight = k;
        B.push_back(f);
    }
    // each B[c] starts at q^c with coefficient 1; clear the entries above the diagonal
    for (int c = dim - 1; c >= 0; --c)
        for (int i = 0; i < c; ++i) {
            Rational t = B[i].a[c];
            if (t != 0) B[i] = B[i] - B[c].scaled(t);
        }
    for (auto& f : B) f.weight = k;
    return B;
}

inline std::vector<QExpansion> cusp_basis(int k, int N) {
    auto B = miller_basis(k, N);
    return std::vector<QExpansion>(B.begin() + 1, B.end());
}

/// (T_p f)(n) = a(pn) + p^{k-1} a(n/p) for n <= N_out.
inline QExpansion hecke_tp(const QExpansion& f, long p, int N_out) {
    if (!is_prime(p)) throw InvalidArgument("hecke_tp: p must be prime");
    if ((long)N_out * p > f.precision())
        throw InsufficientPrecision("hecke_tp: need precision " + std::to_string(N_out * p) + ", have " +
                                    std::to_string(f.precision()));
    QExpansion g;
    g.weight = f.weight;
    g.a.assign(N_out + 1, Rational(0));
    Rational pk = Rational(ipow(p, f.weight - 1));
    for (int n = 0; n <= N_out; ++n) {
        g.a[n] = f.a[n * p];
        if (n % p == 0) g.a[n] += pk * f.a[n / p];
    }
    return g;
}

inline QExpansion hecke_tp(const QExpansion& f, long p) { return hecke_tp(f, p, f.precision() / (int)p); }

struct EigenformData {
    int k = 0;
    std::vector<Integer> lambda;  // lambda[1..N], lambda[0] unused

    int precision() const { return (int)lambda.size() - 1; }
    const Integer& operator()(long m) const {
        if (m < 1 || m > precision())
            throw InsufficientPrecision("eigenform: lambda(" + std::to_string(m) + ") beyond precision " +
                                        std::to_string(precision()));
        return lambda[m];
    }
};

/// The normalized eigenform spanning S_k when dim S_k = 1.
inline EigenformData eigenform(int k, int N) {
    if (cusp_forms_dim(k) != 1)
        throw UnsupportedWeight("eigenform: dim S_" + std::to_string(k) + " = " + std::to_string(cusp_forms_dim(k)) +
                                ", only one-dimensional cusp spaces are supported");
    N = std::max(N, 2);
    QExpansion f = delta_qexp(N);
    if (k > 12) f = f * eisenstein_qexp(k - 12, N);
    f.weight = k;
    EigenformData e;
    e.k = k;
    e.lambda.assign(N + 1, Integer(0));
    for (int n = 1; n <= N; ++n) {
        if (!is_integer(f.a[n])) throw NonIntegralCoefficient("eigenform: non-integral coefficient");
        e.lambda[n] = f.a[n].get_num();
    }
    if (e.lambda[1] != 1) throw InvalidArgument("eigenform: not normalized");
    // eigen-property at 2 and 3 to the precision available
    for (long p : {2L, 3L}) {
        if (N / p < 1) continue;
        auto g = hecke_tp(f, p);
        for (int n = 1; n <= g.precision(); ++n)
            if (g.a[n] != f.a[n] * f.a[p]) throw InvalidArgument("eigenform: Hecke eigen-property fails");
    }
    return e;
}

/// lambda(p^j) from lambda(p) by the Hecke recursion.
inline Integer satake_hecke_power(const Integer& lambda_p, int k, long p, int j) {
    if (j < 0) throw InvalidArgument("satake_hecke_power: j >= 0");
    Integer prev = 1, cur = lambda_p;
    if (j == 0) return 1;
    Integer pk = ipow(p, k - 1);
    for (int i = 1; i < j; ++i) {
        Integer next = lambda_p * cur - pk * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

inline Integer satake_hecke_power(const EigenformData& f, long p, int j) { return satake_hecke_power(f(p), f.k, p, j); }

/// |lambda(p)| <= 2 p^{(k-1)/2} (1 + slack)
inline bool deligne_ok(const EigenformData& f, long p, double slack = 0.01) {
    double bound = 2 * std::pow((double)p, (f.k - 1) / 2.0) * (1 + slack);
    return std::abs(f(p).get_d()) <= bound;
}

/// Reads lines "m value"; '#' starts a comment.
inline std::map<long, Rational> read_value_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    std::map<long, Rational> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        std::istringstream ss(line);
        long m;
        std::string v;
        if (!(ss >> m)) continue;
        if (!(ss >> v)) throw InvalidArgument(path + ":" + std::to_string(lineno) + ": missing value");
        out[m] = parse_rational(v);
    }
    return out;
}

/// Eigenform data from a "m lambda(m)" file with lambda(1..N) contiguous.
inline EigenformData eigenform_from_file(const std::string& path, int k) {
    auto mp = read_value_map(path);
    EigenformData e;
    e.k = k;
    e.lambda.push_back(0);
    for (long m = 1; mp.count(m); ++m) {
        if (!is_integer(mp[m])) throw NonIntegralCoefficient("eigenform_from_file: lambda must be integral");
        e.lambda.push_back(mp[m].get_num());
    }
    if (e.lambda.size() < 2 || e.lambda[1] != 1) throw InvalidArgument("eigenform_from_file: lambda(1) = 1 required");
    return e;
}

}  // namespace siegel

#pragma once

// Archimedean numerics: K-Bessel by quadrature, the generalized Whittaker
// profile, and the integrals I_v(r, mu, lambda), C(2r, lambda).

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "exact.hpp"
#include "quadrature.hpp"

namespace siegel {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// K-Bessel

/// K_v(y) = 1/2 int_0^oo e^{-y(t+1/t)/2} t^v dt/t = int_0^oo e^{-y cosh u} cosh(v u) du.
/// We integrate e^{-y(cosh u - 1)} cosh(v u) on [0, U] and rescale by e^{-y}.
/// U is the first point with y(cosh U - 1) - |v|U >= 60 and y sinh U - |v| >= 1,
/// so the dropped tail is below e^{-60} while the kept part is >= min(1, 1/sqrt y)/4.
inline double bessel_k(int v, double y, const QuadratureConfig& cfg = {}) {
    if (!(y > 0) || !std::isfinite(y)) throw InvalidArgument("bessel_k: y > 0 required");
    double av = std::abs((double)v);
    auto g = [&](double u) { return y * (std::cosh(u) - 1) - av * u; };
    double U = 0.5;
    while (g(U) < 60 || y * std::sinh(U) - av < 1) U += 0.5;
    auto f = [&](double u) { return std::exp(-y * (std::cosh(u) - 1)) * std::cosh(av * u); };
    auto r = integrate(f, 0.0, U, cfg, "bessel_k");
    return r.value * std::exp(-y);
}

// ---------------------------------------------------------------------------
// Whittaker profile

struct WhittakerPoint {
    double a = 0, S = 0;
    double t = 1;
    double x1 = 0, xn = 0;
    double xprime_norm = 0;  // (x', x') = x' A x'^t / 2

    void validate() const {
        if (!(a * S > 0)) throw InvalidArgument("WhittakerPoint: aS > 0 required");
        if (!(t > 0)) throw InvalidArgument("WhittakerPoint: t > 0 required");
        if (xprime_norm < 0) throw InvalidArgument("WhittakerPoint: (x',x') >= 0 required");
    }
};

/// u_{2 pi eta}(t, m) = -2 pi i {(a t^2 + S) - i S t (x1 + xn) - S t^2 x1 xn + S t^2 (x',x')}.
/// sqrt2 = true multiplies by sqrt 2 (the normalization with the extra factor).
inline cplx u_eta(const WhittakerPoint& P, bool sqrt2 = false) {
    P.validate();
    const cplx I(0, 1);
    double t2 = P.t * P.t;
    cplx inner = (P.a * t2 + P.S) - I * (P.S * P.t * (P.x1 + P.xn)) - P.S * t2 * P.x1 * P.xn + P.S * t2 * P.xprime_norm;
    cplx u = -2 * M_PI * I * inner;
    return sqrt2 ? u * std::sqrt(2.0) : u;
}

/// Which monomial carries the phase (|u|/u)^v.
enum class XYOrdering {
    XPlus,   // (|u|/u)^v K_v X^{l+v} Y^{l-v}
    XMinus,  // (|u|/u)^v K_v X^{l-v} Y^{l+v}
};

inline const char* ordering_name(XYOrdering o) { return o == XYOrdering::XPlus ? "xplus" : "xminus"; }

struct WhittakerProfile {
    int l = 0;
    cplx u;
    std::vector<cplx> comp;  // comp[v + l] = t^{l+1} (|u|/u)^v K_v(|u|), v = -l..l

    cplx component(int v) const { return comp.at(v + l); }

    /// coeffs[j] is the coefficient of X^j Y^{2l-j}
    std::vector<cplx> x_coeffs(XYOrdering o) const {
        std::vector<cplx> c(2 * l + 1);
        for (int v = -l; v <= l; ++v) c[o == XYOrdering::XPlus ? l + v : l - v] = component(v);
        return c;
    }
};

inline WhittakerProfile whittaker_profile(int l, const WhittakerPoint& P, const QuadratureConfig& cfg = {},
                                          bool sqrt2 = false) {
    if (l < 1) throw InvalidArgument("whittaker_profile: l >= 1 required");
    WhittakerProfile W;
    W.l = l;
    W.u = u_eta(P, sqrt2);
    double au = std::abs(W.u);
    cplx ph = au / W.u;  // unit complex number
    double tl = std::pow(P.t, l + 1);
    W.comp.resize(2 * l + 1);
    std::vector<double> K(l + 1);
    for (int v = 0; v <= l; ++v) K[v] = bessel_k(v, au, cfg);
    for (int v = -l; v <= l; ++v) W.comp[v + l] = tl * std::pow(ph, v) * K[std::abs(v)];
    return W;
}

// ---------------------------------------------------------------------------
// Appendix integrals

/// I_v(r, mu, lambda) = int_R t^r e^{-t^2} (z/|z|)^v K_v(|z|) dt, z = (t + i lambda)^2 - mu.
/// |z| >= t^2 - lambda^2 - mu, so beyond R = radius + sqrt(lambda^2 + mu) the
/// integrand is below R^r e^{-R^2} K_v(radius^2) and is dropped.
inline cplx integral_Iv(int v, int r, double mu, double lambda, const QuadratureConfig& cfg = {}) {
    if (!(mu > 0) || !(lambda > 0)) throw InvalidArgument("integral_Iv: mu, lambda > 0 required");
    if (r < 0) throw InvalidArgument("integral_Iv: r >= 0 required");
    double R = cfg.radius + std::sqrt(lambda * lambda + mu);
    QuadratureConfig inner = cfg;
    inner.rel_tol = std::max(cfg.rel_tol * 0.1, 1e-15);
    auto f = [&](double t) -> cplx {
        cplx z = (t + cplx(0, lambda)) * (t + cplx(0, lambda)) - mu;
        double az = std::abs(z);
        return std::pow(t, r) * std::exp(-t * t) * std::pow(z / az, v) * bessel_k(v, az, inner);
    };
    return integrate(f, -R, R, cfg, "integral_Iv").value;
}

/// |(I_v(mu+h) - I_v(mu-h)) / 2h - (I_{v+1} + I_{v-1}) / 2|
inline double appendix_recurrence_check(int v, int r, double mu, double lambda, double h,
                                        const QuadratureConfig& cfg = {}) {
    if (!(h > 0) || !(h < mu)) throw InvalidArgument("appendix_recurrence_check: 0 < h < mu required");
    cplx d = (integral_Iv(v, r, mu + h, lambda, cfg) - integral_Iv(v, r, mu - h, lambda, cfg)) / (2 * h);
    cplx rhs = 0.5 * (integral_Iv(v + 1, r, mu, lambda, cfg) + integral_Iv(v - 1, r, mu, lambda, cfg));
    return std::abs(d - rhs);
}

/// C(2r, lambda) = int_R t^{2r} e^{-t^2} K_0(t^2 + lambda^2) dt by quadrature.
inline double appendix_C_quadrature(int r, double lambda, const QuadratureConfig& cfg = {}) {
    if (r < 0) throw InvalidArgument("appendix_C: r >= 0 required");
    if (!(lambda > 0)) throw InvalidArgument("appendix_C: lambda > 0 required");
    double R = cfg.radius + 2.0 * std::sqrt((double)r);
    QuadratureConfig inner = cfg;
    inner.rel_tol = std::max(cfg.rel_tol * 0.1, 1e-15);
    auto f = [&](double t) { return std::pow(t, 2 * r) * std::exp(-t * t) * bessel_k(0, t * t + lambda * lambda, inner); };
    // even integrand
    return 2 * integrate(f, 0.0, R, cfg, "appendix_C").value;
}

/// p_r (degree r) and q_{r-1} (degree r-1) with
///   C(2r, lambda) = (pi/sqrt 2) e^{x} Gamma(1/2, 2x) p_r(x) + pi lambda e^{-x} q_{r-1}(x),  x = lambda^2,
/// Gamma(1/2, y) = int_y^oo s^{-1/2} e^{-s} ds.
/// Plugging into C_r' - 2 lambda C_r = -(2r-1) lambda C_{r-1} gives
///   p_r' = -(2r-1)/2 p_{r-1},   2x q' + (1-4x) q = 2 p_r - (2r-1) x q_{r-2},
/// solved from the top coefficient down; p_r(0) = q_0/2 falls out at the end.
struct AppendixPQ {
    int r = 0;
    std::vector<Rational> p;  // p[i] = coefficient of x^i, size r+1
    std::vector<Rational> q;  // size r (empty for r = 0)
};

inline AppendixPQ appendix_pq(int r) {
    if (r < 0) throw InvalidArgument("appendix_pq: r >= 0 required");
    AppendixPQ cur;
    cur.p = {Rational(1)};
    for (int s = 1; s <= r; ++s) {
        AppendixPQ nx;
        nx.r = s;
        nx.p.assign(s + 1, Rational(0));
        Rational c = Rational(-(2 * s - 1), 2);
        for (int i = 0; i < s; ++i) nx.p[i + 1] = c * cur.p[i] / Rational(i + 1);
        // rhs_i = 2 p_i - (2s-1) [q_{s-2}]_{i-1}
        auto rhs = [&](int i) {
            Rational v = 2 * nx.p[i];
            if (i >= 1 && i - 1 < (int)cur.q.size()) v -= Rational(2 * s - 1) * cur.q[i - 1];
            return v;
        };
        nx.q.assign(s, Rational(0));
        nx.q[s - 1] = -rhs(s) / 4;
        for (int i = s - 1; i >= 1; --i) nx.q[i - 1] = (Rational(2 * i + 1) * nx.q[i] - rhs(i)) / 4;
        nx.p[0] = nx.q[0] / 2;
        cur = nx;
    }
    return cur;
}

/// ((2r-1)!!)^2 / (8^r r!)
inline Rational appendix_p_at_zero(int r) {
    Integer df = 1;
    for (int i = 1; i <= 2 * r - 1; i += 2) df *= i;
    return Rational(df * df) / Rational(ipow(8, r) * factorial(r));
}

inline double eval_poly(const std::vector<Rational>& c, double x) {
    double s = 0;
    for (int i = (int)c.size() - 1; i >= 0; --i) s = s * x + c[i].get_d();
    return s;
}

/// The closed form with the conventional e^{-s} kernel.
inline double appendix_C_closed(int r, double lambda) {
    auto pq = appendix_pq(r);
    double x = lambda * lambda;
    double A = M_PI / std::sqrt(2.0) * std::exp(x) * std::sqrt(M_PI) * std::erfc(std::sqrt(2.0) * lambda);
    double B = M_PI * lambda * std::exp(-x);
    return A * eval_poly(pq.p, x) + B * eval_poly(pq.q, x);
}

/// The decaying solution of the ODE hierarchy, seeded from the closed C(0, .):
///   C(2r, lambda) = (2r-1) e^{lambda^2} int_lambda^oo s e^{-s^2} C(2r-2, s) ds.
/// Nested quadrature; r = 3 already runs for minutes, so r <= 2.
inline double appendix_C_ode(int r, double lambda, const QuadratureConfig& cfg = {}) {
    if (r < 0) throw InvalidArgument("appendix_C_ode: r >= 0 required");
    if (r == 0) return appendix_C_closed(0, lambda);
    if (r > 2) throw InvalidArgument("appendix_C_ode: r <= 2 supported");
    double top = lambda + cfg.radius;
    auto f = [&](double s) { return s * std::exp(lambda * lambda - s * s) * appendix_C_ode(r - 1, s, cfg); };
    return (2 * r - 1) * integrate(f, lambda, top, cfg, "appendix_C_ode").value;
}

/// Central-difference residual of dC/dlambda - 2 lambda C - sign * (2r-1) lambda C_{r-1}
/// on the quadrature values. sign = -1 is the form the closed solution obeys.
inline double appendix_ode_residual(int r, double lambda, int sign, double h = 1e-3, const QuadratureConfig& cfg = {}) {
    if (r < 1) throw InvalidArgument("appendix_ode_residual: r >= 1 required");
    double d = (appendix_C_quadrature(r, lambda + h, cfg) - appendix_C_quadrature(r, lambda - h, cfg)) / (2 * h);
    double c = appendix_C_quadrature(r, lambda, cfg), cm = appendix_C_quadrature(r - 1, lambda, cfg);
    return std::abs(d - 2 * lambda * c - sign * (2 * r - 1) * lambda * cm);
}

// ---------------------------------------------------------------------------
// Gamma(1/2, .) kernel readings for C(0, lambda)

struct GammaKernelReading {
    std::string name;
    double predicted = 0;
    double rel_residual = 0;
    bool matches = false;
};

/// int_y^oo s^{-1/2} e^{-s^2} ds
inline double gamma_half_sq_kernel(double y, const QuadratureConfig& cfg = {}) {
    if (!(y > 0)) throw InvalidArgument("gamma_half_sq_kernel: y > 0");
    double top = y + cfg.radius;
    return integrate([](double s) { return std::exp(-s * s) / std::sqrt(s); }, y, top, cfg, "gamma_kernel").value;
}

/// Compares quadrature C(0, lambda) against (pi/sqrt 2) Gamma(1/2, 2 lambda^2) read
/// with the e^{-s^2} kernel, the e^{-s} kernel, and the e^{-s} kernel times e^{lambda^2}.
inline std::vector<GammaKernelReading> gamma_kernel_readings(double lambda, const QuadratureConfig& cfg = {},
                                                             double tol = 1e-8) {
    double c = appendix_C_quadrature(0, lambda, cfg);
    double y = 2 * lambda * lambda;
    double conv = std::sqrt(M_PI) * std::erfc(std::sqrt(y));
    double k = M_PI / std::sqrt(2.0);
    std::vector<GammaKernelReading> out = {
        {"exp(-s^2) kernel", k * gamma_half_sq_kernel(y, cfg)},
        {"exp(-s) kernel", k * conv},
        {"exp(-s) kernel times exp(lambda^2)", k * std::exp(lambda * lambda) * conv},
    };
    for (auto& g : out) {
        g.rel_residual = std::abs(g.predicted - c) / std::abs(c);
        g.matches = g.rel_residual < tol;
    }
    return out;
}

/// I_0(2r, mu, lambda) e^{mu}
inline double po_const_ratio(int r, double mu, double lambda, const QuadratureConfig& cfg = {}) {
    return (integral_Iv(0, 2 * r, mu, lambda, cfg) * std::exp(mu)).real();
}

}  // namespace siegel

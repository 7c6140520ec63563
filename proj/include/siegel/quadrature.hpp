#pragma once

// Adaptive Gauss-Kronrod (boost, 15 points) with a certified error check.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "errors.hpp"

namespace siegel {

struct QuadratureConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-15;
    unsigned max_depth = 30;  // bisection depth, so up to 2^depth panels
    double radius = 8.0;      // extra truncation margin for infinite ranges

    void validate() const {
        if (!(rel_tol > 0) || !(abs_tol > 0)) throw InvalidArgument("QuadratureConfig: tolerances must be positive");
        if (!std::isfinite(radius) || radius <= 0) throw InvalidArgument("QuadratureConfig: radius must be finite and > 0");
        if (max_depth == 0) throw InvalidArgument("QuadratureConfig: max_depth >= 1");
    }
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0;  // Kronrod - Gauss estimate
    double l1 = 0;     // integral of |f|
};

/// Integrates f over [a,b]; throws NonConvergence unless the error estimate
/// meets max(rel_tol * L1, abs_tol) (with a factor 10 slack for the estimator).
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureConfig& cfg, const char* what = "integrate") {
    cfg.validate();
    using T = decltype(f(a));
    QuadResult<T> r;
    r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, cfg.max_depth, cfg.rel_tol,
                                                                           &r.error, &r.l1);
    double target = std::max(cfg.rel_tol * r.l1, cfg.abs_tol);
    bool finite;
    if constexpr (std::is_same_v<T, double>)
        finite = std::isfinite(r.value);
    else
        finite = std::isfinite(r.value.real()) && std::isfinite(r.value.imag());
    if (!finite || !(r.error <= 10 * target)) {
        std::ostringstream os;
        os << "NonConvergence in " << what << ": error estimate " << r.error << " exceeds " << target << " on [" << a
           << ", " << b << "]";
        throw NonConvergence(os.str());
    }
    return r;
}

}  // namespace siegel

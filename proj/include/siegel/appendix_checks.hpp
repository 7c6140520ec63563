#pragma once

// Battery of numeric checks on the archimedean integrals; shared by the CLI and acceptance.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "arch_num.hpp"

namespace siegel {

struct AppendixCheckRow {
    std::string check;
    std::string params;
    double residual = 0;
    bool pass = false;
};

inline std::string fmt_g(double x, int prec = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}

struct AppendixCheckOptions {
    double h = 1e-3;
    std::vector<double> mus{0.5, 1.0, 2.0};
    std::vector<double> lambdas{0.5, 1.0, 1.5};
    int rmax = 2;  // I_0(2r) e^mu grid runs over r = 0..rmax
    QuadratureConfig cfg{};
};

inline std::vector<AppendixCheckRow> appendix_checks(const AppendixCheckOptions& o = {}) {
    std::vector<AppendixCheckRow> rows;
    auto add = [&](std::string c, std::string p, double res, bool ok) { rows.push_back({c, p, res, ok}); };
    const auto& cfg = o.cfg;

    // I_0(2r, mu, lambda) e^mu constant in mu, relative spread
    for (int r = 0; r <= o.rmax; ++r)
        for (double lam : o.lambdas) {
            double base = po_const_ratio(r, o.mus.front(), lam, cfg), spread = 0;
            for (double mu : o.mus) spread = std::max(spread, std::abs(po_const_ratio(r, mu, lam, cfg) / base - 1));
            add("po_const_mu_invariance", "r=" + std::to_string(r) + ";lambda=" + fmt_g(lam), spread, spread < 1e-6);
        }
    // what does hold for r >= 1: the mu -> 0 limit is C(2r, lambda)
    for (int r = 1; r <= o.rmax; ++r)
        for (double lam : o.lambdas) {
            double res = std::abs(po_const_ratio(r, 1e-7, lam, cfg) / appendix_C_quadrature(r, lam, cfg) - 1);
            add("po_const_mu_limit", "r=" + std::to_string(r) + ";lambda=" + fmt_g(lam), res, res < 1e-5);
        }
    // odd r vanishes
    for (int r : {1, 3})
        for (double mu : {0.5, 2.0})
            for (double lam : {0.5, 1.5}) {
                double res = std::abs(integral_Iv(0, r, mu, lam, cfg));
                add("iv_odd_r_vanishes",
                    "r=" + std::to_string(r) + ";mu=" + fmt_g(mu) + ";lambda=" + fmt_g(lam), res, res < 1e-10);
            }
    // d/dmu I_v = (I_{v+1} + I_{v-1}) / 2
    for (int v : {0, 1, 2})
        for (int r : {0, 2}) {
            double res = appendix_recurrence_check(v, r, 1.0, 0.8, o.h, cfg);
            add("recurrence", "v=" + std::to_string(v) + ";r=" + std::to_string(r) + ";mu=1;lambda=0.8;h=" + fmt_g(o.h),
                res, res < 1e-4);
        }
    {
        double a = appendix_recurrence_check(1, 2, 1.0, 0.5, 0.2, cfg);
        double b = appendix_recurrence_check(1, 2, 1.0, 0.5, 0.1, cfg);
        double c = appendix_recurrence_check(1, 2, 1.0, 0.5, 0.05, cfg);
        double worst = std::max(std::abs(a / b - 4), std::abs(b / c - 4));
        add("recurrence_order_h2", "v=1;r=2;mu=1;lambda=0.5;h=0.2/0.1/0.05", worst, worst < 0.5);
    }
    // C(2r, lambda): ODE route and closed form vs direct quadrature
    for (int r = 0; r <= 3; ++r)
        for (double lam : {0.3, 1.0, 2.0}) {
            double q = appendix_C_quadrature(r, lam, cfg);
            if (r <= 2) {
                double e1 = std::abs(appendix_C_ode(r, lam, cfg) / q - 1);
                add("C_ode_vs_quadrature", "r=" + std::to_string(r) + ";lambda=" + fmt_g(lam), e1, e1 < 1e-6);
            }
            double e2 = std::abs(appendix_C_closed(r, lam) / q - 1);
            add("C_closed_vs_quadrature", "r=" + std::to_string(r) + ";lambda=" + fmt_g(lam), e2, e2 < 1e-9);
        }
    // sign of the first-order ODE: only the minus sign is satisfied
    for (int r : {1, 2}) {
        double minus = appendix_ode_residual(r, 0.9, -1, 1e-3, cfg);
        double plus = appendix_ode_residual(r, 0.9, +1, 1e-3, cfg);
        add("ode_sign_minus", "r=" + std::to_string(r) + ";lambda=0.9", minus, minus < 1e-5);
        add("ode_sign_plus_rejected", "r=" + std::to_string(r) + ";lambda=0.9", plus, plus > 1e-2);
    }
    // Gamma-kernel convention: exactly one reading must match
    for (double lam : {0.4, 1.0, 1.7}) {
        auto rd = gamma_kernel_readings(lam, cfg);
        int hits = 0;
        double best = 1e300;
        std::string name;
        for (auto& x : rd)
            if (x.matches) {
                ++hits;
                best = x.rel_residual;
                name = x.name;
            }
        if (!hits)
            for (auto& x : rd) best = std::min(best, x.rel_residual);
        add("gamma_kernel", "lambda=" + fmt_g(lam) + ";match=" + (hits == 1 ? name : std::string("none")), best,
            hits == 1 && name == "exp(-s) kernel times exp(lambda^2)");
    }
    return rows;
}

inline const char* appendix_csv_header() { return "check,parameters,residual,pass"; }

inline std::string appendix_csv(const AppendixCheckRow& r) {
    return r.check + "," + r.params + "," + fmt_g(r.residual, 3) + "," + (r.pass ? "true" : "false");
}

}  // namespace siegel

#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>

#include "siegel/arch_num.hpp"

using namespace siegel;

TEST(BesselK, AgainstBoost) {
    for (int v = 0; v <= 4; ++v)
        for (double y : {0.1, 0.25, 0.5, 1.0, 2.0, 3.7, 5.0, 8.0, 12.5, 20.0}) {
            double ref = boost::math::cyl_bessel_k(v, y);
            EXPECT_NEAR(bessel_k(v, y) / ref, 1.0, 1e-8) << v << " " << y;
        }
}

TEST(BesselK, Examples) {
    EXPECT_NEAR(bessel_k(0, 1.0), 0.421024, 1e-6);
    for (double y : {0.3, 2.0, 7.0}) EXPECT_EQ(bessel_k(1, y), bessel_k(-1, y));
    double y = 50;
    EXPECT_NEAR(bessel_k(0, y) * std::exp(y) * std::sqrt(y) / std::sqrt(M_PI / 2), 1.0, 0.01);
    EXPECT_THROW(bessel_k(0, 0.0), InvalidArgument);
    EXPECT_THROW(bessel_k(0, -1.0), InvalidArgument);
}

TEST(BesselK, LargeArgumentNoUnderflowIssue) {
    double y = 600;
    EXPECT_NEAR(bessel_k(2, y) / boost::math::cyl_bessel_k(2, y), 1.0, 1e-8);
}

TEST(UEta, Substitution) {
    WhittakerPoint P{0.7, 1.3, 1.0, 0, 0, 0};
    cplx u = u_eta(P);
    EXPECT_NEAR(u.real(), 0, 1e-15);
    EXPECT_NEAR(u.imag(), -2 * M_PI * 2.0, 1e-12);
    WhittakerPoint Q{1 / (2 * M_PI), 1 / (2 * M_PI), 1.0, 0, 0, 0};
    EXPECT_NEAR(std::abs(u_eta(Q)), 2.0, 1e-14);
    EXPECT_NEAR(std::abs(u_eta(Q, true)), 2.0 * std::sqrt(2.0), 1e-14);
}

TEST(UEta, SignFlipNegates) {
    WhittakerPoint P{0.4, 2.5, 0.8, 0.3, -1.1, 0.6};
    WhittakerPoint M = P;
    M.a = -P.a;
    M.S = -P.S;
    cplx u = u_eta(P), w = u_eta(M);
    // the bracket is linear in (a, S), so u flips sign and the phases pick up (-1)^v
    EXPECT_NEAR(std::abs(w + u), 0, 1e-12);
    EXPECT_NE(u.real(), 0);
    auto Wp = whittaker_profile(2, P), Wm = whittaker_profile(2, M);
    for (int v = -2; v <= 2; ++v)
        EXPECT_NEAR(std::abs(Wm.component(v) - (v % 2 ? -1.0 : 1.0) * Wp.component(v)), 0, 1e-14);
    WhittakerPoint bad{1, -1, 1, 0, 0, 0};
    EXPECT_THROW(u_eta(bad), InvalidArgument);
}

TEST(Whittaker, ComponentSymmetries) {
    WhittakerPoint P{0.2, 0.35, 0.9, 0.4, -0.2, 0.3};
    int l = 4;
    auto W = whittaker_profile(l, P);
    ASSERT_EQ(W.comp.size(), 9u);
    EXPECT_EQ(W.component(0).imag(), 0);
    EXPECT_GT(W.component(0).real(), 0);
    for (int v = 1; v <= l; ++v) {
        EXPECT_NEAR(std::abs(W.component(-v) - std::conj(W.component(v))), 0, 1e-14);
        EXPECT_NEAR(std::abs(W.component(v)), std::pow(P.t, l + 1) * bessel_k(v, std::abs(W.u)), 1e-14);
    }
    // the two orderings are reversals of each other
    auto xp = W.x_coeffs(XYOrdering::XPlus), xm = W.x_coeffs(XYOrdering::XMinus);
    for (int j = 0; j <= 2 * l; ++j) EXPECT_EQ(xp[j], xm[2 * l - j]);
    EXPECT_THROW(whittaker_profile(0, P), InvalidArgument);
}

TEST(Whittaker, DecayWhenDoublingU) {
    // x = 0, t = 1: |u| = 2 pi (a + S)
    double s2 = 2 / (2 * M_PI), s4 = 4 / (2 * M_PI);
    WhittakerPoint P2{s2 / 2, s2 / 2, 1.0, 0, 0, 0}, P4{s4 / 2, s4 / 2, 1.0, 0, 0, 0};
    auto W2 = whittaker_profile(3, P2), W4 = whittaker_profile(3, P4);
    EXPECT_NEAR(std::abs(W2.u), 2, 1e-12);
    EXPECT_NEAR(std::abs(W4.u), 4, 1e-12);
    for (int v = -3; v <= 3; ++v) EXPECT_LE(std::abs(W4.component(v)) / std::abs(W2.component(v)), std::exp(-2.0));
}

TEST(Iv, OddRVanishes) {
    for (int r : {1, 3, 5})
        for (double mu : {0.5, 2.0}) EXPECT_LT(std::abs(integral_Iv(0, r, mu, 0.8)), 1e-10);
}

TEST(Iv, NegativeIndexSymmetry) {
    for (int r : {0, 2})
        for (int v : {1, 2, 3}) {
            cplx a = integral_Iv(v, r, 1.0, 0.7), b = integral_Iv(-v, r, 1.0, 0.7);
            EXPECT_NEAR(std::abs(a - b), 0, 1e-12 * std::max(1.0, std::abs(a)));
            EXPECT_NEAR(a.imag(), 0, 1e-12);
        }
    // odd r: I_{-v} = -I_v, purely imaginary
    cplx a = integral_Iv(1, 1, 1.0, 0.7), b = integral_Iv(-1, 1, 1.0, 0.7);
    EXPECT_NEAR(std::abs(a + b), 0, 1e-12);
    EXPECT_NEAR(a.real(), 0, 1e-12);
}

TEST(Iv, OddRFirstIndexFormula) {
    // I_1(r) = 4 lambda i int_0^oo t^{r+1} e^{-t^2} K_1(|z|)/|z| dt for odd r
    double mu = 0.9, lam = 0.6;
    for (int r : {1, 3}) {
        auto f = [&](double t) {
            double az = std::abs((t + cplx(0, lam)) * (t + cplx(0, lam)) - mu);
            return std::pow(t, r + 1) * std::exp(-t * t) * bessel_k(1, az) / az;
        };
        double J = integrate(f, 0.0, 10.0, QuadratureConfig{}).value;
        cplx I1 = integral_Iv(1, r, mu, lam);
        EXPECT_NEAR(I1.imag(), 4 * lam * J, 1e-10) << r;
    }
}

TEST(Iv, MuInvarianceAtRZero) {
    for (double lam : {0.5, 1.0, 2.0}) {
        double c = appendix_C_quadrature(0, lam);
        for (double mu : {0.5, 1.0, 2.0}) EXPECT_NEAR(po_const_ratio(0, mu, lam) / c, 1.0, 1e-6) << lam << " " << mu;
    }
    // v != 0: I_v(0, mu, lambda) = (-1)^v C(0, lambda) e^{-mu}
    for (int v : {1, 2})
        EXPECT_NEAR(integral_Iv(v, 0, 1.3, 0.8).real() * std::exp(1.3) / appendix_C_quadrature(0, 0.8),
                    v % 2 ? -1.0 : 1.0, 1e-6);
}

TEST(Iv, HigherEvenRIsNotMuInvariant) {
    // I_0(2r) e^{mu} tends to C(2r, lambda) as mu -> 0 but moves with mu for r >= 1;
    // for r = 1 it is affine in mu with slope e^{mu}(I_0 + I_1)
    double lam = 1.0;
    double c2 = appendix_C_quadrature(1, lam);
    EXPECT_NEAR(po_const_ratio(1, 1e-6, lam) / c2, 1.0, 1e-5);
    double f1 = po_const_ratio(1, 1.0, lam), f2 = po_const_ratio(1, 2.0, lam), f3 = po_const_ratio(1, 3.0, lam);
    EXPECT_GT(std::abs(f2 - f1) / f1, 0.1);
    EXPECT_NEAR(f3 - 2 * f2 + f1, 0, 1e-9);
    double slope = ((integral_Iv(0, 2, 2.0, lam) + integral_Iv(1, 2, 2.0, lam)) * std::exp(2.0)).real();
    EXPECT_NEAR(f3 - f2, slope, 1e-9);
}

TEST(Recurrence, Examples) {
    EXPECT_LT(appendix_recurrence_check(0, 0, 1.0, 1.0, 1e-3), 1e-4);
    EXPECT_LT(appendix_recurrence_check(1, 2, 1.0, 0.5, 1e-3), 1e-4);
    EXPECT_LT(appendix_recurrence_check(2, 3, 0.7, 1.2, 1e-3), 1e-4);
    EXPECT_THROW(appendix_recurrence_check(0, 0, 1.0, 1.0, 2.0), InvalidArgument);
}

TEST(Recurrence, SecondOrderInH) {
    double r1 = appendix_recurrence_check(1, 2, 1.0, 0.5, 0.2);
    double r2 = appendix_recurrence_check(1, 2, 1.0, 0.5, 0.1);
    double r3 = appendix_recurrence_check(1, 2, 1.0, 0.5, 0.05);
    EXPECT_GT(r1 / r2, 3.5);
    EXPECT_LT(r1 / r2, 4.5);
    EXPECT_GT(r2 / r3, 3.5);
    EXPECT_LT(r2 / r3, 4.5);
}

TEST(AppendixC, Polynomials) {
    auto pq1 = appendix_pq(1);
    ASSERT_EQ(pq1.p.size(), 2u);
    EXPECT_EQ(pq1.p[0], Rational(1, 8));
    EXPECT_EQ(pq1.p[1], Rational(-1, 2));
    ASSERT_EQ(pq1.q.size(), 1u);
    EXPECT_EQ(pq1.q[0], Rational(1, 4));
    EXPECT_TRUE(appendix_pq(0).q.empty());
    for (int r = 0; r <= 10; ++r) {
        auto pq = appendix_pq(r);
        EXPECT_EQ((int)pq.p.size(), r + 1);
        EXPECT_EQ((int)pq.q.size(), r);
        EXPECT_EQ(pq.p[0], appendix_p_at_zero(r)) << r;
        EXPECT_NE(pq.p[r], 0);
    }
}

TEST(AppendixC, ClosedMatchesQuadrature) {
    for (int r = 0; r <= 4; ++r)
        for (double lam : {0.5, 1.0, 2.0}) {
            double q = appendix_C_quadrature(r, lam), c = appendix_C_closed(r, lam);
            EXPECT_NEAR(c / q, 1.0, 1e-9) << r << " " << lam;
        }
}

TEST(AppendixC, OdeRouteMatchesQuadrature) {
    for (int r : {1, 2})
        for (double lam : {0.5, 1.0, 2.0})
            EXPECT_NEAR(appendix_C_ode(r, lam) / appendix_C_quadrature(r, lam), 1.0, 1e-6) << r << " " << lam;
}

TEST(AppendixC, OdeSign) {
    for (int r : {1, 2})
        for (double lam : {0.5, 1.0}) {
            EXPECT_LT(appendix_ode_residual(r, lam, -1), 1e-5);
            EXPECT_GT(appendix_ode_residual(r, lam, +1), 1e-2);
        }
}

TEST(AppendixC, GammaKernel) {
    for (double lam : {0.5, 1.0, 2.0}) {
        auto g = gamma_kernel_readings(lam);
        ASSERT_EQ(g.size(), 3u);
        EXPECT_FALSE(g[0].matches);
        EXPECT_FALSE(g[1].matches);
        EXPECT_TRUE(g[2].matches) << g[2].rel_residual;
    }
}

TEST(AppendixC, DecaysMonotonically) {
    for (int r : {0, 1, 2}) {
        double prev = appendix_C_quadrature(r, 3.0);
        for (double lam = 3.25; lam <= 6.0; lam += 0.25) {
            double c = appendix_C_quadrature(r, lam);
            EXPECT_LT(c, prev);
            EXPECT_GT(c, 0);
            prev = c;
        }
    }
}

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "siegel/quad_space.hpp"

using namespace siegel;

namespace {

long squarefree_kernel_signed(long x) {
    long s = x < 0 ? -1 : 1, a = std::labs(x);
    for (long p = 2; p * p <= a; ++p)
        while (a % (p * p) == 0) a /= p * p;
    return s * a;
}

bool is_fund_disc_oracle(long D) {
    if (D == 1) return true;
    auto sqf = [](long x) {
        x = std::labs(x);
        for (long p = 2; p * p <= x; ++p)
            if (x % (p * p) == 0) return false;
        return true;
    };
    long r = ((D % 4) + 4) % 4;
    if (r == 1) return sqf(D);
    if (r == 0) {
        long m = D / 4, rm = ((m % 4) + 4) % 4;
        return (rm == 2 || rm == 3) && sqf(m);
    }
    return false;
}

}  // namespace

TEST(QForm, Examples) {
    SplitQuadraticSpace e4(4), o3(3);
    EXPECT_EQ(e4.m, 3);
    EXPECT_EQ(o3.m, 2);
    EXPECT_EQ(qform(EtaVector(e4, {1, 0, 0, 1, 0, 0})), 1);
    EXPECT_EQ(qform(EtaVector(o3, {0, 0, 0, 0, 3})), 9);
    EXPECT_EQ(qform(EtaVector(e4, {2, 3, 0, 5, 7, 0})), 31);
    EXPECT_THROW(qform(e4, {1, 2, 3}), InvalidArgument);
    EXPECT_THROW(EtaVector(e4, {0, 0, 0, 0, 0, 0}), InvalidArgument);
    EXPECT_THROW(SplitQuadraticSpace(2), InvalidArgument);
}

TEST(QForm, AntidiagonalBasisChange) {
    // 1/2 x J x^t with J antidiagonal ones, middle block zero, equals the split form
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> c(-20, 20);
    for (int n : {3, 4, 5, 10})
        for (int i = 0; i < 50; ++i) {
            SplitQuadraticSpace s(n);
            int N = s.dim();
            std::vector<long long> x(N, 0);
            x[0] = c(rng), x[1] = c(rng), x[N - 2] = c(rng), x[N - 1] = c(rng);
            if (x[0] == 0) x[0] = 1;
            long long half = 0;
            for (int a = 0; a < N; ++a) half += x[a] * x[N - 1 - a];
            EXPECT_EQ(qform(antidiagonal_to_split(s, x)), Integer((long)(half / 2)));
        }
}

TEST(LocalInvariants, Examples) {
    SplitQuadraticSpace e6(6), o3(3);  // m = 4 and m = 2
    auto i1 = local_invariants(EtaVector(e6, {1, 0, 0, 0, 1, 0, 0, 0}), 3);
    EXPECT_EQ(i1.k, 0);
    EXPECT_EQ(i1.kprime, 0);
    EXPECT_EQ(i1.q1, 1);
    EXPECT_FALSE(i1.has_chi);
    auto i2 = local_invariants(EtaVector(e6, {3, 0, 0, 0, 3, 0, 0, 0}), 3);
    EXPECT_EQ(i2.k, 1);
    EXPECT_EQ(i2.kprime, 0);
    EXPECT_EQ(i2.q1, 1);
    // a_1 = 1, b_1 = 5 in (a_1, a_2, b_1, b_2, a_0)
    auto i3 = local_invariants(EtaVector(o3, {1, 0, 5, 0, 0}), 5);
    EXPECT_EQ(qform(EtaVector(o3, {1, 0, 5, 0, 0})), 5);
    EXPECT_EQ(i3.k, 0);
    EXPECT_EQ(i3.kprime, 1);
    EXPECT_EQ(i3.q1, 1);
    EXPECT_EQ(i3.chi, 0);
    EXPECT_THROW(local_invariants(EtaVector(e6, {1, 0, 0, 0, 0, 0, 0, 0}), 3), ZeroQ);
    EXPECT_THROW(local_invariants(EtaVector(e6, {1, 0, 0, 0, 1, 0, 0, 0}), 4), InvalidArgument);
}

TEST(LocalInvariants, Scaling) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-12, 12);
    int checked = 0;
    for (int n : {3, 4, 5, 10})
        for (long p : {2L, 3L, 5L})
            for (int i = 0; i < 40; ++i) {
                SplitQuadraticSpace s(n);
                std::vector<long long> v(s.dim());
                for (auto& x : v) x = c(rng);
                bool nz = false;
                for (auto x : v) nz = nz || x;
                if (!nz) continue;
                EtaVector eta(s, v);
                if (qform(eta) == 0) continue;
                auto a = local_invariants(eta, p), b = local_invariants(eta.scaled(p), p);
                EXPECT_EQ(b.k, a.k + 1);
                EXPECT_EQ(b.v(), a.v() + 2);
                EXPECT_EQ(b.q1, a.q1);
                EXPECT_EQ(a.q1 * ipow(p, a.v()), qform(eta));
                ++checked;
            }
    EXPECT_GT(checked, 300);
}

TEST(Chi, Examples) {
    SplitQuadraticSpace o3(3);
    // q = 1: p = 3, q1 = 1
    auto i = local_invariants(EtaVector(o3, {1, 0, 1, 0, 0}), 3);
    EXPECT_EQ(i.chi, 1);
    // q = 17 = 1 mod 8 at p = 2
    auto j = local_invariants(EtaVector(o3, {1, 0, 17, 0, 0}), 2);
    EXPECT_EQ(j.v() % 2, 0);
    EXPECT_EQ(j.chi, 1);
    // q = 2, 2k + k' odd
    auto k = local_invariants(EtaVector(o3, {1, 0, 2, 0, 0}), 2);
    EXPECT_EQ(k.chi, 0);
    // q = 5 = 5 mod 8 at 2 under every convention
    for (auto c : {Chi2Convention::Local, Chi2Convention::Field, Chi2Convention::Kronecker})
        EXPECT_EQ(local_invariants(EtaVector(o3, {1, 0, 5, 0, 0}), 2, c).chi, -1);
    // q = 3: local convention gives 0, literal Kronecker (3/2) = -1
    EXPECT_EQ(local_invariants(EtaVector(o3, {1, 0, 3, 0, 0}), 2, Chi2Convention::Local).chi, 0);
    EXPECT_EQ(local_invariants(EtaVector(o3, {1, 0, 3, 0, 0}), 2, Chi2Convention::Kronecker).chi, -1);
}

TEST(Disc, Examples) {
    auto a = disc_decompose(1);
    EXPECT_EQ(a.d_eta, 1);
    EXPECT_EQ(a.f_eta, 1);
    EXPECT_EQ(a.epsilon, 1);
    auto b = disc_decompose(12);
    EXPECT_EQ(b.d_eta, 3);
    EXPECT_EQ(b.f_eta, 2);
    EXPECT_EQ(b.epsilon, -1);
    EXPECT_EQ(b.fundamental, -3);
    auto c = disc_decompose(8);
    EXPECT_EQ(c.d_eta, 8);
    EXPECT_EQ(c.f_eta, 1);
    EXPECT_EQ(c.epsilon, 1);
    // d | 4N but need not divide N: f is then a half-integer
    auto d = disc_decompose(2);
    EXPECT_EQ(d.d_eta, 8);
    EXPECT_EQ(d.f_eta, Rational(1, 2));
    EXPECT_THROW(disc_decompose(0), InvalidArgument);
}

TEST(Disc, AllUpTo10000) {
    for (long N = 1; N <= 10000; ++N) {
        auto dd = disc_decompose(N);
        ASSERT_EQ(Rational(dd.d_eta) * dd.f_eta * dd.f_eta, Rational(N)) << N;
        ASSERT_TRUE(is_fund_disc_oracle(dd.fundamental.get_si())) << N;
        long n1 = N;
        while (n1 % 2 == 0) n1 /= 2;
        int eps = n1 % 4 == 1 ? 1 : -1;
        ASSERT_EQ(dd.epsilon, eps);
        long s = squarefree_kernel_signed(eps * N);
        long D = ((s % 4) + 4) % 4 == 1 ? s : 4 * s;
        ASSERT_EQ(dd.fundamental, Integer(D)) << N;
        ASSERT_EQ(chi_eta(dd, 3), kronecker_symbol(D, 3));
    }
}

TEST(Residues, Counts) {
    SplitQuadraticSpace e4(4), o3(3);
    auto count = [](const ResidueVectorRange& R) {
        unsigned long long c = 0;
        std::set<std::vector<long long>> seen;
        for (auto& v : R) {
            ++c;
            seen.insert(v);
        }
        EXPECT_EQ(seen.size(), c);
        return c;
    };
    EXPECT_EQ(count(ResidueVectorRange(o3, 2, 1, 1000)), 32u);
    EXPECT_EQ(count(ResidueVectorRange(o3, 3, 1, 1000)), 243u);
    EXPECT_EQ(count(ResidueVectorRange(e4, 2, 1, 1000)), 64u);
    EXPECT_EQ(count(ResidueVectorRange(o3, 3, 2, 100000)), 59049u);
    EXPECT_EQ(residue_vector_count(e4, 3, 2), 531441u);
    EXPECT_THROW(ResidueVectorRange(e4, 5, 3, 1000000), BudgetExceeded);
}

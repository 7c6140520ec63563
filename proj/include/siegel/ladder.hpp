#pragma once

// Three-level oracle ladder for B_r: closed form, Gauss-sum reduction, brute force.

#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "exp_sums.hpp"
#include "siegel_series.hpp"

namespace siegel {

/// eta = p^k eta0 with eta0 primitive and v_p(q(eta0)) = kprime.
/// case1 (p = 2, odd parity): (a, b) even and a_0 odd in eta0, forcing kprime = 0.
/// Uses raw mt19937_64 output so streams agree across standard libraries.
inline EtaVector eta_with_invariants(const SplitQuadraticSpace& sp, long p, int k, int kprime, std::mt19937_64& rng,
                                     bool case1 = false) {
    if (case1 && (p != 2 || !sp.odd() || kprime != 0))
        throw InvalidArgument("eta_with_invariants: case1 needs p = 2, odd parity, kprime = 0");
    const int m = sp.m, dim = sp.dim();
    auto small = [&](long lo, long hi) { return lo + (long)(rng() % (unsigned long long)(hi - lo + 1)); };
    long long pk = ipow_ll(p, k);
    for (int guard = 0; guard < 10000; ++guard) {
        std::vector<long long> c(dim, 0);
        for (auto& x : c) x = small(-6, 6);
        if (case1) {
            for (int i = 0; i < 2 * m; ++i) c[i] *= 2;
            c[2 * m] = 2 * small(-3, 3) + 1;
        } else {
            c[0] = rng() % 2 ? 1 : -1;
            Integer rest = 0;
            for (int i = 1; i < m; ++i) rest += Integer((long)c[i]) * Integer((long)c[m + i]);
            if (sp.odd()) rest += Integer((long)c[2 * m]) * Integer((long)c[2 * m]);
            long u;
            do u = small(1, 8 * p); while (u % p == 0);
            Integer target = ipow(p, kprime) * u;
            if (rng() % 2) target = -target;
            c[m] = Integer((target - rest) * (long)c[0]).get_si();
        }
        for (auto& x : c) x *= pk;
        bool nz = false;
        for (auto x : c) nz = nz || x;
        if (!nz) continue;
        EtaVector eta(sp, c);
        if (qform(eta) == 0) continue;
        auto inv = local_invariants(eta, p);
        if (inv.k == k && inv.kprime == kprime && (!case1 || inv.two_adic_case == 1)) return eta;
    }
    throw InvalidArgument("eta_with_invariants: no vector found");
}

struct LadderCase {
    EtaVector eta;
    long p = 0;
};

struct LadderSpec {
    std::vector<int> ns{4, 10, 3, 5};
    std::vector<long> primes{2, 3, 5};
    int kmax = 2;
    int kpmax = 3;
    int per_combo = 2;
    int extra_r = 3;  // r runs to 2k + k' + extra_r
    int rmax = 1 << 20;
    bool case1 = true;  // add p = 2 Case 1 vectors in odd parity
    std::optional<Parity> parity;
    unsigned long long seed = 20240611ULL;
    unsigned long long budget = default_budget();
};

inline std::vector<LadderCase> ladder_cases(const LadderSpec& s) {
    std::mt19937_64 rng(s.seed);
    std::vector<LadderCase> out;
    for (int n : s.ns) {
        SplitQuadraticSpace sp(n);
        if (s.parity && sp.parity != *s.parity) continue;
        for (long p : s.primes) {
            for (int k = 0; k <= s.kmax; ++k)
                for (int kp = 0; kp <= s.kpmax; ++kp)
                    for (int i = 0; i < s.per_combo; ++i) out.push_back({eta_with_invariants(sp, p, k, kp, rng), p});
            if (s.case1 && p == 2 && sp.odd())
                for (int k = 0; k <= s.kmax; ++k)
                    for (int i = 0; i < s.per_combo; ++i)
                        out.push_back({eta_with_invariants(sp, p, k, 0, rng, true), p});
        }
    }
    return out;
}

struct LadderRow {
    int n = 0;
    long p = 0;
    std::string eta;
    int k = 0, kprime = 0, two_adic_case = 0;
    int r = 0;
    Integer closed;
    std::optional<Integer> reduced, brute;
    std::string status;  // match | mismatch | skipped
};

inline std::string opt_str(const std::optional<Integer>& x) { return x ? x->get_str() : "skipped"; }

/// Rows for r = 0..min(2k+k'+extra_r, rmax). inject_fault adds 1 to the closed value of every r = 1 row.
inline std::vector<LadderRow> ladder_rows(const LadderCase& c, const LadderSpec& s, bool inject_fault = false) {
    auto inv = local_invariants(c.eta, c.p);
    const auto& sp = c.eta.space;
    std::vector<LadderRow> rows;
    int top = std::min(inv.v() + s.extra_r, s.rmax);
    for (int r = 0; r <= top; ++r) {
        LadderRow row;
        row.n = sp.n;
        row.p = c.p;
        row.eta = c.eta.csv();
        row.k = inv.k;
        row.kprime = inv.kprime;
        row.two_adic_case = inv.two_adic_case;
        row.r = r;
        row.closed = b_r_closed(inv, sp.m, sp.parity, r);
        if (inject_fault && r == 1) row.closed += 1;
        try {
            row.reduced = b_r_reduced(c.eta, c.p, r, s.budget);
        } catch (const BudgetExceeded&) {
        }
        try {
            row.brute = b_r_bruteforce(c.eta, c.p, r, s.budget);
        } catch (const BudgetExceeded&) {
        }
        bool ok = (!row.reduced || *row.reduced == row.closed) && (!row.brute || *row.brute == row.closed);
        if (!ok)
            row.status = "mismatch";
        else
            row.status = (row.reduced || row.brute) ? "match" : "skipped";
        rows.push_back(row);
    }
    return rows;
}

inline const char* ladder_csv_header() { return "n,p,eta,k,kprime,case,r,closed,reduced,brute,status"; }

inline std::string ladder_csv(const LadderRow& r) {
    std::ostringstream os;
    os << r.n << "," << r.p << ",\"" << r.eta << "\"," << r.k << "," << r.kprime << "," << r.two_adic_case << "," << r.r
       << "," << r.closed.get_str() << "," << opt_str(r.reduced) << "," << opt_str(r.brute) << "," << r.status;
    return os.str();
}

}  // namespace siegel

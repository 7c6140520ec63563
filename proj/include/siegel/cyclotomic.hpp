#pragma once

// Exact sums of roots of unity with integer coefficients.
//
// For an odd prime p the accumulator lives in Z[i, zeta_{p^R}] and stores
// coefficients of i^a zeta^b (a in 0..3, b mod p^R). For p = 2 it lives in
// Z[zeta_{2^R'}] with R' = max(R, 3), which contains i and sqrt(2).

#include <optional>
#include <vector>

#include "exact.hpp"

namespace siegel {

class CyclotomicAccumulator {
public:
    CyclotomicAccumulator(long p, int R) : p_(p), R_(R) {
        if (!is_prime(p) || R < 0) throw InvalidArgument("CyclotomicAccumulator: bad modulus");
        if (p == 2) {
            R_ = std::max(R, 3);
            pr_ = 1LL << R_;
            counts_.assign(pr_, 0);
        } else {
            pr_ = 1;
            for (int i = 0; i < R; ++i) pr_ *= p;
            counts_.assign(4 * pr_, 0);
        }
    }

    long p() const { return p_; }
    /// Order of the full root of unity group represented: 4 p^R (p odd) or 2^R'.
    long long order() const { return p_ == 2 ? pr_ : 4 * pr_; }

    /// Adds coeff * zeta_M^num where M divides order().
    void add(long long num, long long M, long long coeff) {
        long long N = order();
        if (N % M != 0) throw InvalidArgument("CyclotomicAccumulator: modulus does not divide order");
        long long k = mod_ll(num, M) * (N / M);
        add_index(k, coeff);
    }

    /// Adds coeff * zeta_N^k with N = order().
    void add_index(long long k, long long coeff) {
        if (p_ == 2) {
            counts_[mod_ll(k, pr_)] += coeff;
            return;
        }
        long long N = 4 * pr_;
        k = mod_ll(k, N);
        // zeta_{4P}^k = i^a zeta_P^b with a P + 4 b = k (mod 4P)
        long long a = mod_ll(k * inv_mod(pr_ % 4, 4), 4);
        long long b = pr_ == 1 ? 0 : mod_ll(k * inv_mod(4, pr_), pr_);
        counts_[a * pr_ + b] += coeff;
    }

    long long& raw(long long idx) { return counts_[idx]; }

    CyclotomicAccumulator& operator+=(const CyclotomicAccumulator& o) {
        check_same(o);
        for (size_t i = 0; i < counts_.size(); ++i) counts_[i] += o.counts_[i];
        return *this;
    }

    /// Multiplies in place by sqrt(p).
    void multiply_sqrt_p() {
        std::vector<long long> out(counts_.size(), 0);
        if (p_ == 2) {
            // sqrt 2 = zeta_8 + zeta_8^{-1}
            long long s = pr_ / 8;
            for (long long k = 0; k < pr_; ++k) {
                if (!counts_[k]) continue;
                out[mod_ll(k + s, pr_)] += counts_[k];
                out[mod_ll(k - s, pr_)] += counts_[k];
            }
        } else {
            // sqrt p = u^{-1} g, g = sum_a (a/p) zeta_p^a, u = 1 (p = 1 mod 4) or i
            long long step = pr_ / p_;
            int ushift = (p_ % 4 == 1) ? 0 : 3;
            for (int a = 0; a < 4; ++a)
                for (long long b = 0; b < pr_; ++b) {
                    long long c = counts_[a * pr_ + b];
                    if (!c) continue;
                    int na = (a + ushift) % 4;
                    for (long t = 1; t < p_; ++t) {
                        int ch = kronecker_symbol((long long)t, (long long)p_);
                        out[na * pr_ + mod_ll(b + t * step, pr_)] += ch * c;
                    }
                }
        }
        counts_.swap(out);
    }

    /// Coordinates in the power basis of the field; for odd p two blocks
    /// (coefficients of 1 and of i), each of length phi(p^R).
    std::vector<long long> reduced() const {
        if (p_ == 2) {
            std::vector<long long> c = counts_;
            long long half = pr_ / 2;
            for (long long k = pr_ - 1; k >= half; --k) {
                c[k - half] -= c[k];
                c[k] = 0;
            }
            c.resize(half);
            return c;
        }
        std::vector<long long> re(pr_), im(pr_);
        for (long long b = 0; b < pr_; ++b) {
            re[b] = counts_[b] - counts_[2 * pr_ + b];
            im[b] = counts_[pr_ + b] - counts_[3 * pr_ + b];
        }
        reduce_odd(re);
        reduce_odd(im);
        re.insert(re.end(), im.begin(), im.end());
        return re;
    }

    /// The value as a rational integer, or nullopt if it is not in Z.
    std::optional<long long> as_integer() const {
        auto c = reduced();
        if (p_ == 2) {
            for (size_t k = 1; k < c.size(); ++k)
                if (c[k]) return std::nullopt;
            return c[0];
        }
        for (size_t k = 1; k < c.size(); ++k)
            if (c[k]) return std::nullopt;
        return c[0];
    }

    bool is_zero() const {
        for (auto x : reduced())
            if (x) return false;
        return true;
    }

private:
    void check_same(const CyclotomicAccumulator& o) const {
        if (o.p_ != p_ || o.pr_ != pr_) throw InvalidArgument("CyclotomicAccumulator: modulus mismatch");
    }
    // Reduce modulo Phi_{p^R}(x) = sum_{t<p} x^{t p^{R-1}}.
    void reduce_odd(std::vector<long long>& c) const {
        if (pr_ == 1) return;
        long long step = pr_ / p_;
        long long phi = step * (p_ - 1);
        for (long long k = pr_ - 1; k >= phi; --k) {
            long long v = c[k];
            if (!v) continue;
            for (long t = 1; t < p_; ++t) c[k - t * step] -= v;
            c[k] = 0;
        }
    }

    long p_;
    int R_;
    long long pr_;
    std::vector<long long> counts_;
};

}  // namespace siegel

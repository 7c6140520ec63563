#pragma once

// Split quadratic spaces and lattice vectors eta.
//
// Coordinates are split (hyperbolic): eta = (a_1..a_m, b_1..b_m) for n even and
// (a_1..a_m, b_1..b_m, a_0) for n odd, with
//   q(eta) = sum a_i b_i            (n even, n + 2 = 2m)
//   q(eta) = sum a_i b_i + a_0^2    (n odd,  n + 2 = 2m + 1)
// and the pairing (eta, u) = sum (a_i v_i + b_i u_i) [+ 2 a_0 u_0].

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "exact.hpp"

namespace siegel {

enum class Parity { Even, Odd };

inline const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

struct SplitQuadraticSpace {
    int n = 0;
    int m = 0;
    Parity parity = Parity::Even;

    SplitQuadraticSpace() = default;
    explicit SplitQuadraticSpace(int n_) : n(n_) {
        if (n < 3) throw InvalidArgument("SplitQuadraticSpace: n >= 3 required");
        parity = n % 2 == 0 ? Parity::Even : Parity::Odd;
        m = parity == Parity::Even ? (n + 2) / 2 : (n + 1) / 2;
    }
    int dim() const { return n + 2; }
    bool odd() const { return parity == Parity::Odd; }
};

struct EtaVector {
    SplitQuadraticSpace space;
    std::vector<long long> coords;

    EtaVector() = default;
    EtaVector(const SplitQuadraticSpace& s, std::vector<long long> c) : space(s), coords(std::move(c)) {
        if ((int)coords.size() != space.dim())
            throw InvalidArgument("EtaVector: expected " + std::to_string(space.dim()) + " coordinates, got " +
                                  std::to_string(coords.size()));
        bool nz = false;
        for (auto x : coords) nz = nz || x != 0;
        if (!nz) throw InvalidArgument("EtaVector: zero vector");
    }
    long long a(int i) const { return coords[i]; }
    long long b(int i) const { return coords[space.m + i]; }
    long long a0() const { return space.odd() ? coords[2 * space.m] : 0; }

    EtaVector scaled(long long c) const {
        auto v = coords;
        for (auto& x : v) x *= c;
        return EtaVector(space, v);
    }
    std::string csv() const {
        std::string s;
        for (size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + std::to_string(coords[i]);
        return s;
    }
};

inline Integer qform(const SplitQuadraticSpace& space, const std::vector<long long>& c) {
    if ((int)c.size() != space.dim()) throw InvalidArgument("qform: dimension mismatch");
    Integer q = 0;
    for (int i = 0; i < space.m; ++i) q += Integer((long)c[i]) * Integer((long)c[space.m + i]);
    if (space.odd()) q += Integer((long)c[2 * space.m]) * Integer((long)c[2 * space.m]);
    return q;
}

inline Integer qform(const EtaVector& eta) { return qform(eta.space, eta.coords); }

/// Pairing (eta, u) reduced modulo mod.
inline long long pairing_mod(const EtaVector& eta, const std::vector<long long>& u, long long mod) {
    const int m = eta.space.m;
    __int128 s = 0;
    for (int i = 0; i < m; ++i) s += (__int128)eta.coords[i] * u[m + i] + (__int128)eta.coords[m + i] * u[i];
    if (eta.space.odd()) s += (__int128)2 * eta.coords[2 * m] * u[2 * m];
    long long r = (long long)(s % mod);
    return r < 0 ? r + mod : r;
}

// ---------------------------------------------------------------------------
// local invariants

/// Convention for chi_eta(2) in odd parity.
///   Local:     0 if q1 = 3 mod 4, else (2/q1)  (character of Q_2(sqrt q(eta)))
///   Field:     character of Q(sqrt(eps q(eta))) at 2, eps q1 = 1 mod 4
///   Kronecker: (q1/2) literally
enum class Chi2Convention { Local, Field, Kronecker };

inline const char* chi2_name(Chi2Convention c) {
    switch (c) {
        case Chi2Convention::Local: return "local";
        case Chi2Convention::Field: return "field";
        default: return "kronecker";
    }
}

struct LocalInvariants {
    long p = 0;
    int k = 0;
    int kprime = 0;
    Integer q1;       // q(eta) / p^{2k+k'}
    int chi = 0;      // chi_eta(p), odd parity only
    bool has_chi = false;
    // p = 2, odd parity: 1 if 2^{k+1} | (a, b) and 2^k || a_0, else 2
    int two_adic_case = 0;
    int v() const { return 2 * k + kprime; }
};

inline int chi_eta_from(const LocalInvariants& inv, Chi2Convention conv = Chi2Convention::Local) {
    if (inv.v() % 2) return 0;
    if (inv.p != 2) return kronecker_symbol(inv.q1, inv.p);
    long long r8 = floor_mod(inv.q1, 8).get_si();
    switch (conv) {
        case Chi2Convention::Kronecker: return kronecker_symbol((long long)r8, 2);
        case Chi2Convention::Field: {
            long long e = (r8 % 4 == 1) ? r8 : (8 - r8) % 8;  // eps q1 mod 8
            return e == 1 ? 1 : -1;
        }
        default:
            if (r8 % 4 == 3) return 0;
            return r8 == 1 ? 1 : -1;
    }
}

inline LocalInvariants local_invariants(const EtaVector& eta, long p, Chi2Convention conv = Chi2Convention::Local) {
    if (!is_prime(p)) throw InvalidArgument("local_invariants: p must be prime");
    Integer q = qform(eta);
    if (q == 0) throw ZeroQ();
    LocalInvariants inv;
    inv.p = p;
    int k = 1 << 30;
    for (auto c : eta.coords)
        if (c != 0) k = std::min(k, valuation(c, p));
    inv.k = k;
    int vq = valuation(q, p);
    inv.kprime = vq - 2 * k;
    if (inv.kprime < 0) throw InvalidArgument("local_invariants: inconsistent valuation");
    inv.q1 = q / ipow(Integer(p), (unsigned long)vq);
    if (eta.space.odd()) {
        inv.has_chi = true;
        inv.chi = chi_eta_from(inv, conv);
        if (p == 2) {
            int kab = 1 << 30;
            for (int i = 0; i < 2 * eta.space.m; ++i)
                if (eta.coords[i] != 0) kab = std::min(kab, valuation(eta.coords[i], 2));
            inv.two_adic_case = kab >= k + 1 ? 1 : 2;
        }
    }
    return inv;
}

// ---------------------------------------------------------------------------
// discriminant decomposition

struct DiscDecomposition {
    Integer d_eta;    // |fundamental discriminant of Q(sqrt(eps N))|
    Rational f_eta;   // d f^2 = N; f may be a half-integer when 2 || d-part mismatch
    int epsilon = 1;
    Integer fundamental;  // signed fundamental discriminant eps*d
};

inline DiscDecomposition disc_decompose(const Integer& N) {
    if (N < 1) throw InvalidArgument("disc_decompose: N >= 1 required");
    Integer n1 = N;
    while (mpz_even_p(n1.get_mpz_t())) n1 /= 2;
    DiscDecomposition r;
    r.epsilon = floor_mod(n1, 4) == 1 ? 1 : -1;
    auto [s, t] = squarefree_decompose(N);
    Integer D0 = r.epsilon * s;
    Integer D = floor_mod(D0, 4) == 1 ? D0 : 4 * D0;
    r.fundamental = D;
    r.d_eta = abs(D);
    Rational f2(N, r.d_eta);
    f2.canonicalize();
    Integer fn, fd;
    if (!mpz_perfect_square_p(f2.get_num().get_mpz_t()) || !mpz_perfect_square_p(f2.get_den().get_mpz_t()))
        throw InvalidArgument("disc_decompose: N/d is not a square");
    mpz_sqrt(fn.get_mpz_t(), f2.get_num().get_mpz_t());
    mpz_sqrt(fd.get_mpz_t(), f2.get_den().get_mpz_t());
    r.f_eta = Rational(fn, fd);
    r.f_eta.canonicalize();
    return r;
}

/// Character of Q(sqrt(eps N)) at p, i.e. the Kronecker symbol (D/p) for the
/// fundamental discriminant D.
inline int chi_eta(const DiscDecomposition& dd, long p) { return kronecker_symbol(dd.fundamental, p); }

// ---------------------------------------------------------------------------
// residue vector enumeration

inline unsigned long long residue_vector_count(const SplitQuadraticSpace& s, long p, int r) {
    long double c = std::pow((long double)p, (long double)r * s.dim());
    if (c > 9e18L) return ~0ULL;
    unsigned long long pr = 1;
    for (int i = 0; i < r; ++i) pr *= (unsigned long long)p;
    unsigned long long t = 1;
    for (int i = 0; i < s.dim(); ++i) t *= pr;
    return t;
}

/// Every vector in (Z/p^r)^{n+2} exactly once, in lexicographic odometer order.
class ResidueVectorRange {
public:
    ResidueVectorRange(const SplitQuadraticSpace& s, long p, int r, unsigned long long budget)
        : dim_(s.dim()), mod_(1) {
        for (int i = 0; i < r; ++i) mod_ *= p;
        unsigned long long cnt = residue_vector_count(s, p, r);
        if (cnt > budget)
            throw BudgetExceeded("residue enumeration of " + std::to_string(cnt) + " vectors exceeds budget " +
                                 std::to_string(budget));
        count_ = cnt;
    }
    unsigned long long size() const { return count_; }
    long long modulus() const { return mod_; }

    class iterator {
    public:
        iterator(int dim, long long mod, bool end) : v_(dim, 0), mod_(mod), end_(end) {}
        const std::vector<long long>& operator*() const { return v_; }
        iterator& operator++() {
            for (size_t i = v_.size(); i-- > 0;) {
                if (++v_[i] < mod_) return *this;
                v_[i] = 0;
            }
            end_ = true;
            return *this;
        }
        bool operator!=(const iterator& o) const { return end_ != o.end_; }

    private:
        std::vector<long long> v_;
        long long mod_;
        bool end_;
    };
    iterator begin() const { return iterator(dim_, mod_, false); }
    iterator end() const { return iterator(dim_, mod_, true); }

private:
    int dim_;
    long long mod_;
    unsigned long long count_ = 0;
};

// ---------------------------------------------------------------------------
// antidiagonal coordinates

/// Maps x = (x_1, x_2, 0, ..., 0, x_{n+1}, x_{n+2}) in the antidiagonal Gram
/// coordinates to split coordinates: a_1 = x_1, b_1 = x_{n+2}, a_2 = x_2, b_2 = x_{n+1}.
inline EtaVector antidiagonal_to_split(const SplitQuadraticSpace& s, const std::vector<long long>& x) {
    int N = s.dim();
    if ((int)x.size() != N) throw InvalidArgument("antidiagonal_to_split: dimension mismatch");
    for (int i = 2; i < N - 2; ++i)
        if (x[i] != 0) throw InvalidArgument("antidiagonal_to_split: anisotropic block must vanish");
    std::vector<long long> c(N, 0);
    c[0] = x[0];
    c[s.m] = x[N - 1];
    c[1] = x[1];
    c[s.m + 1] = x[N - 2];
    return EtaVector(s, c);
}

}  // namespace siegel

#ifndef DIAGLAB_RECONSTRUCT_HPP
#define DIAGLAB_RECONSTRUCT_HPP

#include <optional>
#include <utility>
#include <vector>

#include "diaglab/field.hpp"

namespace diaglab {

// Chinese remainder combination of residues modulo pairwise distinct primes.
// Result: (r, m) with r == each residue mod its prime, m = product.
inline std::pair<mpz_class, mpz_class> crt_combine(const std::vector<std::pair<u64, u64>>& residues) {
    if (residues.empty()) throw std::invalid_argument("crt_combine: empty input");
    for (size_t i = 0; i < residues.size(); i++)
        for (size_t j = i + 1; j < residues.size(); j++)
            if (residues[i].second == residues[j].second)
                throw std::invalid_argument("crt_combine: duplicate primes");
    mpz_class r = residues[0].first, m = residues[0].second;
    for (size_t i = 1; i < residues.size(); i++) {
        mpz_class p(residues[i].second), v(residues[i].first);
        mpz_class minv;
        if (mpz_invert(minv.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()) == 0)
            throw std::invalid_argument("crt_combine: non-coprime moduli");
        mpz_class t = ((v - r) * minv) % p;
        if (t < 0) t += p;
        r += m * t;
        m *= p;
    }
    return {r, m};
}

// Rational reconstruction: find a/b with |a|, b <= sqrt(m/2), a = r*b mod m,
// gcd(b, m) = 1. Returns nullopt if no such pair exists.
inline std::optional<mpq_class> rational_reconstruct(const mpz_class& r, const mpz_class& m) {
    if (m <= 1) throw std::invalid_argument("rational_reconstruct: modulus must exceed 1");
    mpz_class bound;
    mpz_class half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    if (bound == 0) return std::nullopt;

    mpz_class r0 = m, r1 = ((r % m) + m) % m;
    mpz_class t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    mpz_class a = r1, b = t1;
    if (b < 0) { a = -a; b = -b; }
    if (b == 0 || b > bound) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t());
    if (g != 1) return std::nullopt;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (g != 1) {
        a /= g;
        b /= g;
    }
    // a = r*b mod m holds by construction of the half-gcd chain
    return mpq_class(a, b);
}

inline std::optional<mpq_class> rational_reconstruct(u64 r, u64 m) {
    return rational_reconstruct(mpz_class(r), mpz_class(m));
}

// Lift a vector known modulo several primes to rationals. Empty result on
// any coordinate that fails to reconstruct.
inline std::optional<std::vector<mpq_class>> lift_vector(
    const std::vector<std::vector<u64>>& per_prime, const std::vector<u64>& primes) {
    size_t n = per_prime.at(0).size();
    std::vector<mpq_class> out(n);
    for (size_t i = 0; i < n; i++) {
        std::vector<std::pair<u64, u64>> res;
        for (size_t k = 0; k < primes.size(); k++) res.push_back({per_prime[k][i], primes[k]});
        auto [r, m] = crt_combine(res);
        auto q = rational_reconstruct(r, m);
        if (!q) return std::nullopt;
        out[i] = *q;
    }
    return out;
}

} // namespace diaglab

#endif

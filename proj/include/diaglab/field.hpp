#ifndef DIAGLAB_FIELD_HPP
#define DIAGLAB_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace diaglab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

// Field of rationals, backed by GMP. Elements are always canonical
// (gcd(|num|, den) = 1, den > 0 — gmpxx maintains this).
struct QQ {
    using Elt = mpq_class;
    static Elt zero() { return Elt(0); }
    static Elt one() { return Elt(1); }
    static Elt from_int(long v) { return Elt(v); }
    static Elt from_mpz(const mpz_class& v) { return Elt(v); }
    static bool is_zero(const Elt& a) { return sgn(a) == 0; }
    static Elt add(const Elt& a, const Elt& b) { return a + b; }
    static Elt sub(const Elt& a, const Elt& b) { return a - b; }
    static Elt mul(const Elt& a, const Elt& b) { return a * b; }
    static Elt neg(const Elt& a) { return -a; }
    static Elt inv(const Elt& a) {
        if (is_zero(a)) throw std::domain_error("QQ: division by zero");
        return 1 / a;
    }
    static Elt div(const Elt& a, const Elt& b) { return a * inv(b); }
    static bool eq(const Elt& a, const Elt& b) { return a == b; }
    static std::string str(const Elt& a) { return a.get_str(); }
    static constexpr bool modular = false;
};

// Prime field Z/p for p < 2^61. Elements live in [0, p).
struct Fp {
    u64 p;
    using Elt = u64;

    explicit Fp(u64 prime) : p(prime) {
        if (prime < 2) throw std::invalid_argument("Fp: modulus must be >= 2");
    }
    Elt zero() const { return 0; }
    Elt one() const { return p > 1 ? 1 : 0; }
    Elt from_int(long v) const {
        long r = v % (long)p;
        if (r < 0) r += (long)p;
        return (u64)r;
    }
    Elt from_mpz(const mpz_class& v) const {
        mpz_class m = v % mpz_class(p);
        if (m < 0) m += mpz_class(p);
        return m.get_ui();
    }
    // Reduction of a rational: fails (throws) if the denominator is divisible by p.
    Elt from_mpq(const mpq_class& v) const {
        u64 den = from_mpz(v.get_den());
        if (den == 0) throw std::domain_error("Fp: denominator divisible by p");
        return mul(from_mpz(v.get_num()), inv(den));
    }
    bool is_zero(Elt a) const { return a == 0; }
    Elt add(Elt a, Elt b) const { u64 s = a + b; return s >= p ? s - p : s; }
    Elt sub(Elt a, Elt b) const { return a >= b ? a - b : a + p - b; }
    Elt neg(Elt a) const { return a == 0 ? 0 : p - a; }
    Elt mul(Elt a, Elt b) const { return (u64)((u128)a * b % p); }
    Elt pow(Elt a, u64 e) const {
        Elt r = one();
        while (e) { if (e & 1) r = mul(r, a); a = mul(a, a); e >>= 1; }
        return r;
    }
    Elt inv(Elt a) const {
        if (a == 0) throw std::domain_error("Fp: division by zero");
        return pow(a, p - 2);
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    bool eq(Elt a, Elt b) const { return a == b; }
    std::string str(Elt a) const { return std::to_string(a); }
    static constexpr bool modular = true;
};

// Fixed published list of word-size primes (just below 2^61), so that
// residue products fit in a double word. Reproducible runs depend on this
// exact list; DIAGLAB_PRIMES overrides it at the CLI level.
inline const std::vector<u64>& default_primes() {
    static const std::vector<u64> primes = {
        2305843009213693951ull, 2305843009213693921ull, 2305843009213693907ull,
        2305843009213693723ull, 2305843009213693693ull, 2305843009213693669ull,
        2305843009213693613ull, 2305843009213693561ull, 2305843009213693549ull,
        2305843009213693487ull, 2305843009213693421ull, 2305843009213693373ull,
        2305843009213693277ull, 2305843009213693193ull, 2305843009213693153ull,
        2305843009213693133ull,
    };
    return primes;
}

} // namespace diaglab

#endif

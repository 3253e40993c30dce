#ifndef DIAGLAB_POLY_HPP
#define DIAGLAB_POLY_HPP

#include <algorithm>
#include <cassert>
#include <optional>
#include <vector>

#include "diaglab/field.hpp"

namespace diaglab {

// Dense univariate polynomial over a field F. coeffs[i] is the coefficient
// of x^i; the vector carries no trailing zeros (zero polynomial = empty
// vector, degree -1).
template <class F>
struct Poly {
    std::vector<typename F::Elt> c;

    int degree() const { return (int)c.size() - 1; }
    bool is_zero() const { return c.empty(); }
};

template <class F>
void poly_trim(const F& K, Poly<F>& a) {
    while (!a.c.empty() && K.is_zero(a.c.back())) a.c.pop_back();
}

template <class F>
Poly<F> poly_zero(const F&) { return Poly<F>{}; }

template <class F>
Poly<F> poly_const(const F& K, const typename F::Elt& v) {
    Poly<F> r;
    if (!K.is_zero(v)) r.c.push_back(v);
    return r;
}

template <class F>
Poly<F> poly_one(const F& K) { return poly_const(K, K.one()); }

// c * x^k
template <class F>
Poly<F> poly_monomial(const F& K, const typename F::Elt& v, int k) {
    Poly<F> r;
    if (K.is_zero(v)) return r;
    r.c.assign(k + 1, K.zero());
    r.c[k] = v;
    return r;
}

template <class F>
Poly<F> poly_x(const F& K) { return poly_monomial(K, K.one(), 1); }

template <class F>
typename F::Elt poly_coeff(const F& K, const Poly<F>& a, int i) {
    if (i < 0 || i >= (int)a.c.size()) return K.zero();
    return a.c[i];
}

template <class F>
typename F::Elt poly_lc(const F& K, const Poly<F>& a) {
    return a.is_zero() ? K.zero() : a.c.back();
}

template <class F>
bool poly_eq(const F& K, const Poly<F>& a, const Poly<F>& b) {
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); i++)
        if (!K.eq(a.c[i], b.c[i])) return false;
    return true;
}

template <class F>
Poly<F> poly_add(const F& K, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), K.zero());
    for (size_t i = 0; i < a.c.size(); i++) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); i++) r.c[i] = K.add(r.c[i], b.c[i]);
    poly_trim(K, r);
    return r;
}

template <class F>
Poly<F> poly_sub(const F& K, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), K.zero());
    for (size_t i = 0; i < a.c.size(); i++) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); i++) r.c[i] = K.sub(r.c[i], b.c[i]);
    poly_trim(K, r);
    return r;
}

template <class F>
Poly<F> poly_neg(const F& K, const Poly<F>& a) {
    Poly<F> r = a;
    for (auto& v : r.c) v = K.neg(v);
    return r;
}

template <class F>
Poly<F> poly_scale(const F& K, const Poly<F>& a, const typename F::Elt& s) {
    if (K.is_zero(s)) return Poly<F>{};
    Poly<F> r = a;
    for (auto& v : r.c) v = K.mul(v, s);
    poly_trim(K, r);
    return r;
}

template <class F>
Poly<F> poly_mul(const F& K, const Poly<F>& a, const Poly<F>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<F>{};
    Poly<F> r;
    r.c.assign(a.c.size() + b.c.size() - 1, K.zero());
    for (size_t i = 0; i < a.c.size(); i++) {
        if (K.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); j++)
            r.c[i + j] = K.add(r.c[i + j], K.mul(a.c[i], b.c[j]));
    }
    poly_trim(K, r);
    return r;
}

template <class F>
Poly<F> poly_shift_up(const F& K, const Poly<F>& a, int k) {
    if (a.is_zero()) return a;
    Poly<F> r;
    r.c.assign(a.c.size() + k, K.zero());
    for (size_t i = 0; i < a.c.size(); i++) r.c[i + k] = a.c[i];
    return r;
}

template <class F>
Poly<F> poly_derivative(const F& K, const Poly<F>& a) {
    Poly<F> r;
    if (a.c.size() <= 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); i++)
        r.c[i - 1] = K.mul(a.c[i], K.from_int((long)i));
    poly_trim(K, r);
    return r;
}

template <class F>
typename F::Elt poly_eval(const F& K, const Poly<F>& a, const typename F::Elt& x) {
    typename F::Elt r = K.zero();
    for (int i = (int)a.c.size() - 1; i >= 0; i--) r = K.add(K.mul(r, x), a.c[i]);
    return r;
}

// Substitute x -> x + s (Taylor shift, Horner on the polynomial).
template <class F>
Poly<F> poly_taylor_shift(const F& K, const Poly<F>& a, const typename F::Elt& s) {
    Poly<F> r;
    Poly<F> xs = poly_add(K, poly_x(K), poly_const(K, s));
    for (int i = (int)a.c.size() - 1; i >= 0; i--) {
        r = poly_mul(K, r, xs);
        r = poly_add(K, r, poly_const(K, a.c[i]));
    }
    return r;
}

// Quotient and remainder, den != 0.
template <class F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const F& K, Poly<F> num, const Poly<F>& den) {
    if (den.is_zero()) throw std::domain_error("poly_divmod: zero divisor");
    Poly<F> q;
    int dd = den.degree();
    if (num.degree() >= dd) q.c.assign(num.degree() - dd + 1, K.zero());
    auto lc_inv = K.inv(poly_lc(K, den));
    while (num.degree() >= dd) {
        int k = num.degree() - dd;
        auto f = K.mul(poly_lc(K, num), lc_inv);
        q.c[k] = f;
        for (int i = 0; i <= dd; i++)
            num.c[k + i] = K.sub(num.c[k + i], K.mul(f, den.c[i]));
        poly_trim(K, num);
    }
    poly_trim(K, q);
    return {q, num};
}

template <class F>
Poly<F> poly_mod(const F& K, const Poly<F>& a, const Poly<F>& m) {
    return poly_divmod(K, a, m).second;
}

template <class F>
Poly<F> poly_monic(const F& K, const Poly<F>& a) {
    if (a.is_zero()) return a;
    return poly_scale(K, a, K.inv(poly_lc(K, a)));
}

// Monic gcd over a field.
template <class F>
Poly<F> poly_gcd(const F& K, Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        Poly<F> r = poly_mod(K, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(K, a);
}

// Squarefree part a / gcd(a, a').
template <class F>
Poly<F> poly_squarefree_part(const F& K, const Poly<F>& a) {
    if (a.degree() <= 0) return a;
    Poly<F> g = poly_gcd(K, a, poly_derivative(K, a));
    return poly_divmod(K, a, g).first;
}

// Resultant by the remainder-sequence recurrence (over a field).
template <class F>
typename F::Elt poly_resultant(const F& K, Poly<F> a, Poly<F> b) {
    typename F::Elt res = K.one();
    while (true) {
        if (b.is_zero()) return a.degree() <= 0 ? (a.is_zero() ? K.zero() : res) : K.zero();
        if (b.degree() == 0) {
            // res *= lc(b)^deg(a)
            auto l = poly_lc(K, b);
            for (int i = 0; i < a.degree(); i++) res = K.mul(res, l);
            return res;
        }
        Poly<F> r = poly_mod(K, a, b);
        int da = a.degree(), db = b.degree(), dr = r.degree();
        auto lb = poly_lc(K, b);
        // res(a,b) = (-1)^{da*db} lc(b)^{da-dr} res(b,r)
        typename F::Elt f = K.one();
        for (int i = 0; i < da - dr; i++) f = K.mul(f, lb);
        if ((da & 1) && (db & 1)) f = K.neg(f);
        res = K.mul(res, f);
        a = std::move(b);
        b = std::move(r);
    }
}

// --- rational-specific helpers ---

// Clear denominators and content: returns primitive integer polynomial with
// positive leading coefficient, equal to a up to a positive rational factor.
inline Poly<QQ> poly_primitive(const QQ& K, const Poly<QQ>& a) {
    if (a.is_zero()) return a;
    mpz_class den_lcm = 1;
    for (auto& v : a.c) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den().get_mpz_t());
    mpz_class content = 0;
    std::vector<mpz_class> ints(a.c.size());
    for (size_t i = 0; i < a.c.size(); i++) {
        mpq_class scaled = a.c[i] * den_lcm;
        ints[i] = scaled.get_num();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints[i].get_mpz_t());
    }
    if (content == 0) content = 1;
    if (ints.back() < 0) content = -content;
    Poly<QQ> r;
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); i++) r.c[i] = mpq_class(ints[i] / content);
    return r;
}

inline Poly<Fp> poly_reduce(const Fp& K, const Poly<QQ>& a) {
    Poly<Fp> r;
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); i++) r.c[i] = K.from_mpq(a.c[i]);
    poly_trim(K, r);
    return r;
}

// Integer roots of a rational polynomial, searched over |r| <= bound.
// Exhaustive within the bound; callers record the bound in their evidence.
inline std::vector<long> poly_integer_roots_bounded(const QQ& K, const Poly<QQ>& a, long bound) {
    std::vector<long> roots;
    if (a.is_zero()) return roots;
    Poly<QQ> p = poly_primitive(K, a);
    // strip x^k
    size_t k = 0;
    while (k < p.c.size() && K.is_zero(p.c[k])) k++;
    if (k > 0) {
        roots.push_back(0);
        p.c.erase(p.c.begin(), p.c.begin() + k);
    }
    if (p.degree() <= 0) return roots;
    mpz_class c0 = p.c[0].get_num();
    for (long r = 1; r <= bound; r++) {
        for (long s : {r, -r}) {
            if (c0 % s != 0) continue;
            if (sgn(poly_eval(K, p, mpq_class(s))) == 0) roots.push_back(s);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

template <class F>
std::string poly_str(const F& K, const Poly<F>& a, const std::string& var = "x");

} // namespace diaglab

#endif

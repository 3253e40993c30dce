#ifndef DIAGLAB_RATFUNC_HPP
#define DIAGLAB_RATFUNC_HPP

#include "diaglab/poly.hpp"

namespace diaglab {

// Rational function num/den over a field F, kept reduced with monic den.
template <class F>
struct RatFunc {
    Poly<F> num;
    Poly<F> den; // monic, nonzero, gcd(num, den) = 1

    bool is_zero() const { return num.is_zero(); }
    bool is_poly() const { return den.degree() == 0; }
};

template <class F>
RatFunc<F> rf_normalize(const F& K, Poly<F> num, Poly<F> den) {
    if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (num.is_zero()) return RatFunc<F>{Poly<F>{}, poly_one(K)};
    Poly<F> g = poly_gcd(K, num, den);
    if (g.degree() > 0) {
        num = poly_divmod(K, num, g).first;
        den = poly_divmod(K, den, g).first;
    }
    auto lci = K.inv(poly_lc(K, den));
    return RatFunc<F>{poly_scale(K, num, lci), poly_scale(K, den, lci)};
}

template <class F>
RatFunc<F> rf_zero(const F& K) { return RatFunc<F>{Poly<F>{}, poly_one(K)}; }

template <class F>
RatFunc<F> rf_one(const F& K) { return RatFunc<F>{poly_one(K), poly_one(K)}; }

template <class F>
RatFunc<F> rf_from_poly(const F& K, const Poly<F>& p) {
    return RatFunc<F>{p, poly_one(K)};
}

template <class F>
RatFunc<F> rf_const(const F& K, const typename F::Elt& v) {
    return RatFunc<F>{poly_const(K, v), poly_one(K)};
}

template <class F>
bool rf_eq(const F& K, const RatFunc<F>& a, const RatFunc<F>& b) {
    return poly_eq(K, poly_mul(K, a.num, b.den), poly_mul(K, b.num, a.den));
}

template <class F>
RatFunc<F> rf_add(const F& K, const RatFunc<F>& a, const RatFunc<F>& b) {
    Poly<F> n = poly_add(K, poly_mul(K, a.num, b.den), poly_mul(K, b.num, a.den));
    return rf_normalize(K, n, poly_mul(K, a.den, b.den));
}

template <class F>
RatFunc<F> rf_sub(const F& K, const RatFunc<F>& a, const RatFunc<F>& b) {
    Poly<F> n = poly_sub(K, poly_mul(K, a.num, b.den), poly_mul(K, b.num, a.den));
    return rf_normalize(K, n, poly_mul(K, a.den, b.den));
}

template <class F>
RatFunc<F> rf_neg(const F& K, const RatFunc<F>& a) {
    return RatFunc<F>{poly_neg(K, a.num), a.den};
}

template <class F>
RatFunc<F> rf_mul(const F& K, const RatFunc<F>& a, const RatFunc<F>& b) {
    if (a.is_zero() || b.is_zero()) return rf_zero(K);
    // cross-reduce before multiplying to keep degrees down
    RatFunc<F> x = rf_normalize(K, a.num, b.den);
    RatFunc<F> y = rf_normalize(K, b.num, a.den);
    return RatFunc<F>{poly_mul(K, x.num, y.num), poly_mul(K, x.den, y.den)};
}

template <class F>
RatFunc<F> rf_inv(const F& K, const RatFunc<F>& a) {
    if (a.is_zero()) throw std::domain_error("RatFunc: division by zero");
    return rf_normalize(K, a.den, a.num);
}

template <class F>
RatFunc<F> rf_div(const F& K, const RatFunc<F>& a, const RatFunc<F>& b) {
    return rf_mul(K, a, rf_inv(K, b));
}

template <class F>
RatFunc<F> rf_scale(const F& K, const RatFunc<F>& a, const typename F::Elt& s) {
    if (K.is_zero(s)) return rf_zero(K);
    return RatFunc<F>{poly_scale(K, a.num, s), a.den};
}

template <class F>
RatFunc<F> rf_derivative(const F& K, const RatFunc<F>& a) {
    // (n/d)' = (n'd - nd')/d^2
    Poly<F> n = poly_sub(K, poly_mul(K, poly_derivative(K, a.num), a.den),
                         poly_mul(K, a.num, poly_derivative(K, a.den)));
    return rf_normalize(K, n, poly_mul(K, a.den, a.den));
}

// Substitute x -> g(x) into a univariate polynomial, returning a RatFunc.
template <class F>
RatFunc<F> poly_compose_rf(const F& K, const Poly<F>& p, const RatFunc<F>& g) {
    RatFunc<F> r = rf_zero(K);
    for (int i = p.degree(); i >= 0; i--) {
        r = rf_mul(K, r, g);
        r = rf_add(K, r, rf_const(K, p.c[i]));
    }
    return r;
}

// Substitute x -> g(x) into a rational function.
template <class F>
RatFunc<F> rf_compose(const F& K, const RatFunc<F>& f, const RatFunc<F>& g) {
    RatFunc<F> n = poly_compose_rf(K, f.num, g);
    RatFunc<F> d = poly_compose_rf(K, f.den, g);
    return rf_div(K, n, d);
}

inline RatFunc<Fp> rf_reduce(const Fp& K, const RatFunc<QQ>& a) {
    return rf_normalize(K, poly_reduce(K, a.num), poly_reduce(K, a.den));
}

} // namespace diaglab

#endif

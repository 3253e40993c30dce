#ifndef DIAGLAB_SERIES_HPP
#define DIAGLAB_SERIES_HPP

#include <vector>

#include "diaglab/poly.hpp"
#include "diaglab/ratfunc.hpp"

namespace diaglab {

// Truncated power series: coeffs a[0..N], representing sum a_m x^m + O(x^{N+1}).
// Arithmetic never claims terms beyond the shorter operand.
template <class F>
struct Series {
    std::vector<typename F::Elt> a;

    int trunc() const { return (int)a.size() - 1; } // N
    bool empty() const { return a.empty(); }
};

template <class F>
Series<F> series_from(std::vector<typename F::Elt> v) { return Series<F>{std::move(v)}; }

template <class F>
Series<F> series_zero(const F& K, int n) {
    return Series<F>{std::vector<typename F::Elt>((size_t)n + 1, K.zero())};
}

template <class F>
Series<F> series_one(const F& K, int n) {
    Series<F> s = series_zero(K, n);
    s.a[0] = K.one();
    return s;
}

template <class F>
bool series_is_zero(const F& K, const Series<F>& s) {
    for (auto& v : s.a)
        if (!K.is_zero(v)) return false;
    return true;
}

template <class F>
Series<F> series_add(const F& K, const Series<F>& x, const Series<F>& y) {
    size_t n = std::min(x.a.size(), y.a.size());
    Series<F> r;
    r.a.resize(n);
    for (size_t i = 0; i < n; i++) r.a[i] = K.add(x.a[i], y.a[i]);
    return r;
}

template <class F>
Series<F> series_sub(const F& K, const Series<F>& x, const Series<F>& y) {
    size_t n = std::min(x.a.size(), y.a.size());
    Series<F> r;
    r.a.resize(n);
    for (size_t i = 0; i < n; i++) r.a[i] = K.sub(x.a[i], y.a[i]);
    return r;
}

template <class F>
Series<F> series_scale(const F& K, const Series<F>& x, const typename F::Elt& c) {
    Series<F> r = x;
    for (auto& v : r.a) v = K.mul(v, c);
    return r;
}

template <class F>
Series<F> series_mul(const F& K, const Series<F>& x, const Series<F>& y) {
    size_t n = std::min(x.a.size(), y.a.size());
    Series<F> r = series_zero(K, (int)n - 1);
    for (size_t i = 0; i < n; i++) {
        if (K.is_zero(x.a[i])) continue;
        for (size_t j = 0; i + j < n; j++)
            r.a[i + j] = K.add(r.a[i + j], K.mul(x.a[i], y.a[j]));
    }
    return r;
}

// Termwise (Hadamard) product.
template <class F>
Series<F> hadamard(const F& K, const Series<F>& x, const Series<F>& y) {
    size_t n = std::min(x.a.size(), y.a.size());
    Series<F> r;
    r.a.resize(n);
    for (size_t i = 0; i < n; i++) r.a[i] = K.mul(x.a[i], y.a[i]);
    return r;
}

template <class F>
Series<F> series_derivative(const F& K, const Series<F>& x) {
    if (x.a.size() <= 1) return Series<F>{{}};
    Series<F> r;
    r.a.resize(x.a.size() - 1);
    for (size_t i = 1; i < x.a.size(); i++) r.a[i - 1] = K.mul(x.a[i], K.from_int((long)i));
    return r;
}

template <class F>
typename F::Elt series_at(const F& K, const Series<F>& x, size_t i) {
    return i < x.a.size() ? x.a[i] : K.zero();
}

// 1/x, requires x(0) invertible.
template <class F>
Series<F> series_inv(const F& K, const Series<F>& x) {
    if (x.empty() || K.is_zero(x.a[0]))
        throw std::domain_error("series_inv: constant term is zero");
    Series<F> r = series_zero(K, x.trunc());
    auto c0 = K.inv(x.a[0]);
    r.a[0] = c0;
    for (size_t m = 1; m < x.a.size(); m++) {
        auto acc = K.zero();
        for (size_t k = 1; k <= m; k++)
            acc = K.add(acc, K.mul(series_at(K, x, k), r.a[m - k]));
        r.a[m] = K.neg(K.mul(acc, c0));
    }
    return r;
}

// Composition x(g(t)) with g(0) = 0, by Horner on truncated series.
template <class F>
Series<F> series_compose(const F& K, const Series<F>& x, const Series<F>& g) {
    if (!g.empty() && !K.is_zero(g.a[0]))
        throw std::domain_error("series_compose: inner series must vanish at 0");
    int n = std::min(x.trunc(), g.trunc());
    Series<F> r = series_zero(K, n);
    for (int i = std::min(x.trunc(), n); i >= 0; i--) {
        r = series_mul(K, r, g);
        r.a.resize(n + 1, K.zero());
        r.a[0] = K.add(r.a[0], x.a[i]);
    }
    return r;
}

// Expansion of a univariate rational function at 0 (den(0) != 0).
template <class F>
Series<F> rf_series(const F& K, const RatFunc<F>& f, int n) {
    Series<F> den = series_zero(K, n);
    for (int i = 0; i <= std::min(n, f.den.degree()); i++) den.a[i] = f.den.c[i];
    Series<F> num = series_zero(K, n);
    for (int i = 0; i <= std::min(n, f.num.degree()); i++) num.a[i] = f.num.c[i];
    return series_mul(K, num, series_inv(K, den));
}

// Multiply a series by a polynomial, keeping the truncation order.
template <class F>
Series<F> series_mul_poly(const F& K, const Series<F>& x, const Poly<F>& p) {
    Series<F> r = series_zero(K, x.trunc());
    for (int i = 0; i <= p.degree(); i++) {
        if (K.is_zero(p.c[i])) continue;
        for (int j = 0; i + j <= x.trunc(); j++)
            r.a[i + j] = K.add(r.a[i + j], K.mul(p.c[i], x.a[j]));
    }
    return r;
}

inline Series<Fp> series_reduce(const Fp& K, const Series<QQ>& s) {
    Series<Fp> r;
    r.a.resize(s.a.size());
    for (size_t i = 0; i < s.a.size(); i++) r.a[i] = K.from_mpq(s.a[i]);
    return r;
}

template <class F>
Series<F> series_truncate(const F&, Series<F> s, int n) {
    if ((int)s.a.size() > n + 1) s.a.resize(n + 1);
    return s;
}

} // namespace diaglab

#endif

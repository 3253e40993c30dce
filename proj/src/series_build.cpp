#include "diaglab/series_build.hpp"

namespace diaglab {

Series<QQ> algebraic_series(const std::vector<AlgebraicFactor>& factors, int n) {
    QQ K;
    Series<QQ> out = series_one(K, n);
    for (auto& f : factors) {
        if (f.q.is_zero() || f.q.c[0] != 1)
            throw std::domain_error("algebraic_series: factor base must satisfy q(0) = 1");
        // y = q^e solves q y' - e q' y = 0
        OreOp<QQ> L{{rf_from_poly(K, poly_scale(K, poly_derivative(K, f.q), mpq_class(-f.e))),
                     rf_from_poly(K, f.q)}};
        Series<QQ> seed;
        seed.a = {mpq_class(1)};
        Series<QQ> y = extend_by_operator(K, L, seed, n);
        out = series_mul(K, out, y);
    }
    return out;
}

Series<QQ> pFq_series(const std::vector<mpq_class>& upper, const std::vector<mpq_class>& lower,
                      const mpq_class& scale, int n) {
    for (auto& l : lower) {
        if (l <= 0 && l.get_den() == 1)
            throw std::domain_error("pFq_series: lower parameter is a nonpositive integer");
    }
    QQ K;
    Series<QQ> s = series_zero(K, n);
    mpq_class a = 1;
    s.a[0] = a;
    for (int m = 0; m < n; m++) {
        mpq_class num = scale, den = m + 1;
        for (auto& u : upper) num *= (u + m);
        for (auto& l : lower) den *= (l + m);
        a = a * num / den;
        s.a[m + 1] = a;
    }
    return s;
}

OreOp<QQ> hypergeometric_operator(const std::vector<mpq_class>& upper,
                                  const std::vector<mpq_class>& lower, const mpq_class& scale) {
    QQ K;
    OreOp<QQ> theta{{rf_zero(K), rf_from_poly(K, poly_x(K))}}; // x D
    auto shifted = [&](const mpq_class& c) {
        // theta + c
        return ore_add(K, theta, ore_mult(K, rf_const(K, c)));
    };
    OreOp<QQ> left = theta;
    for (auto& l : lower) left = op_mul(K, left, shifted(l - 1));
    OreOp<QQ> right = ore_mult(K, rf_from_poly(K, poly_scale(K, poly_x(K), scale)));
    for (auto& u : upper) right = op_mul(K, right, shifted(u));
    return ore_normalize_primitive(K, ore_sub(K, left, right));
}

Series<QQ> compose_pullback(const Series<QQ>& f, const RatFunc<QQ>& p, int n) {
    QQ K;
    if (K.is_zero(poly_eval(K, p.den, mpq_class(0))))
        throw std::domain_error("compose_pullback: pullback has a pole at 0");
    Series<QQ> ps = rf_series(K, p, n);
    if (!ps.empty() && sgn(ps.a[0]) != 0)
        throw std::domain_error("compose_pullback: pullback must vanish at 0");
    Series<QQ> fx = f;
    if (fx.trunc() > n) fx.a.resize(n + 1);
    return series_compose(K, fx, ps);
}

IntegralityReport integrality_scan(const Series<QQ>& s, const mpz_class& bound, long factor_limit) {
    IntegralityReport rep;
    std::map<mpz_class, long> exponents; // prime -> required exponent in c
    for (size_t m = 1; m < s.a.size(); m++) {
        mpz_class den = s.a[m].get_den();
        if (den == 1) continue;
        // trial-divide the denominator
        mpz_class d = den;
        for (long q = 2; q <= factor_limit && d > 1; q += (q == 2 ? 1 : 2)) {
            if (d % q != 0) continue;
            long e = 0;
            while (d % q == 0) { d /= q; e++; }
            long need = (e + (long)m - 1) / (long)m; // ceil(e/m)
            long& cur = exponents[mpz_class(q)];
            cur = std::max(cur, need);
        }
        if (d > 1) {
            rep.integral = false;
            rep.failure_index = (long)m;
            return rep;
        }
    }
    mpz_class c = 1;
    for (auto& [q, e] : exponents)
        for (long k = 0; k < e; k++) c *= q;
    if (c > bound) {
        rep.integral = false;
        // first index whose denominator is not cleared by the bound
        for (size_t m = 1; m < s.a.size(); m++) {
            mpz_class den = s.a[m].get_den(), t;
            mpz_pow_ui(t.get_mpz_t(), bound.get_mpz_t(), (unsigned long)m);
            if (t % den != 0) { rep.failure_index = (long)m; break; }
        }
        return rep;
    }
    rep.integral = true;
    rep.rescale = c;
    return rep;
}

} // namespace diaglab

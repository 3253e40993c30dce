#include "diaglab/ore_more.hpp"

#include <algorithm>

#include "diaglab/reconstruct.hpp"

namespace diaglab {

namespace {

int ore_max_degree(const QQ& K, const OreOp<QQ>& L) {
    int d = 0;
    for (auto& c : L.c) d = std::max(d, std::max(c.num.degree(), c.den.degree()));
    return d;
}

// Run a closure construction modulo escalating primes and lift.
template <class Build>
ClosureResult<QQ> lifted_closure(const OreOp<QQ>& L, Build&& build) {
    QQ Q;
    if (L.order() <= 3 && ore_max_degree(Q, L) <= 16) return build(Q, L);

    const auto& primes = default_primes();
    std::vector<std::pair<u64, OreOp<Fp>>> fits;
    int expected = 0;
    size_t pi = 0;
    while (pi < primes.size()) {
        Fp K(primes[pi++]);
        OreOp<Fp> Lp;
        try {
            Lp = ore_reduce(K, ore_normalize_primitive(Q, L));
        } catch (const std::domain_error&) {
            continue;
        }
        auto res = build(K, Lp);
        expected = res.expected_order;
        fits.push_back({K.p, ore_clear_denominators(K, res.op)});
        if (fits.size() < 2) continue;
        std::map<int, int> votes;
        for (auto& [p, op] : fits) votes[op.order()]++;
        int best_order = -1, best = 0;
        for (auto& [o, v] : votes)
            if (v > best) { best = v; best_order = o; }
        std::vector<std::pair<u64, OreOp<Fp>>> keep;
        for (auto& [p, op] : fits)
            if (op.order() == best_order) keep.push_back({p, op});
        auto lifted = lift_operator(keep, nullptr);
        if (!lifted) continue;
        // cross-check against one more independent prime
        while (pi < primes.size()) {
            Fp Kc(primes[pi]);
            try {
                OreOp<Fp> direct =
                    ore_clear_denominators(Kc, build(Kc, ore_reduce(Kc, ore_normalize_primitive(Q, L))).op);
                OreOp<Fp> red = ore_reduce(Kc, *lifted);
                auto anchor = [&](const OreOp<Fp>& o) {
                    return poly_coeff(Kc, o.c.back().num, o.c.back().num.degree());
                };
                OreOp<Fp> x = ore_scale(Kc, direct, rf_const(Kc, Kc.inv(anchor(direct))));
                OreOp<Fp> y = ore_scale(Kc, red, rf_const(Kc, Kc.inv(anchor(red))));
                if (!ore_eq(Kc, x, y)) { pi++; break; }
                ClosureResult<QQ> out;
                out.op = ore_normalize_primitive(Q, *lifted);
                out.expected_order = expected;
                out.order_dropped = out.op.order() < expected;
                return out;
            } catch (const std::domain_error&) {
                pi++;
                continue;
            }
        }
    }
    throw resource_error("lifted closure: reconstruction failed over the published prime list");
}

} // namespace

ClosureResult<QQ> symmetric_power_lifted(const OreOp<QQ>& L, int k) {
    return lifted_closure(L, [k](const auto& K, const auto& op) { return symmetric_power(K, op, k); });
}

ClosureResult<QQ> exterior_square_lifted(const OreOp<QQ>& L) {
    return lifted_closure(L, [](const auto& K, const auto& op) { return exterior_square(K, op); });
}

// --- indicial polynomials ---

namespace {

Poly<QQ> falling_factorial_poly(const QQ& K, int i) {
    Poly<QQ> r = poly_one(K);
    for (int q = 0; q < i; q++) {
        Poly<QQ> t{{mpq_class(-q), mpq_class(1)}};
        r = poly_mul(K, r, t);
    }
    return r;
}

int poly_valuation(const QQ& K, const Poly<QQ>& p) {
    if (p.is_zero()) return INT_MAX;
    for (int i = 0; i <= p.degree(); i++)
        if (!K.is_zero(p.c[i])) return i;
    return INT_MAX;
}

} // namespace

Poly<QQ> indicial_polynomial(const OreOp<QQ>& L, const mpq_class& c) {
    QQ K;
    auto polys = ore_poly_coeffs(K, ore_normalize_primitive(K, L));
    const int n = (int)polys.size() - 1;
    // at an ordinary point the formula degenerates to rho(rho-1)...(rho-n+1)
    int v = INT_MAX;
    std::vector<Poly<QQ>> shifted(n + 1);
    for (int i = 0; i <= n; i++) {
        shifted[i] = poly_taylor_shift(K, polys[i], c);
        if (!shifted[i].is_zero()) v = std::min(v, poly_valuation(K, shifted[i]) - i);
    }
    Poly<QQ> chi;
    for (int i = 0; i <= n; i++) {
        if (shifted[i].is_zero() || poly_valuation(K, shifted[i]) - i != v) continue;
        chi = poly_add(K, chi, poly_scale(K, falling_factorial_poly(K, i),
                                          shifted[i].c[poly_valuation(K, shifted[i])]));
    }
    return chi;
}

Poly<QQ> degree_polynomial(const OreOp<QQ>& L) {
    QQ K;
    auto polys = ore_poly_coeffs(K, ore_normalize_primitive(K, L));
    const int n = (int)polys.size() - 1;
    int kappa = INT_MIN;
    for (int i = 0; i <= n; i++)
        if (!polys[i].is_zero()) kappa = std::max(kappa, polys[i].degree() - i);
    Poly<QQ> chi;
    for (int i = 0; i <= n; i++) {
        if (polys[i].is_zero() || polys[i].degree() - i != kappa) continue;
        chi = poly_add(K, chi, poly_scale(K, falling_factorial_poly(K, i), poly_lc(K, polys[i])));
    }
    return chi;
}

Poly<QQ> indicial_polynomial_at_infinity(const OreOp<QQ>& L) { return degree_polynomial(L); }

// --- rational solutions ---

namespace {

// Yun squarefree decomposition: p = prod out[i]^{i+1} (monic parts)
std::vector<Poly<QQ>> squarefree_decomposition(const QQ& K, const Poly<QQ>& p) {
    std::vector<Poly<QQ>> out;
    if (p.degree() <= 0) return out;
    Poly<QQ> a = poly_monic(K, p);
    Poly<QQ> d = poly_derivative(K, a);
    Poly<QQ> g = poly_gcd(K, a, d);
    Poly<QQ> w = poly_divmod(K, a, g).first;
    Poly<QQ> z = poly_sub(K, poly_divmod(K, d, g).first, poly_derivative(K, w));
    while (w.degree() > 0) {
        Poly<QQ> gi = poly_gcd(K, w, z);
        out.push_back(gi);
        w = poly_divmod(K, w, gi).first;
        z = poly_divmod(K, poly_sub(K, z, poly_derivative(K, w)), gi).first;
    }
    return out;
}

// Indicial data at the roots of a squarefree g with dynamic splitting:
// valuations may differ between root clusters, so g splits on zero divisors.
struct LocalIndicial {
    Poly<QQ> comp;              // component of g
    std::vector<Poly<QQ>> chi;  // chi[d](t) = coefficient of rho^d, reduced mod comp
};

void indicial_at_factor(const QQ& K, const std::vector<Poly<QQ>>& polys, const Poly<QQ>& g,
                        std::vector<LocalIndicial>& out) {
    const int n = (int)polys.size() - 1;
    std::vector<std::vector<Poly<QQ>>> co(n + 1); // a_i(x+t): coefficient of x^j in Q[t]/(g)
    for (int i = 0; i <= n; i++) {
        Poly<QQ> d = polys[i];
        mpq_class fact = 1;
        for (int j = 0; !d.is_zero(); j++) {
            if (j > 0) fact *= j;
            co[i].push_back(poly_mod(K, poly_scale(K, d, 1 / fact), g));
            d = poly_derivative(K, d);
        }
    }
    std::vector<int> val(n + 1, INT_MAX);
    for (int i = 0; i <= n; i++) {
        for (size_t j = 0; j < co[i].size(); j++) {
            const Poly<QQ>& c = co[i][j];
            if (c.is_zero()) continue;
            Poly<QQ> h = poly_gcd(K, c, g);
            if (h.degree() > 0 && h.degree() < g.degree()) {
                indicial_at_factor(K, polys, h, out);
                indicial_at_factor(K, polys, poly_divmod(K, g, h).first, out);
                return;
            }
            if (h.degree() == 0) { val[i] = (int)j; break; }
        }
    }
    int v = INT_MAX;
    for (int i = 0; i <= n; i++)
        if (val[i] != INT_MAX) v = std::min(v, val[i] - i);
    LocalIndicial li;
    li.comp = g;
    for (int i = 0; i <= n; i++) {
        if (val[i] == INT_MAX || val[i] - i != v) continue;
        Poly<QQ> ff = falling_factorial_poly(K, i);
        const Poly<QQ>& lead = co[i][val[i]];
        for (int d = 0; d <= ff.degree(); d++) {
            if ((int)li.chi.size() <= d) li.chi.resize(d + 1);
            li.chi[d] = poly_add(K, li.chi[d], poly_scale(K, lead, ff.c[d]));
        }
    }
    out.push_back(std::move(li));
}

Poly<QQ> chi_eval(const QQ& K, const LocalIndicial& li, long e) {
    Poly<QQ> acc;
    mpq_class pw = 1;
    for (size_t d = 0; d < li.chi.size(); d++) {
        acc = poly_add(K, acc, poly_scale(K, li.chi[d], pw));
        pw *= e;
    }
    return poly_mod(K, acc, li.comp);
}

} // namespace

std::vector<RatFunc<QQ>> rational_solutions(const OreOp<QQ>& L, long root_bound) {
    QQ K;
    OreOp<QQ> Ln = ore_normalize_primitive(K, L);
    auto polys = ore_poly_coeffs(K, Ln);
    const int n = (int)polys.size() - 1;
    if (n == 0) return {};

    Poly<QQ> den = poly_one(K);
    for (auto& g : squarefree_decomposition(K, polys[n])) {
        if (g.degree() <= 0) continue;
        std::vector<LocalIndicial> locs;
        indicial_at_factor(K, polys, g, locs);
        for (auto& li : locs) {
            long worst = 0;
            for (long e = 1; e <= root_bound; e++) {
                Poly<QQ> v = chi_eval(K, li, -e);
                if (v.is_zero() || poly_gcd(K, v, li.comp).degree() > 0) worst = e;
            }
            for (long q = 0; q < worst; q++) den = poly_mul(K, den, li.comp);
        }
    }

    Poly<QQ> chi_inf = degree_polynomial(Ln);
    auto droots = poly_integer_roots_bounded(K, chi_inf, root_bound);
    long deg_n = -1;
    for (long d : droots) deg_n = std::max(deg_n, d + den.degree());
    if (deg_n < 0) return {};

    // condition: sum a_i z_i den^{n-i} = 0 with z_0 = N, z_{i+1} = z_i' den - (i+1) den' z_i
    auto residual_for = [&](const Poly<QQ>& N) {
        Poly<QQ> Dp = poly_derivative(K, den);
        Poly<QQ> z = N;
        std::vector<Poly<QQ>> zs;
        for (int i = 0; i <= n; i++) {
            zs.push_back(z);
            if (i < n)
                z = poly_sub(K, poly_mul(K, poly_derivative(K, z), den),
                             poly_scale(K, poly_mul(K, Dp, z), mpq_class(i + 1)));
        }
        Poly<QQ> acc, dpow = poly_one(K);
        for (int i = n; i >= 0; i--) {
            acc = poly_add(K, acc, poly_mul(K, poly_mul(K, polys[i], zs[i]), dpow));
            if (i > 0) dpow = poly_mul(K, dpow, den);
        }
        return acc;
    };

    int cols = (int)deg_n + 1;
    std::vector<Poly<QQ>> residuals(cols);
    int max_len = 1;
    for (int c = 0; c < cols; c++) {
        residuals[c] = residual_for(poly_monomial(K, K.one(), c));
        max_len = std::max(max_len, residuals[c].degree() + 1);
    }
    Matrix<QQ> mat(K, max_len, cols);
    for (int c = 0; c < cols; c++)
        for (int r = 0; r <= residuals[c].degree(); r++) mat.at(r, c) = residuals[c].c[r];

    std::vector<RatFunc<QQ>> out;
    for (auto& v : nullspace(K, mat)) {
        Poly<QQ> N;
        N.c = v;
        poly_trim(K, N);
        if (N.is_zero()) continue;
        RatFunc<QQ> y = rf_normalize(K, N, den);
        y = rf_scale(K, y, K.inv(poly_lc(K, y.num))); // monic numerator
        if (apply_rf(K, Ln, y).is_zero()) out.push_back(y);
    }
    return out;
}

// --- intertwiners ---

bool is_self_adjoint(const QQ& K, const OreOp<QQ>& F) {
    OreOp<QQ> a = adjoint(K, F);
    OreOp<QQ> s = (F.order() % 2 == 1) ? ore_neg(K, F) : F;
    return ore_eq(K, a, s);
}

namespace {

OreOp<Fp> compose_mult_x(const Fp& K, const OreOp<Fp>& m) {
    // M o (x .): coefficients b_q = x a_q + (q+1) a_{q+1}
    OreOp<Fp> nx;
    nx.c.assign(m.c.size(), rf_zero(K));
    RatFunc<Fp> X = rf_from_poly(K, poly_x(K));
    for (size_t q = 0; q < m.c.size(); q++) {
        nx.c[q] = rf_mul(K, m.c[q], X);
        if (q + 1 < m.c.size())
            nx.c[q] = rf_add(K, nx.c[q], rf_scale(K, m.c[q + 1], K.from_int((long)q + 1)));
    }
    ore_trim(K, nx);
    return nx;
}

OreOp<Fp> compose_D(const Fp& K, const OreOp<Fp>& m) {
    OreOp<Fp> up;
    up.c.assign(m.c.size() + 1, rf_zero(K));
    for (size_t q = 0; q < m.c.size(); q++) up.c[q + 1] = m.c[q];
    ore_trim(K, up);
    return up;
}

std::vector<std::vector<u64>> intertwiner_kernel_mod_p(const Fp& K, const OreOp<Fp>& L,
                                                       const OreOp<Fp>& M, int ord_a, int deg_b,
                                                       bool denominator_form) {
    OreOp<Fp> Mwork = M;
    if (denominator_form) Mwork = op_mul(K, M, ore_mult(K, rf_inv(K, L.c.back())));
    const int n = L.order();
    std::vector<std::vector<RatFunc<Fp>>> rems; // column (j*ord_a + i)
    OreOp<Fp> Mj = Mwork;
    for (int j = 0; j <= deg_b; j++) {
        OreOp<Fp> Mji = Mj;
        for (int i = 0; i < ord_a; i++) {
            OreOp<Fp> r = right_divide(K, Mji, L).second;
            std::vector<RatFunc<Fp>> slots(n, rf_zero(K));
            for (int s = 0; s < (int)r.c.size(); s++) slots[s] = r.c[s];
            rems.push_back(std::move(slots));
            Mji = compose_D(K, Mji);
        }
        Mj = compose_mult_x(K, Mj);
    }
    const int cols = (int)rems.size();
    std::vector<Poly<Fp>> dens(n, poly_one(K));
    for (auto& r : rems)
        for (int s = 0; s < n; s++) {
            Poly<Fp> g = poly_gcd(K, dens[s], r[s].den);
            dens[s] = poly_mul(K, dens[s], poly_divmod(K, r[s].den, g).first);
        }
    int max_deg = 0;
    std::vector<std::vector<Poly<Fp>>> cleared(cols, std::vector<Poly<Fp>>(n));
    for (int c = 0; c < cols; c++)
        for (int s = 0; s < n; s++) {
            Poly<Fp> extra = poly_divmod(K, dens[s], rems[c][s].den).first;
            cleared[c][s] = poly_mul(K, rems[c][s].num, extra);
            max_deg = std::max(max_deg, cleared[c][s].degree());
        }
    int rows = n * (max_deg + 1);
    std::vector<u64> mat((size_t)rows * cols, 0);
    for (int c = 0; c < cols; c++)
        for (int s = 0; s < n; s++)
            for (int d = 0; d <= cleared[c][s].degree(); d++)
                mat[(size_t)(s * (max_deg + 1) + d) * cols + c] = cleared[c][s].c[d];
    return nullspace_fp(K, mat, rows, cols);
}

OreOp<Fp> intertwiner_from_vec(const Fp& K, const std::vector<u64>& v, int ord_a, int deg_b) {
    OreOp<Fp> A;
    A.c.assign(ord_a, rf_zero(K));
    for (int i = 0; i < ord_a; i++) {
        Poly<Fp> p;
        p.c.assign(deg_b + 1, 0);
        for (int j = 0; j <= deg_b; j++) p.c[j] = v[(size_t)j * ord_a + i];
        poly_trim(K, p);
        A.c[i] = rf_from_poly(K, p);
    }
    ore_trim(K, A);
    return A;
}

} // namespace

IntertwinerResult intertwiner_search(const OreOp<QQ>& L, const OreOp<QQ>& M, int degree_bound,
                                     int order_bound) {
    QQ Q;
    OreOp<QQ> Ln = ore_normalize_primitive(Q, L);
    OreOp<QQ> Mn = ore_normalize_primitive(Q, M);
    const int n = Ln.order();
    int base = degree_bound >= 0 ? degree_bound : 4 * ore_max_degree(Q, Ln) + 20;
    int max_ord = order_bound >= 0 ? std::min(order_bound + 1, n) : n;

    IntertwinerResult res;
    const auto& primes = default_primes();
    std::vector<int> bounds = degree_bound >= 0
                                  ? std::vector<int>{base}
                                  : std::vector<int>{base, base + 20, base + 40};
    for (int B : bounds) {
        res.degree_bound = B;
        for (int denom_form = 0; denom_form <= 1; denom_form++) {
            if (denom_form) res.tried_denominator_form = true;
            for (int ord_a = 1; ord_a <= max_ord; ord_a++) {
                std::vector<std::pair<u64, OreOp<Fp>>> fits;
                bool empty_seen = false;
                size_t pi = 0;
                for (; pi < primes.size() && fits.size() < 2; pi++) {
                    Fp K(primes[pi]);
                    try {
                        auto kern = intertwiner_kernel_mod_p(K, ore_reduce(K, Ln), ore_reduce(K, Mn),
                                                             ord_a, B, denom_form);
                        if (kern.empty()) { empty_seen = true; break; }
                        fits.push_back({K.p, intertwiner_from_vec(K, kern[0], ord_a, B)});
                    } catch (const std::domain_error&) {
                        continue;
                    }
                }
                if (empty_seen || fits.empty()) continue;
                while (true) {
                    auto lifted = lift_operator(fits, nullptr);
                    if (lifted) {
                        OreOp<QQ> A = *lifted;
                        if (denom_form) A = op_mul(Q, A, ore_mult(Q, rf_inv(Q, Ln.c.back())));
                        A = op_mul(Q, ore_one(Q), A);
                        if (!A.is_zero() &&
                            right_divide(Q, op_mul(Q, Mn, A), Ln).second.is_zero()) {
                            res.A = A;
                            return res;
                        }
                    }
                    if (pi >= primes.size()) break;
                    Fp K(primes[pi++]);
                    try {
                        auto kern = intertwiner_kernel_mod_p(K, ore_reduce(K, Ln), ore_reduce(K, Mn),
                                                             ord_a, B, denom_form);
                        if (kern.empty()) break;
                        fits.push_back({K.p, intertwiner_from_vec(K, kern[0], ord_a, B)});
                    } catch (const std::domain_error&) {
                        continue;
                    }
                }
            }
        }
    }
    return res;
}

// --- decompositions ---

OreOp<QQ> expand_decomposition(const DecompositionSpec& spec) {
    QQ K;
    for (auto& f : spec.factors)
        if (!is_self_adjoint(K, f))
            throw std::invalid_argument("expand_decomposition: factor fails the self-adjointness check");
    OreOp<QQ> racc = ore_mult(K, spec.r.is_zero() ? rf_one(K) : spec.r);
    if (spec.factors.empty()) return racc;
    OreOp<QQ> kprev = ore_mult(K, rf_const(K, spec.c)); // empty continuant = c
    OreOp<QQ> kcur = spec.factors.back();
    for (int i = (int)spec.factors.size() - 2; i >= 0; i--) {
        OreOp<QQ> knext = ore_add(K, op_mul(K, spec.factors[i], kcur), kprev);
        kprev = std::move(kcur);
        kcur = std::move(knext);
    }
    return op_mul(K, kcur, racc);
}

std::optional<DecompositionSpec> decomposition_search(const OreOp<QQ>& L,
                                                      const std::vector<int>& pattern,
                                                      int degree_bound) {
    QQ K;
    const OreOp<QQ>& Ln = L; // decompose the operator as given
    // trivial single-factor pattern: L itself self-adjoint
    if (pattern.size() == 1 && pattern[0] == Ln.order()) {
        if (is_self_adjoint(K, Ln)) {
            DecompositionSpec spec;
            spec.factors = {Ln};
            spec.r = rf_one(K);
            return spec;
        }
        return std::nullopt;
    }
    auto inter = intertwiner_search(Ln, adjoint(K, Ln), degree_bound);
    if (!inter.A) return std::nullopt;

    std::vector<OreOp<QQ>> quotients;
    OreOp<QQ> a = Ln, b = *inter.A;
    OreOp<QQ> trailing;
    while (true) {
        if (b.is_zero()) return std::nullopt;
        auto [q, r] = right_divide(K, a, b);
        quotients.push_back(q);
        if (r.is_zero()) {
            if (b.order() != 0) return std::nullopt; // chain ended on a non-scalar
            trailing = b;
            break;
        }
        a = std::move(b);
        b = std::move(r);
    }
    DecompositionSpec spec;
    spec.factors = quotients;
    spec.c = 1;
    spec.r = trailing.c[0];
    if (!pattern.empty() && spec.orders() != pattern) return std::nullopt;
    for (auto& f : spec.factors)
        if (!is_self_adjoint(K, f)) return std::nullopt;
    if (!ore_eq(K, expand_decomposition(spec), Ln)) return std::nullopt;

    if (spec.factors.size() == 2) {
        // display normalization: primitive factors, scalars folded into (c, r)
        OreOp<QQ> A = ore_normalize_primitive(K, spec.factors[0]);
        OreOp<QQ> B = ore_normalize_primitive(K, spec.factors[1]);
        RatFunc<QQ> alpha = rf_div(K, spec.factors[0].c.back(), A.c.back());
        RatFunc<QQ> beta = rf_div(K, spec.factors[1].c.back(), B.c.back());
        RatFunc<QQ> ab = rf_mul(K, alpha, beta);
        if (ab.is_poly() && ab.num.degree() == 0 && !ab.is_zero()) {
            mpq_class s = ab.num.c[0];
            DecompositionSpec norm;
            norm.factors = {A, B};
            norm.c = 1 / s;
            norm.r = rf_scale(K, spec.r, s);
            if (ore_eq(K, expand_decomposition(norm), Ln)) return norm;
        }
    }
    return spec;
}

// --- factor search from local solutions ---

namespace {

std::optional<std::vector<u64>> match_seed(const Fp& K, const std::vector<Series<Fp>>& basis,
                                           const std::vector<u64>& seed) {
    if (basis.empty()) return std::nullopt;
    int n = basis[0].trunc();
    Matrix<Fp> m(K, (int)seed.size(), (int)basis.size());
    for (size_t r = 0; r < seed.size(); r++)
        for (size_t c = 0; c < basis.size(); c++) m.at((int)r, (int)c) = basis[c].a[r];
    auto sol = solve(K, m, seed);
    if (!sol) return std::nullopt;
    std::vector<u64> out((size_t)n + 1, 0);
    for (int i = 0; i <= n; i++) {
        u64 acc = 0;
        for (size_t c = 0; c < basis.size(); c++) acc = K.add(acc, K.mul((*sol)[c], basis[c].a[i]));
        out[i] = acc;
    }
    for (size_t i = 0; i < seed.size(); i++)
        if (out[i] != seed[i]) return std::nullopt;
    return out;
}

} // namespace

std::optional<OreOp<QQ>> factor_from_local_solutions(const OreOp<QQ>& L, int k,
                                                     const FactorSearchOptions& opts) {
    QQ Q;
    OreOp<QQ> Ln = ore_normalize_primitive(Q, L);
    if (k <= 0 || k >= Ln.order())
        throw std::invalid_argument("factor_from_local_solutions: factor order out of range");
    std::vector<u64> primes = opts.primes.empty() ? default_primes() : opts.primes;

    GuessConfig gcfg;
    gcfg.max_order = k;
    gcfg.max_degree = opts.max_degree;
    gcfg.margin = opts.margin;

    std::vector<std::pair<u64, OreOp<Fp>>> fits;
    for (u64 p : primes) {
        Fp K(p);
        OreOp<Fp> Lp;
        try {
            Lp = ore_reduce(K, Ln);
        } catch (const std::domain_error&) {
            continue;
        }
        auto basis = power_series_solutions(K, Lp, opts.series_terms);
        std::vector<std::vector<u64>> candidates;
        if (opts.seed) {
            auto seed_p = series_mod(K, *opts.seed);
            if (!seed_p) continue;
            auto m = match_seed(K, basis, *seed_p);
            if (!m) return std::nullopt;
            candidates.push_back(*m);
        } else {
            for (auto& b : basis) candidates.push_back(b.a);
        }
        std::optional<OreOp<Fp>> found;
        for (auto& cand : candidates) {
            auto mo = min_order_mod_p(K, cand, gcfg);
            if (!mo || mo->order != k) continue;
            if (!right_divide(K, Lp, mo->op).second.is_zero()) continue;
            found = mo->op;
            break;
        }
        if (!found) {
            if (fits.empty()) return std::nullopt;
            continue;
        }
        fits.push_back({p, ore_clear_denominators(K, *found)});
        if (fits.size() >= 2) {
            auto lifted = lift_operator(fits, nullptr);
            if (lifted) {
                OreOp<QQ> cand = ore_normalize_primitive(Q, *lifted);
                if (right_divide(Q, Ln, cand).second.is_zero()) return cand;
            }
        }
    }
    return std::nullopt;
}

} // namespace diaglab

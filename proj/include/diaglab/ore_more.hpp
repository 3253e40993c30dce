#ifndef DIAGLAB_ORE_MORE_HPP
#define DIAGLAB_ORE_MORE_HPP

#include <map>

#include "diaglab/errors.hpp"
#include "diaglab/guess.hpp"
#include "diaglab/ore.hpp"

namespace diaglab {

// --- closures ---

template <class F>
struct ClosureResult {
    OreOp<F> op;
    int expected_order = 0; // generic order; op.order() < expected_order means a drop
    bool order_dropped = false;
};

// Operator annihilating k-fold products of solutions of L, built by reducing
// derivatives of a generic product modulo L and looking for the first linear
// dependence over F(x).
template <class F>
ClosureResult<F> symmetric_power(const F& K, const OreOp<F>& L, int k);

// Operator annihilating 2x2 Wronskians y1 y2' - y1' y2 of solutions.
template <class F>
ClosureResult<F> exterior_square(const F& K, const OreOp<F>& L);

// Rational-path versions with modular construction + CRT lift; exact
// verification happens against series solutions (see verify_closure).
ClosureResult<QQ> symmetric_power_lifted(const OreOp<QQ>& L, int k);
ClosureResult<QQ> exterior_square_lifted(const OreOp<QQ>& L);

// --- local data ---

// Indicial polynomial of L at a finite singular point c (roots = local
// exponents). Throws std::domain_error at a non-singular point.
Poly<QQ> indicial_polynomial(const OreOp<QQ>& L, const mpq_class& c);
Poly<QQ> indicial_polynomial_at_infinity(const OreOp<QQ>& L);

// Exponents of x^d asymptotics at infinity (degree polynomial): used for
// polynomial/rational solution degree bounds. Same as the infinity indicial.
Poly<QQ> degree_polynomial(const OreOp<QQ>& L);

// Basis of the rational-function kernel of L (exact; pole orders bounded by
// local integer exponents, integer roots scanned within root_bound).
std::vector<RatFunc<QQ>> rational_solutions(const OreOp<QQ>& L, long root_bound = 400);

// Power-series solutions at 0 (no logarithms), echelonized by leading index.
template <class F>
std::vector<Series<F>> power_series_solutions(const F& K, const OreOp<F>& L, int n);

// --- intertwiners ---

struct IntertwinerResult {
    std::optional<OreOp<QQ>> A; // exact over Q, verified: rem(M*A, L) = 0
    int degree_bound = 0;       // radius the search covered (for none verdicts)
    bool tried_denominator_form = false;
};

// A with M*A = 0 mod L, 0 <= ord A < ord L, polynomial coefficients of
// degree <= degree_bound (defaults to 4*deg(L)+20, escalated twice). Both the
// plain polynomial form and coefficients over lc(L) are tried.
IntertwinerResult intertwiner_search(const OreOp<QQ>& L, const OreOp<QQ>& M, int degree_bound = -1,
                                     int order_bound = -1);

// Self-adjointness in the paper's convention: adjoint(F) = (-1)^{ord F} * F.
bool is_self_adjoint(const QQ& K, const OreOp<QQ>& F);

// --- canonical decompositions ---
// All catalogued forms are continuants of self-adjoint factors times a
// trailing rational function: K[F1] = F1, K[F1..Fk] = F1*K[F2..Fk] + K[F3..Fk],
// with the empty continuant worth c (so K[F1,F2] = F1*F2 + c).
struct DecompositionSpec {
    std::vector<OreOp<QQ>> factors; // chain-exact scalars; each +/- self-adjoint
    mpq_class c = 1;                // only meaningful for two factors
    RatFunc<QQ> r;                  // trailing rational factor
    std::vector<int> orders() const {
        std::vector<int> o;
        for (auto& f : factors) o.push_back(f.order());
        return o;
    }
};

// Expand the word; every factor must pass the self-adjointness check.
OreOp<QQ> expand_decomposition(const DecompositionSpec& spec);

// Euclidean-chain search: intertwiner to the adjoint, then successive right
// divisions. The pattern is the expected factor-order word; nullopt when the
// chain does not complete or does not match.
std::optional<DecompositionSpec> decomposition_search(const OreOp<QQ>& L,
                                                      const std::vector<int>& pattern,
                                                      int degree_bound = -1);

// --- factorization by local solutions ---

struct FactorSearchOptions {
    int series_terms = 420;
    int max_degree = 80;
    int margin = 12;
    std::vector<u64> primes; // defaults to the published list
    const Series<QQ>* seed = nullptr; // analytic seed of the wanted right factor
};

// Right factor of order k recovered from annihilators of subsets of the
// analytic solution basis; accepted only when right_divide(L, cand) has zero
// remainder, checked exactly over Q.
std::optional<OreOp<QQ>> factor_from_local_solutions(const OreOp<QQ>& L, int k,
                                                     const FactorSearchOptions& opts = {});

// --- template implementations ---

namespace detail {

// Vectors over F(x) with an implicit denominator lc^t; D acts by the product
// rule plus reduction of y^{(n)} through L.
template <class F>
struct DerivationState {
    const F& K;
    Poly<F> lead;                  // a_n
    std::vector<Poly<F>> minus_ai; // -a_i for i < n
    int n;

    DerivationState(const F& Kf, const OreOp<F>& L) : K(Kf) {
        auto polys = ore_poly_coeffs(Kf, L);
        n = (int)polys.size() - 1;
        lead = polys[n];
        for (int i = 0; i < n; i++) minus_ai.push_back(poly_neg(Kf, polys[i]));
    }
};

} // namespace detail

// Reduction-of-derivatives construction shared by Sym^k and Ext^2. The
// module basis is indexed abstractly; step(vec) returns D applied to the
// basis element combination, with entries over the implicit lc^t denominator.
template <class F, class StepFn>
ClosureResult<F> closure_by_reduction(const F& K, const OreOp<F>& L, int dim, StepFn&& step) {
    // iterate w, Dw, D^2 w, ... with common denominator lead^t
    // elimination over F(x): store echelonized rows with their D-combination
    std::vector<std::vector<RatFunc<F>>> rows;     // echelon rows
    std::vector<int> pivot_of_row;
    std::vector<std::vector<RatFunc<F>>> combos;   // same-length coords over D^t
    std::vector<std::vector<RatFunc<F>>> raw;      // D^t w in module coords

    ClosureResult<F> res;
    res.expected_order = dim;

    std::vector<RatFunc<F>> cur(dim, rf_zero(K));
    cur[0] = rf_one(K); // w = first basis element
    for (int t = 0;; t++) {
        if (t > dim) throw std::logic_error("closure_by_reduction: no dependence found");
        raw.push_back(cur);
        // reduce cur against echelon rows
        std::vector<RatFunc<F>> red = cur;
        std::vector<RatFunc<F>> combo((size_t)t + 1, rf_zero(K));
        combo[t] = rf_one(K);
        for (size_t r = 0; r < rows.size(); r++) {
            const RatFunc<F>& lead_entry = red[pivot_of_row[r]];
            if (lead_entry.is_zero()) continue;
            RatFunc<F> f = lead_entry; // rows are pivot-normalized to 1
            for (int c = 0; c < dim; c++)
                red[c] = rf_sub(K, red[c], rf_mul(K, f, rows[r][c]));
            for (size_t c = 0; c < combos[r].size(); c++)
                combo[c] = rf_sub(K, combo[c], rf_mul(K, f, combos[r][c]));
        }
        int piv = -1;
        for (int c = 0; c < dim; c++)
            if (!red[c].is_zero()) { piv = c; break; }
        if (piv < 0) {
            // dependence: sum combo[t'] D^{t'} w = 0 -> operator coefficients
            OreOp<F> op;
            op.c = combo;
            ore_trim(K, op);
            res.op = op;
            res.order_dropped = op.order() < dim;
            return res;
        }
        RatFunc<F> inv = rf_inv(K, red[piv]);
        for (int c = 0; c < dim; c++) red[c] = rf_mul(K, red[c], inv);
        for (auto& v : combo) v = rf_mul(K, v, inv);
        rows.push_back(red);
        pivot_of_row.push_back(piv);
        combos.push_back(combo);
        // cur <- D(cur)
        cur = step(cur);
    }
}

template <class F>
ClosureResult<F> symmetric_power(const F& K, const OreOp<F>& L, int k) {
    if (k < 2) throw std::invalid_argument("symmetric_power: k >= 2");
    auto polys = ore_poly_coeffs(K, L);
    const int n = (int)polys.size() - 1;
    if (n < 1) throw std::invalid_argument("symmetric_power: order >= 1 needed");
    RatFunc<F> an = rf_from_poly(K, polys[n]);
    std::vector<RatFunc<F>> red(n); // y^{(n)} = sum red[i] y^{(i)}
    for (int i = 0; i < n; i++)
        red[i] = rf_neg(K, rf_div(K, rf_from_poly(K, polys[i]), an));

    // basis: multisets of size k over {0..n-1}, encoded as sorted vectors
    std::vector<std::vector<int>> basis;
    std::vector<int> m(k, 0);
    while (true) {
        basis.push_back(m);
        int i = k - 1;
        while (i >= 0 && m[i] == n - 1) i--;
        if (i < 0) break;
        int v = m[i] + 1;
        for (int j = i; j < k; j++) m[j] = v;
    }
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < basis.size(); i++) index[basis[i]] = (int)i;
    const int dim = (int)basis.size();

    auto step = [&](const std::vector<RatFunc<F>>& v) {
        std::vector<RatFunc<F>> out(dim, rf_zero(K));
        for (int b = 0; b < dim; b++) {
            if (v[b].is_zero()) continue;
            out[b] = rf_add(K, out[b], rf_derivative(K, v[b]));
            // raise each position
            for (int pos = 0; pos < k; pos++) {
                if (pos + 1 < k && basis[b][pos] == basis[b][pos + 1]) continue; // same index: count once below
                int mult = 0;
                for (int q = 0; q < k; q++)
                    if (basis[b][q] == basis[b][pos]) mult++;
                std::vector<int> up = basis[b];
                int idx = up[pos];
                RatFunc<F> coef = rf_scale(K, v[b], K.from_int(mult));
                if (idx + 1 < n) {
                    up[pos] = idx + 1;
                    std::sort(up.begin(), up.end());
                    out[index[up]] = rf_add(K, out[index[up]], coef);
                } else {
                    for (int j = 0; j < n; j++) {
                        if (red[j].is_zero()) continue;
                        std::vector<int> rep = basis[b];
                        rep[pos] = j;
                        std::sort(rep.begin(), rep.end());
                        out[index[rep]] = rf_add(K, out[index[rep]], rf_mul(K, coef, red[j]));
                    }
                }
            }
        }
        return out;
    };
    return closure_by_reduction(K, L, dim, step);
}

template <class F>
ClosureResult<F> exterior_square(const F& K, const OreOp<F>& L) {
    auto polys = ore_poly_coeffs(K, L);
    const int n = (int)polys.size() - 1;
    if (n < 2) throw std::invalid_argument("exterior_square: order >= 2 needed");
    RatFunc<F> an = rf_from_poly(K, polys[n]);
    std::vector<RatFunc<F>> red(n);
    for (int i = 0; i < n; i++)
        red[i] = rf_neg(K, rf_div(K, rf_from_poly(K, polys[i]), an));

    // basis: pairs (i, j) with i < j
    std::vector<std::pair<int, int>> basis;
    for (int i = 0; i < n; i++)
        for (int j = i + 1; j < n; j++) basis.push_back({i, j});
    auto index = [&](int i, int j) {
        // i < j assumed
        return (int)(std::find(basis.begin(), basis.end(), std::make_pair(i, j)) - basis.begin());
    };
    const int dim = (int)basis.size();

    auto add_pair = [&](std::vector<RatFunc<F>>& out, int i, int j, const RatFunc<F>& coef) {
        if (i == j) return;
        if (i < j) out[index(i, j)] = rf_add(K, out[index(i, j)], coef);
        else out[index(j, i)] = rf_sub(K, out[index(j, i)], coef);
    };

    auto step = [&](const std::vector<RatFunc<F>>& v) {
        std::vector<RatFunc<F>> out(dim, rf_zero(K));
        for (int b = 0; b < dim; b++) {
            if (v[b].is_zero()) continue;
            auto [i, j] = basis[b];
            out[b] = rf_add(K, out[b], rf_derivative(K, v[b]));
            // (i+1, j) and (i, j+1) with reduction at n
            if (i + 1 < n) add_pair(out, i + 1, j, v[b]);
            else
                for (int q = 0; q < n; q++)
                    if (!red[q].is_zero()) add_pair(out, q, j, rf_mul(K, v[b], red[q]));
            if (j + 1 < n) add_pair(out, i, j + 1, v[b]);
            else
                for (int q = 0; q < n; q++)
                    if (!red[q].is_zero()) add_pair(out, i, q, rf_mul(K, v[b], red[q]));
        }
        return out;
    };
    return closure_by_reduction(K, L, dim, step);
}

template <class F>
std::vector<Series<F>> power_series_solutions(const F& K, const OreOp<F>& L, int n) {
    auto polys = ore_poly_coeffs(K, L);
    const int r = (int)polys.size() - 1;
    int dmax = 0;
    for (auto& p : polys) dmax = std::max(dmax, p.degree());
    const int top = n + r + dmax + 2; // overshoot, spurious tail filtered below
    // unknowns y_0..y_top, equations: x^m coefficient for m = 0..top-r
    const int rows = top - r + 1, cols = top + 1;
    Matrix<F> mat(K, rows, cols);
    for (int i = 0; i <= r; i++) {
        for (int j = 0; j <= polys[i].degree(); j++) {
            auto a = poly_coeff(K, polys[i], j);
            if (K.is_zero(a)) continue;
            for (int m = 0; m < rows; m++) {
                long idx = m + i - j;
                if (idx < 0 || idx > top) continue;
                // ff(idx, i)
                typename F::Elt f = K.one();
                for (int q = 0; q < i; q++) f = K.mul(f, K.from_int(idx - q));
                mat.at(m, (int)idx) = K.add(mat.at(m, (int)idx), K.mul(a, f));
            }
        }
    }
    auto kern = nullspace(K, mat);
    // echelonize by leading index; keep solutions with leading index <= n
    // (genuine analytic exponents are small; tail artifacts start near `top`)
    std::sort(kern.begin(), kern.end(), [&](auto& a, auto& b) {
        int la = cols, lb = cols;
        for (int i = 0; i < cols; i++)
            if (!K.is_zero(a[i])) { la = i; break; }
        for (int i = 0; i < cols; i++)
            if (!K.is_zero(b[i])) { lb = i; break; }
        return la < lb;
    });
    std::vector<std::vector<typename F::Elt>> ech;
    std::vector<int> leads;
    for (auto& v : kern) {
        std::vector<typename F::Elt> w = v;
        for (size_t e = 0; e < ech.size(); e++) {
            if (K.is_zero(w[leads[e]])) continue;
            auto f = w[leads[e]];
            for (int c = 0; c < cols; c++) w[c] = K.sub(w[c], K.mul(f, ech[e][c]));
        }
        int lead = -1;
        for (int c = 0; c < cols; c++)
            if (!K.is_zero(w[c])) { lead = c; break; }
        if (lead < 0 || lead > n) continue;
        auto inv = K.inv(w[lead]);
        for (int c = 0; c < cols; c++) w[c] = K.mul(w[c], inv);
        ech.push_back(w);
        leads.push_back(lead);
    }
    std::vector<Series<F>> out;
    for (auto& w : ech) {
        Series<F> s = series_zero(K, n);
        for (int c = 0; c <= n; c++) s.a[c] = w[c];
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace diaglab

#endif

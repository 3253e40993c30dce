#include "diaglab/guess.hpp"

#include <algorithm>
#include <map>

#include "diaglab/reconstruct.hpp"

namespace diaglab {

std::vector<std::vector<u64>> hp_kernel_mod_p(const Fp& K, const std::vector<u64>& s, int r, int d) {
    const long T = (long)s.size();
    const long rows = T - r;
    const int U = (r + 1) * (d + 1);
    if (rows < U) throw std::invalid_argument("hp_kernel_mod_p: not enough terms");
    // falling factorials ff(t, i) = t (t-1) ... (t-i+1) for t < T
    // column (i,j): row t gets ff(t-j+i, i) * s_{t-j+i} when t >= j (index in range by t <= T-1-r)
    std::vector<u64> mat((size_t)rows * U, 0);
    std::vector<u64> ff((size_t)T, 0);
    for (int i = 0; i <= r; i++) {
        if (i == 0) {
            for (long t = 0; t < T; t++) ff[t] = 1;
        } else {
            // ff_i(t) = ff_{i-1}(t) * (t - i + 1)
            for (long t = 0; t < T; t++)
                ff[t] = K.mul(ff[t], K.from_int(t - i + 1));
        }
        // weighted series w_i(t) = ff(t, i) * s_t
        for (int j = 0; j <= d; j++) {
            int col = i * (d + 1) + j;
            for (long t = j; t < rows; t++) {
                long idx = t - j + i;
                mat[(size_t)t * U + col] = K.mul(ff[idx], s[idx]);
            }
        }
    }
    return nullspace_fp(K, mat, (int)rows, U);
}

OreOp<Fp> op_from_kernel(const Fp& K, const std::vector<u64>& v, int r, int d) {
    OreOp<Fp> L;
    L.c.resize(r + 1, rf_zero(K));
    for (int i = 0; i <= r; i++) {
        Poly<Fp> p;
        p.c.assign(d + 1, 0);
        for (int j = 0; j <= d; j++) p.c[j] = v[(size_t)i * (d + 1) + j];
        poly_trim(K, p);
        L.c[i] = rf_from_poly(K, p);
    }
    ore_trim(K, L);
    return L;
}

namespace {

// trailing-zero detection: series that is a polynomial of degree k
std::optional<int> polynomial_degree_of(const Fp& K, const std::vector<u64>& s, int margin) {
    int last = -1;
    for (size_t i = 0; i < s.size(); i++)
        if (s[i] != 0) last = (int)i;
    if (last < 0) return -1;                       // zero series
    if ((int)s.size() - 1 - last >= std::max(margin, 10)) return last;
    (void)K;
    return std::nullopt;
}

} // namespace

std::optional<ShapeFit> guess_shape_mod_p(const Fp& K, const std::vector<u64>& s,
                                          const GuessConfig& cfg) {
    const int v = cfg.effective_margin();
    if (auto pd = polynomial_degree_of(K, s, v)) {
        // zero series: order-0 unit; polynomial: first-order annihilator
        return ShapeFit{*pd < 0 ? 0 : 1, std::max(*pd, 0)};
    }
    // ascending order, each tried at the most generous degree the terms
    // allow, so the first hit has minimal order; then the degree is refined
    // downward by bisection (fits are monotone in the degree).
    for (int r = 1; r <= cfg.max_order; r++) {
        long avail = ((long)s.size() - v - r) / (r + 1) - 1;
        int d = (int)std::min<long>(cfg.max_degree, avail);
        if (d < 0) continue;
        if (hp_kernel_mod_p(K, s, r, d).empty()) continue;
        int lo = 0, hi = d;
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (!hp_kernel_mod_p(K, s, r, mid).empty()) hi = mid;
            else lo = mid + 1;
        }
        return ShapeFit{r, lo};
    }
    return std::nullopt;
}

std::vector<OreOp<Fp>> fit_shape_mod_p(const Fp& K, const std::vector<u64>& s, int r, int d) {
    auto kern = hp_kernel_mod_p(K, s, r, d);
    std::vector<OreOp<Fp>> out;
    for (auto& v : kern) out.push_back(op_from_kernel(K, v, r, d));
    return out;
}

std::optional<MinOrder> min_order_mod_p(const Fp& K, const std::vector<u64>& s,
                                        const GuessConfig& cfg) {
    const int v = cfg.effective_margin();
    if (auto pd = polynomial_degree_of(K, s, v)) {
        MinOrder mo;
        if (*pd < 0) {
            mo.order = 0; mo.degree = 0;
            mo.op = ore_one(K);
        } else {
            // p*D - p' annihilates the polynomial p
            Poly<Fp> p;
            p.c.assign(*pd + 1, 0);
            for (int i = 0; i <= *pd; i++) p.c[i] = s[i];
            poly_trim(K, p);
            mo.order = 1;
            mo.degree = p.degree();
            mo.op = OreOp<Fp>{{rf_from_poly(K, poly_neg(K, poly_derivative(K, p))),
                               rf_from_poly(K, p)}};
        }
        mo.degree_bound_checked = cfg.max_degree;
        return mo;
    }
    for (int r = 1; r <= cfg.max_order; r++) {
        long avail = ((long)s.size() - v - r) / (r + 1) - 1;
        int d = (int)std::min<long>(cfg.max_degree, avail);
        if (d < 0) return std::nullopt;
        auto kern = hp_kernel_mod_p(K, s, r, d);
        if (kern.empty()) continue;
        // among the kernel take the vector with the lowest trimmed degree
        int best = 0, best_deg = 1 << 20;
        for (size_t i = 0; i < kern.size(); i++) {
            OreOp<Fp> cand = op_from_kernel(K, kern[i], r, d);
            int deg = 0;
            for (auto& cf : cand.c) deg = std::max(deg, cf.num.degree());
            if (deg < best_deg) { best_deg = deg; best = (int)i; }
        }
        MinOrder mo;
        mo.op = op_from_kernel(K, kern[best], r, d);
        mo.order = mo.op.order();
        mo.degree = 0;
        for (auto& cf : mo.op.c) mo.degree = std::max(mo.degree, cf.num.degree());
        mo.degree_bound_checked = d;
        return mo;
    }
    return std::nullopt;
}

std::optional<std::vector<u64>> series_mod(const Fp& K, const Series<QQ>& s) {
    std::vector<u64> out(s.a.size());
    for (size_t i = 0; i < s.a.size(); i++) {
        if (K.from_mpz(s.a[i].get_den()) == 0) return std::nullopt;
        out[i] = K.from_mpq(s.a[i]);
    }
    return out;
}

std::optional<OreOp<QQ>> lift_operator(const std::vector<std::pair<u64, OreOp<Fp>>>& fits,
                                       const Series<QQ>* verify_against) {
    if (fits.empty()) return std::nullopt;
    QQ Q;
    int r = fits[0].second.order();
    int d = 0;
    for (auto& [p, op] : fits) {
        if (op.order() != r) return std::nullopt; // shape disagreement
        for (auto& cf : op.c) d = std::max(d, cf.num.degree());
    }
    // anchor: highest (i, j) with a nonzero entry in the first fit, must be
    // nonzero in every fit (otherwise an unlucky prime slipped through)
    int ai = -1, aj = -1;
    {
        const OreOp<Fp>& op = fits[0].second;
        for (int i = (int)op.c.size() - 1; i >= 0 && ai < 0; i--)
            for (int j = op.c[i].num.degree(); j >= 0 && ai < 0; j--)
                if (op.c[i].num.c[j] != 0) { ai = i; aj = j; }
    }
    if (ai < 0) return std::nullopt;
    std::vector<u64> primes;
    std::vector<std::vector<u64>> entries; // per prime, flattened (r+1)*(d+1)
    for (auto& [p, op] : fits) {
        Fp K(p);
        u64 anchor = K.from_mpz(0);
        anchor = (ai < (int)op.c.size()) ? poly_coeff(K, op.c[ai].num, aj) : 0;
        if (anchor == 0) return std::nullopt;
        u64 inv = K.inv(anchor);
        std::vector<u64> flat((size_t)(r + 1) * (d + 1), 0);
        for (int i = 0; i <= op.order(); i++)
            for (int j = 0; j <= op.c[i].num.degree(); j++)
                flat[(size_t)i * (d + 1) + j] = K.mul(poly_coeff(K, op.c[i].num, j), inv);
        primes.push_back(p);
        entries.push_back(std::move(flat));
    }
    auto lifted = lift_vector(entries, primes);
    if (!lifted) return std::nullopt;
    OreOp<QQ> L;
    L.c.assign(r + 1, rf_zero(Q));
    for (int i = 0; i <= r; i++) {
        Poly<QQ> p;
        p.c.assign(d + 1, Q.zero());
        for (int j = 0; j <= d; j++) p.c[j] = (*lifted)[(size_t)i * (d + 1) + j];
        poly_trim(Q, p);
        L.c[i] = rf_from_poly(Q, p);
    }
    ore_trim(Q, L);
    if (L.is_zero() || L.order() != r) return std::nullopt;
    L = ore_normalize_primitive(Q, L);
    if (verify_against) {
        Series<QQ> img = apply(Q, L, *verify_against);
        if (!series_is_zero(Q, img)) return std::nullopt;
    }
    return L;
}

std::optional<GuessResult> guess_operator(const Series<QQ>& s, const GuessConfig& cfg) {
    QQ Q;
    const int v = cfg.effective_margin();
    std::vector<u64> primes = cfg.prime_list();

    // degenerate inputs first
    {
        bool zero = series_is_zero(Q, s);
        int last = -1;
        for (size_t i = 0; i < s.a.size(); i++)
            if (sgn(s.a[i]) != 0) last = (int)i;
        if (zero) {
            GuessResult g;
            g.op = ore_one(Q);
            g.order = 0; g.degree = 0;
            g.terms_used = (long)s.a.size();
            g.verified_margin = (int)s.a.size();
            return g;
        }
        if (last >= 0 && (int)s.a.size() - 1 - last >= v) {
            Poly<QQ> p;
            p.c.assign(last + 1, Q.zero());
            for (int i = 0; i <= last; i++) p.c[i] = s.a[i];
            OreOp<QQ> L{{rf_from_poly(Q, poly_neg(Q, poly_derivative(Q, p))), rf_from_poly(Q, p)}};
            GuessResult g;
            g.op = ore_normalize_primitive(Q, L);
            g.order = 1; g.degree = last;
            g.terms_used = (long)s.a.size();
            g.verified_margin = (int)s.a.size() - 1 - last;
            return g;
        }
    }

    // shape consensus across up to 3 usable primes
    std::map<std::pair<int, int>, int> votes;
    std::vector<std::pair<u64, std::vector<u64>>> reduced;
    for (u64 p : primes) {
        if (reduced.size() >= 3) break;
        Fp K(p);
        auto sm = series_mod(K, s);
        if (!sm) continue;
        auto sh = guess_shape_mod_p(K, *sm, cfg);
        if (sh) votes[{sh->order, sh->degree}]++;
        else votes[{-1, -1}]++;
        reduced.push_back({p, std::move(*sm)});
    }
    if (reduced.empty()) return std::nullopt;
    std::pair<int, int> shape{-1, -1};
    int best = 0;
    for (auto& [sh, n] : votes)
        if (n > best) { best = n; shape = sh; }
    if (shape.first < 0) return std::nullopt;

    // fit the agreed shape mod more primes until lift + verify succeeds
    std::vector<std::pair<u64, OreOp<Fp>>> fits;
    for (auto& [p, sm] : reduced) {
        Fp K(p);
        auto ops = fit_shape_mod_p(K, sm, shape.first, shape.second);
        if (ops.size() != 1) continue; // want a one-dimensional fit for lifting
        fits.push_back({p, ops[0]});
    }
    size_t next_prime = reduced.size();
    while (true) {
        if (!fits.empty()) {
            auto lifted = lift_operator(fits, &s);
            if (lifted) {
                GuessResult g;
                g.op = *lifted;
                g.order = g.op.order();
                for (auto& cf : g.op.c) g.degree = std::max(g.degree, cf.num.degree());
                g.terms_used = (long)s.a.size();
                g.verified_margin = (int)s.a.size() - (int)needed_terms(g.order, g.degree, 0);
                g.evidence_level = cfg.survey_mode;
                return g;
            }
        }
        if (next_prime >= primes.size()) return std::nullopt;
        Fp K(primes[next_prime++]);
        auto sm = series_mod(K, s);
        if (!sm) continue;
        auto ops = fit_shape_mod_p(K, *sm, shape.first, shape.second);
        if (ops.size() == 1) fits.push_back({K.p, ops[0]});
    }
}

} // namespace diaglab

#include "diaglab/galois.hpp"

#include "diaglab/reconstruct.hpp"

namespace diaglab {

std::string galois_kind_name(GaloisKind k) {
    switch (k) {
        case GaloisKind::ORTHOGONAL_EVIDENCE: return "ORTHOGONAL_EVIDENCE";
        case GaloisKind::SYMPLECTIC_EVIDENCE: return "SYMPLECTIC_EVIDENCE";
        case GaloisKind::SELF_DUAL_TRIVIAL: return "SELF_DUAL_TRIVIAL";
        case GaloisKind::NO_DUALITY_FOUND: return "NO_DUALITY_FOUND";
        case GaloisKind::REDUCIBLE: return "REDUCIBLE";
        case GaloisKind::UNRESOLVED: return "UNRESOLVED";
    }
    return "?";
}

GaloisVerdict classify(const OreOp<QQ>& L, const ClassifyBounds& bounds) {
    QQ K;
    GaloisVerdict v;
    v.rational_root_bound = bounds.rational_root_bound;
    OreOp<QQ> Ln = ore_normalize_primitive(K, L);
    const int n = Ln.order();
    if (n <= 1) {
        v.kind = GaloisKind::SELF_DUAL_TRIVIAL;
        v.witness_kind = "none";
        return v;
    }

    try {
        if (n == 2) {
            // SL(2) = Sp(2): Wronskian w solves a2 w' + a1 w = 0; evidence when
            // w^N is rational for some small N. The raw Wronskian operator is
            // stored rather than a group name.
            auto polys = ore_poly_coeffs(K, Ln);
            for (int N = 1; N <= 24; N++) {
                OreOp<QQ> wop{{rf_from_poly(K, poly_scale(K, polys[1], mpq_class(N))),
                               rf_from_poly(K, polys[2])}};
                auto sols = rational_solutions(wop, bounds.rational_root_bound);
                if (!sols.empty()) {
                    v.kind = GaloisKind::SYMPLECTIC_EVIDENCE;
                    v.witness_kind = "wronskian";
                    v.witness = sols[0];
                    v.closure = wop;
                    v.wronskian_power = N;
                    return v;
                }
            }
        }

        if (n <= bounds.max_closure_order) {
            auto sym = symmetric_power_lifted(Ln, 2);
            auto sols = rational_solutions(sym.op, bounds.rational_root_bound);
            if (!sols.empty()) {
                v.kind = GaloisKind::ORTHOGONAL_EVIDENCE;
                v.witness_kind = "sym2-rational-solution";
                v.witness = sols[0];
                v.closure = sym.op;
                return v;
            }
            auto ext = exterior_square_lifted(Ln);
            auto esols = rational_solutions(ext.op, bounds.rational_root_bound);
            if (!esols.empty()) {
                v.kind = GaloisKind::SYMPLECTIC_EVIDENCE;
                v.witness_kind = "ext2-rational-solution";
                v.witness = esols[0];
                v.closure = ext.op;
                return v;
            }
        }

        auto inter = intertwiner_search(Ln, adjoint(K, Ln), bounds.intertwiner_degree);
        v.intertwiner_bound = inter.degree_bound;
        if (inter.A) {
            v.kind = GaloisKind::UNRESOLVED;
            v.witness_kind = "none";
            v.note = "homomorphic to the adjoint (intertwiner of order " +
                     std::to_string(inter.A->order()) +
                     ") but no rational closure witness within the bounds";
            return v;
        }

        if (bounds.allow_factor_search) {
            FactorSearchOptions fo;
            fo.series_terms = bounds.factor_series_terms;
            for (int k = 1; k < n; k++) {
                auto f = factor_from_local_solutions(Ln, k, fo);
                if (!f) continue;
                v.kind = GaloisKind::REDUCIBLE;
                v.witness_kind = "factorization";
                auto q = right_divide(K, Ln, *f).first;
                v.factor_orders = {q.order(), f->order()};
                ClassifyBounds sub = bounds;
                sub.allow_factor_search = false;
                v.factor_verdicts.push_back(galois_kind_name(classify(q, sub).kind));
                v.factor_verdicts.push_back(galois_kind_name(classify(*f, sub).kind));
                return v;
            }
        }
    } catch (const resource_error& e) {
        v.kind = GaloisKind::UNRESOLVED;
        v.note = std::string("resource cap: ") + e.what();
        return v;
    }

    v.kind = GaloisKind::NO_DUALITY_FOUND;
    v.witness_kind = "none";
    return v;
}

std::vector<std::vector<int>> decomposition_patterns(GaloisKind kind, int order) {
    std::vector<std::vector<int>> out;
    if (kind == GaloisKind::ORTHOGONAL_EVIDENCE) {
        if (order == 3) out.push_back({1, 1, 1});
        if (order >= 4) {
            std::vector<int> w((size_t)order - 3, 1);
            w.push_back(3);
            out.push_back(w);
        }
        if (order == 3) out.push_back({3});
    } else if (kind == GaloisKind::SYMPLECTIC_EVIDENCE) {
        if (order == 4) {
            out.push_back({4});      // self-adjoint / conjugated
            out.push_back({2, 2});   // (L2 M2 + 1) r
        }
        if (order >= 6 && order % 2 == 0) {
            std::vector<int> w((size_t)(order - 4) / 2, 2);
            w.push_back(4);
            out.push_back(w);        // (L2 ... P4 + ...) r
            std::vector<int> w2((size_t)order / 2, 2);
            out.push_back(w2);       // documented order-2-tail exceptions
        }
        if (order == 2) out.push_back({2});
    }
    return out;
}

std::optional<DecompositionSpec> decomposition_profile(const OreOp<QQ>& L,
                                                       const GaloisVerdict& verdict,
                                                       int degree_bound) {
    if (verdict.kind != GaloisKind::ORTHOGONAL_EVIDENCE &&
        verdict.kind != GaloisKind::SYMPLECTIC_EVIDENCE)
        return std::nullopt;
    auto patterns = decomposition_patterns(verdict.kind, L.order());
    for (auto& p : patterns) {
        auto spec = decomposition_search(L, p, degree_bound);
        if (spec) return spec;
    }
    return std::nullopt;
}

AlgebraicityResult algebraicity_probe(const OreOp<QQ>& L, const Series<QQ>& s, int max_power,
                                      int max_coeff_degree) {
    QQ K;
    AlgebraicityResult res;
    res.power_bound = max_power;
    res.degree_bound = max_coeff_degree;

    const int margin = 12;
    const auto& primes = default_primes();
    for (int dy = 1; dy <= max_power; dy++) {
        int dx = max_coeff_degree;
        long need = (long)(dy + 1) * (dx + 1) + margin;
        Series<QQ> sx = s;
        if ((long)sx.a.size() < need)
            sx = extend_by_operator(K, ore_normalize_primitive(K, L), s, (int)need);
        const long T = (long)sx.a.size();

        auto kernel_mod = [&](const Fp& Kp) -> std::vector<std::vector<u64>> {
            auto sm = series_mod(Kp, sx);
            if (!sm) return {};
            std::vector<std::vector<u64>> pw(dy + 1, std::vector<u64>((size_t)T, 0));
            pw[0].assign((size_t)T, 0);
            pw[0][0] = 1;
            for (size_t t = 0; t < (size_t)T; t++) pw[0][t] = t == 0 ? 1 : 0;
            for (int i = 1; i <= dy; i++)
                for (long a = 0; a < T; a++) {
                    u64 acc = 0;
                    for (long b = 0; b <= a; b++)
                        acc = Kp.add(acc, Kp.mul(pw[i - 1][b], (*sm)[a - b]));
                    pw[i][a] = acc;
                }
            int cols = (dy + 1) * (dx + 1);
            std::vector<u64> m((size_t)T * cols, 0);
            for (int i = 0; i <= dy; i++)
                for (int j = 0; j <= dx; j++)
                    for (long t = j; t < T; t++)
                        m[(size_t)t * cols + i * (dx + 1) + j] = pw[i][t - j];
            return nullspace_fp(Kp, m, (int)T, cols);
        };

        // modular fits, CRT lift, exact verification on the full truncation
        std::vector<std::vector<std::vector<u64>>> kerns;
        std::vector<u64> used;
        bool empty = false;
        for (size_t pi = 0; pi < primes.size() && used.size() < 4; pi++) {
            Fp Kp(primes[pi]);
            auto kern = kernel_mod(Kp);
            if (kern.empty()) { empty = true; break; }
            kerns.push_back(kern);
            used.push_back(primes[pi]);
            if (used.size() < 2) continue;
            std::vector<std::vector<u64>> per_prime;
            for (auto& kv : kerns) per_prime.push_back(kv[0]);
            auto lifted = lift_vector(per_prime, used);
            if (!lifted) continue;
            std::vector<Poly<QQ>> rel(dy + 1);
            for (int i = 0; i <= dy; i++) {
                Poly<QQ> p;
                p.c.assign(dx + 1, K.zero());
                for (int j = 0; j <= dx; j++) p.c[j] = (*lifted)[(size_t)i * (dx + 1) + j];
                poly_trim(K, p);
                rel[i] = p;
            }
            // verify sum rel[i] s^i = 0 through the whole truncation
            Series<QQ> acc = series_zero(K, (int)T - 1);
            Series<QQ> pw = series_one(K, (int)T - 1);
            for (int i = 0; i <= dy; i++) {
                acc = series_add(K, acc, series_mul_poly(K, pw, rel[i]));
                if (i < dy) pw = series_mul(K, pw, sx);
            }
            if (series_is_zero(K, acc)) {
                res.algebraic = true;
                res.relation.clear();
                for (auto& p : rel) res.relation.push_back(poly_primitive(K, p));
                return res;
            }
        }
        (void)empty;
    }
    return res;
}

} // namespace diaglab

#ifndef DIAGLAB_GALOIS_HPP
#define DIAGLAB_GALOIS_HPP

#include "diaglab/ore_more.hpp"

namespace diaglab {

enum class GaloisKind {
    ORTHOGONAL_EVIDENCE,
    SYMPLECTIC_EVIDENCE,
    SELF_DUAL_TRIVIAL, // order <= 1
    NO_DUALITY_FOUND,
    REDUCIBLE,
    UNRESOLVED,
};

std::string galois_kind_name(GaloisKind k);

struct GaloisVerdict {
    GaloisKind kind = GaloisKind::UNRESOLVED;
    std::string witness_kind;       // sym2-rational-solution | ext2-rational-solution |
                                    // wronskian | factorization | none
    RatFunc<QQ> witness;            // rational witness (when applicable)
    OreOp<QQ> closure;              // the Sym^2/Ext^2 the witness solves
    int wronskian_power = 0;        // order-2 convention: smallest N with w^N rational
    std::vector<int> factor_orders; // REDUCIBLE
    std::vector<std::string> factor_verdicts;
    int intertwiner_bound = 0;      // search radius behind none-verdicts
    long rational_root_bound = 0;
    std::string note;
};

struct ClassifyBounds {
    int intertwiner_degree = -1;  // -1: default 4*deg+20, escalated twice
    long rational_root_bound = 200;
    int factor_series_terms = 360;
    bool allow_factor_search = true;
    int max_closure_order = 8;    // skip Sym2/Ext2 when the input order exceeds this
};

// The duality trichotomy: rational solution of Sym^2 (orthogonal) or Ext^2
// (symplectic), order-2 Wronskian convention, reducibility fallback, bounded
// no-duality verdicts. Resource caps surface as UNRESOLVED with a note.
GaloisVerdict classify(const OreOp<QQ>& L, const ClassifyBounds& bounds = {});

// Catalogued decomposition patterns for a verdict: orthogonal words end in
// an order-3 self-adjoint factor, symplectic in an order-4 (with the
// documented order-2 exceptions). none with a note for unknown shapes.
std::optional<DecompositionSpec> decomposition_profile(const OreOp<QQ>& L,
                                                       const GaloisVerdict& verdict,
                                                       int degree_bound = -1);
std::vector<std::vector<int>> decomposition_patterns(GaloisKind kind, int order);

struct AlgebraicityResult {
    bool algebraic = false;
    std::vector<Poly<QQ>> relation; // sum relation[i] * s^i = 0 when algebraic
    int power_bound = 0;
    int degree_bound = 0;
};

// Polynomial-relation probe on the series (extended through L when needed);
// negative outcomes are evidence bounded by (power_bound, degree_bound).
AlgebraicityResult algebraicity_probe(const OreOp<QQ>& L, const Series<QQ>& s, int max_power = 8,
                                      int max_coeff_degree = 30);

} // namespace diaglab

#endif

#ifndef DIAGLAB_GUESS_HPP
#define DIAGLAB_GUESS_HPP

#include <optional>

#include "diaglab/linalg.hpp"
#include "diaglab/ore.hpp"

namespace diaglab {

struct GuessConfig {
    int max_order = 12;
    int max_degree = 120;
    int margin = 20;           // extra terms any candidate must annihilate (>= 10)
    std::vector<u64> primes;   // prescreen/lift primes; default_primes() when empty
    bool survey_mode = false;  // survey lowers the margin to 10, results are evidence-level

    int effective_margin() const {
        int v = survey_mode ? std::min(margin, 10) : margin;
        return std::max(v, 10);
    }
    std::vector<u64> prime_list() const { return primes.empty() ? default_primes() : primes; }
};

struct GuessResult {
    OreOp<QQ> op; // content-normalized, positive leading sign
    int order = 0;
    int degree = 0;
    long terms_used = 0;
    int verified_margin = 0;
    bool evidence_level = false;
};

struct ShapeFit {
    int order = 0;
    int degree = 0;
};

// terms needed to attempt shape (r, d) with margin v
inline long needed_terms(int r, int d, int v) { return (long)(r + 1) * (d + 1) + v + r; }

// Hermite-Pade kernel for shape (r, d) against s_0..s_{T-1}: coefficients
// a_{ij} with sum a_{ij} x^j (D^i s) = O(x^{T-r}). Column index = i*(d+1)+j.
std::vector<std::vector<u64>> hp_kernel_mod_p(const Fp& K, const std::vector<u64>& s, int r, int d);

// Operator from a kernel vector (coefficients mod p), trimmed.
OreOp<Fp> op_from_kernel(const Fp& K, const std::vector<u64>& v, int r, int d);

// First fitting shape in ascending (r+1)(d+1), ties broken by smaller order.
std::optional<ShapeFit> guess_shape_mod_p(const Fp& K, const std::vector<u64>& s,
                                          const GuessConfig& cfg);

// Minimal-order resolution from a long series: ascending order, each tested
// at the most generous degree the terms allow (capped by cfg.max_degree).
struct MinOrder {
    int order = 0;
    int degree = 0;                // trimmed degree of the returned operator
    OreOp<Fp> op;
    int degree_bound_checked = 0;  // orders below `order` excluded up to this degree
};
std::optional<MinOrder> min_order_mod_p(const Fp& K, const std::vector<u64>& s,
                                        const GuessConfig& cfg);

// Fit exactly shape (r, d); returns the reduced kernel basis.
std::vector<OreOp<Fp>> fit_shape_mod_p(const Fp& K, const std::vector<u64>& s, int r, int d);

// CRT-lift per-prime operators of a common shape to Q; verified against the
// rational series when provided (all available terms). Nullopt when
// reconstruction fails or verification does not hold.
std::optional<OreOp<QQ>> lift_operator(const std::vector<std::pair<u64, OreOp<Fp>>>& fits,
                                       const Series<QQ>* verify_against);

// Full rational-path guess: mod-p shape consensus, lift, exact verification.
std::optional<GuessResult> guess_operator(const Series<QQ>& s, const GuessConfig& cfg);

// Reduce a rational series mod p; nullopt when a denominator hits p.
std::optional<std::vector<u64>> series_mod(const Fp& K, const Series<QQ>& s);

} // namespace diaglab

#endif

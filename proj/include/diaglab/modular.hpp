#ifndef DIAGLAB_MODULAR_HPP
#define DIAGLAB_MODULAR_HPP

#include "diaglab/series_build.hpp"

namespace diaglab {

// prefactor * pFq(upper; lower; pullback(x)) with prefactor a product of
// q_i(x)^{e_i}, q_i(0) = 1, and pullback(0) = 0.
struct PullbackRepr {
    std::vector<AlgebraicFactor> prefactor;
    std::vector<mpq_class> upper, lower;
    RatFunc<QQ> pullback;
};

Series<QQ> pullback_series(const PullbackRepr& r, int n);

struct VerifyResult {
    bool pass = false;
    long first_mismatch = -1;
};

VerifyResult verify_pullback(const Series<QQ>& s, const PullbackRepr& r, int n);

// rational template in z composed with a rational substitution z(x)
struct HauptmodulTemplate {
    RatFunc<QQ> tmpl;  // in z
    RatFunc<QQ> subst; // z(x)
};

Series<QQ> hauptmodul_series(const HauptmodulTemplate& t, int n);

// substituting z -> c/z into a's template yields b's template identically
bool involution_check(const RatFunc<QQ>& template_a, const RatFunc<QQ>& template_b,
                      const mpq_class& c);

// bivariate integer relation rel(Y, Z) evaluated on two series
using BivarPoly = std::map<std::pair<int, int>, mpz_class>;
BivarPoly parse_bivar(const std::string& text); // variables Y, Z
mpz_class bivar_checksum(const BivarPoly& rel); // sum of |coefficients|
VerifyResult verify_modular_curve(const BivarPoly& rel, const Series<QQ>& y, const Series<QQ>& z,
                                  int n);

// section-6 families: diagonal from first principles vs the hypergeometric
// closed form; family 3 applies the odd-n half-parameter cancellation.
struct FamilySeries {
    Series<QQ> diagonal;
    Series<QQ> closed_form;
    std::vector<mpq_class> upper, lower;
    mpq_class scale;
    int arg_power = 1; // the pFq argument is scale * x^arg_power
};
FamilySeries family_series(int family_id, int n, int terms);

// --- fixtures ---

enum class FixtureOutcome { PASS, FAIL, ERRATUM };

struct FixtureResult {
    FixtureOutcome outcome = FixtureOutcome::FAIL;
    std::string name;
    std::string detail;
};

// One identity per file: pullback / curve / hauptmodul / involution.
FixtureResult run_fixture_file(const std::string& path, int order_override = -1);
FixtureResult run_fixture_json(const std::string& json_text, int order_override = -1);

} // namespace diaglab

#endif

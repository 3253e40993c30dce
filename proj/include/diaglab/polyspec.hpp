#ifndef DIAGLAB_POLYSPEC_HPP
#define DIAGLAB_POLYSPEC_HPP

#include <map>
#include <string>
#include <vector>

#include "diaglab/errors.hpp"
#include "diaglab/field.hpp"

namespace diaglab {

// Sparse multivariate polynomial with integer coefficients, exponents >= 0.
using MPoly = std::map<std::vector<int>, mpz_class>;

MPoly mpoly_add(const MPoly& a, const MPoly& b);
MPoly mpoly_sub(const MPoly& a, const MPoly& b);
MPoly mpoly_mul(const MPoly& a, const MPoly& b);
MPoly mpoly_neg(const MPoly& a);
MPoly mpoly_const(int nvars, const mpz_class& c);

// A rational function num / (1 - P), the shape every diagonal in the tool
// is taken of. P is sparse with integer coefficients; the numerator defaults
// to 1. The denominator must not vanish at the origin (P(0) != 1).
struct PolynomialSpec {
    int nvars = 0;
    MPoly p;        // the P of 1/(1-P); may contain a constant term != 1
    MPoly num;      // numerator; empty map means the constant 1

    MPoly denominator() const; // 1 - P
    MPoly numerator() const;   // num, or constant 1
    bool num_is_one() const;
    mpz_class den_at_origin() const; // 1 - P(0,...,0)

    // spec with denominator (1-P(this)) * (1-P(other)); variable sets are
    // the same index space (caller pre-embeds disjoint sets).
    PolynomialSpec times(const PolynomialSpec& other) const;

    // variable permutation / scaling (for the invariance tests)
    PolynomialSpec permuted(const std::vector<int>& perm) const;
    PolynomialSpec scaled(const std::vector<mpz_class>& lambda) const;
};

// Build a spec from the monomial list of P (exponent vector, coefficient).
PolynomialSpec make_spec(int nvars, const std::vector<std::pair<std::vector<int>, long>>& p_monomials);

// Text format, bit-exact writer:
//   nvars=4; den=1 - x1 - x2*x3 + x1*x2*x3*x4; num=1
std::string spec_to_text(const PolynomialSpec& s);
PolynomialSpec spec_from_text(const std::string& text);

// General integer polynomial expression parser over named variables
// (used by the spec format, the operator format and fixture files).
// Supports + - * ^ ( ) and big integer literals.
MPoly parse_mpoly_expr(const std::string& text, const std::vector<std::string>& varnames);

std::string mpoly_to_text(const MPoly& m, const std::vector<std::string>& varnames);

} // namespace diaglab

#endif

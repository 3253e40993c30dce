#ifndef DIAGLAB_SURVEY_HPP
#define DIAGLAB_SURVEY_HPP

#include <functional>
#include <optional>

#include "diaglab/coefftable.hpp"
#include "diaglab/galois.hpp"
#include "diaglab/guess.hpp"

namespace diaglab {

// The four denominator families of the exhaustive survey.
enum class Family { V3_01, V3_PM1, V4_01, V6_FACTORED };

std::optional<Family> family_from_name(const std::string& name); // 3var01|3varpm1|4var01|6var-factored
std::string family_name(Family f);

struct SurveyItem {
    PolynomialSpec spec;
    int mask1 = -1; // 3-variable factor masks for the factored family
    int mask2 = -1;
};

// Every admissible coefficient assignment, emitted exactly once, in a fixed
// deterministic order. 3-var {0,1}: 2^7; 3-var {0,±1}: 3^7; 4-var {0,1}: 2^15.
// The factored family runs over unordered pairs of nonzero 3-variable {0,1}
// factors whose diagonals are nonconstant (Table B1 starts at order two;
// degenerate factors would inject an order-one class).
std::vector<SurveyItem> enumerate_family(Family f);

struct SurveyClass {
    long id = 0;
    SurveyItem rep;         // first member in enumeration order
    long members = 0;
    std::vector<u64> key;   // 2k diagonal residues at each of the two key primes
};

struct DedupeResult {
    std::vector<SurveyClass> classes;
    long near_miss_splits = 0; // classes split by the 2k safety recheck
    int k = 0;
    u64 key_primes[2] = {0, 0};
};

DedupeResult dedupe(Family f, int k = 14);

// per-class pipeline outcome
struct OperatorInfo {
    int order = -1;
    int degree = -1;
    bool resolved = false;
    int excluded_below_order = 0;  // orders < this had no fit...
    int excluded_degree_bound = 0; // ...with coefficient degree <= this
    std::string modp_text;         // operator mod the working prime (textual, reproducible)
    u64 prime = 0;
    std::string rational_text;     // primitive operator over Q when lifted
    long terms_used = 0;
};

struct ClassRecord {
    long id = 0;
    std::string rep_text;
    std::vector<std::string> prefix; // first k coefficients, exact decimal
    long members = 0;
    OperatorInfo op;
    std::string verdict;             // galois verdict summary (optional)
    std::string witness;
    long long ops_used = 0;
    std::vector<u64> primes_used;
    std::string status;              // resolved | unresolved | error:<msg>
};

struct PipelineConfig {
    long long budget_ops = 1000000000; // per-case coefficient-op budget
    int jobs = 1;
    int start_n = 60;
    int max_order = 12;
    int max_degree = 150;
    bool classify_small = false;  // run Galois classification on lifted ops
    int lift_max_order = 4;       // lift operators up to this order
    long long extend_terms = 1400;
};

// Run (or resume) the per-class pipeline, appending JSON-line records to
// catalog_path. Returns the records of the full catalog.
std::vector<ClassRecord> run_pipeline(Family f, const PipelineConfig& cfg,
                                      const std::string& catalog_path, bool resume);

std::vector<ClassRecord> load_catalog(const std::string& path);

// order -> count table; the unresolved column is reported, never guessed.
struct Histogram {
    std::map<int, long> resolved;
    long unresolved = 0;
    std::map<std::string, std::map<int, long>> verdict_rows; // verdict -> order -> count
};
Histogram report_histogram(const std::vector<ClassRecord>& catalog);

std::string histogram_table(const Histogram& h, const std::string& table); // "orders" | "verdicts"

} // namespace diaglab

#endif

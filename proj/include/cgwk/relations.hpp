#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cgwk/finset.hpp"
#include "cgwk/presentation.hpp"
#include "cgwk/simplicial.hpp"

namespace cgwk {

struct SuiteResult {
    SuiteResult(std::string n = {}) : name(std::move(n)) {}
    std::string name;
    long cases = 0, passed = 0, skipped = 0;
    json first_failure;  // null when every case passed
    json extra = json::object();
    bool ok() const { return passed + skipped == cases; }
    json to_json() const;
};

struct SuiteConfig {
    int max_size = 3;
    bool exhaustive = true;  // otherwise `samples` random cases
    long samples = 500;
    std::uint64_t seed = 0;
    bool parallel = true;
};

// ---- generators of test data over range objects ----

FSquare exact_square(const FinSet& c, int a, int b, const Table& f, const Table& g);
std::vector<FDes> all_des(int n);
std::vector<FSquare> all_exact_squares(const FinSet& c, int n);
FDes random_des(std::mt19937_64& rng, int n);
Table random_injection(std::mt19937_64& rng, int a, int b);
Table random_permutation(std::mt19937_64& rng, int n);

// ---- suites ----

// the three automorphism identities as membership in the baseline presentation
SuiteResult corollary_identities(const FinSet& c, int max_size, bool parallel = true);
// sign(e0) + sign(e1) = sign(e2) + sign(l2) over every admissible triple
SuiteResult a2_sign_sweep(const FinSet& c, int max_size, bool parallel = true);
// e0 + e1 - e2 - l2 as a baseline membership; reported, not required
SuiteResult a2_membership(const FinSet& c, int max_size, bool parallel = true);
SuiteResult key_example_suite(const FinSet& c);
SuiteResult inverse_law(const FinSet& c, int max_size, bool parallel = true);

SuiteResult quotient_filtration_suite(const FinSet& c, const SuiteConfig& cfg);
SuiteResult add_object_suite(const FinSet& c, const SuiteConfig& cfg);
SuiteResult direct_sum_squares_suite(const FinSet& c, const SuiteConfig& cfg);
SuiteResult build_3x3_suite(const FinSet& c, const SuiteConfig& cfg);
SuiteResult permutation_homotopy_suite(const FinSet& c, const SuiteConfig& cfg);
SuiteResult pushout_simplices_suite(const FinSet& c, const SuiteConfig& cfg);
SuiteResult sherman_suite(const FinSet& c, const SuiteConfig& cfg);
SuiteResult simplicial_identities_suite(const FinSet& c, const SuiteConfig& cfg);

// A1 over direct-sum diagrams: f + g - (f+g) vanishes in the Nenashev presentation
SuiteResult a1_law(const FinSet& c, int max_size, long samples, std::uint64_t seed, bool parallel = true);

std::vector<SuiteResult> relcheck_all(const FinSet& c, const SuiteConfig& cfg);

}  // namespace cgwk

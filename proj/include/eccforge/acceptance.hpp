#pragma once

#include "eccforge/cocktail.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace eccforge::acceptance {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct Options {
    std::uint64_t seed = kDefaultSeed;
    /// Smaller corpora; used by the mutation canaries. Not an acceptance run.
    bool quick = false;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

/// Runs all nine criteria and prints one PASS/FAIL line each to `out`.
std::vector<CriterionResult> run_all(const Options& options, std::ostream& out);

[[nodiscard]] bool all_passed(const std::vector<CriterionResult>& results);

/// Random admissible seed of `delta` twin pairs for H_ell: random labels
/// with complementary partners, then one pair per chosen label bit.
[[nodiscard]] std::vector<cocktail::TwinPair> random_admissible_seed(const cocktail::CocktailGraph& h,
                                                                     int delta, std::mt19937_64& rng);

}  // namespace eccforge::acceptance

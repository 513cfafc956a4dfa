#pragma once

#include <compare>
#include <string>
#include <vector>

namespace specklab {

/// A marginal scenario (X, O, M): measurements 1..n sharing the outcome set
/// 0..outcomes-1, and the maximal contexts of jointly measurable subsets.
/// Contexts are kept sorted internally and listed lexicographically.
struct MarginalScenario {
    int measurements = 0;
    int outcomes = 2;
    std::vector<std::vector<int>> contexts;

    auto operator<=>(const MarginalScenario&) const = default;
};

struct ScenarioKind {
    enum class Tag { symmetric, explicit_contexts };
    Tag tag = Tag::explicit_contexts;
    int n = 0;
    int context_size = 0;
};

/// All C(n, k) subsets of size k as contexts.
MarginalScenario make_symmetric_scenario(int n, int context_size, int outcomes);

/// Binary (n, n-1) symmetric scenario.
MarginalScenario make_n_specker(int n);

/// Sorts every context and the context list. Does not validate.
MarginalScenario canonicalize(MarginalScenario s);

ScenarioKind kind_of(const MarginalScenario& s);

struct ScenarioIssue {
    enum class Kind { empty_context, out_of_range, duplicate_measurement, not_maximal, uncovered, bad_arity, duplicate_context };
    Kind kind;
    std::string message;
};

std::vector<ScenarioIssue> validate_scenario(const MarginalScenario& s);

/// Throws ConstraintViolation listing the first issue when the scenario is invalid.
void require_valid(const MarginalScenario& s);

/// Index of the lexicographically smallest context containing every measurement
/// of `subset` (sorted), or -1.
int smallest_context_containing(const MarginalScenario& s, const std::vector<int>& subset);

/// Same, but the lexicographically largest such context.
int largest_context_containing(const MarginalScenario& s, const std::vector<int>& subset);

bool is_subset(const std::vector<int>& small, const std::vector<int>& big);

}  // namespace specklab

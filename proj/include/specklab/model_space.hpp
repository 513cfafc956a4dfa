#pragma once

#include "specklab/constraint_system.hpp"
#include "specklab/events.hpp"
#include "specklab/functional.hpp"

#include <optional>
#include <string>
#include <vector>

namespace specklab {

/// p(v) for every event v of the scenario, in canonical event order.
struct ProbabilisticModel {
    MarginalScenario scenario;
    RationalVector values;

    bool operator==(const ProbabilisticModel&) const = default;
    std::vector<double> as_doubles() const;
};

/// An outcome for every measurement; assignment[m - 1] is the outcome of m.
struct DeterministicModel {
    std::vector<int> assignment;
    auto operator<=>(const DeterministicModel&) const = default;
};

/// Nonnegativity per event, normalization per context and no-disturbance
/// equalities for every overlapping context pair and overlap outcome tuple.
ConstraintSystem build_model_constraints(const MarginalScenario& s);

/// Model with p(a|x) = 1 iff the assignment restricted to x equals a.
ProbabilisticModel deterministic_model(const MarginalScenario& s, const DeterministicModel& d);

/// All k^n assignments in lexicographic order. Throws SizeLimitError when
/// k^n exceeds `limit`.
std::vector<DeterministicModel> enumerate_assignments(const MarginalScenario& s,
                                                      unsigned long long limit = 1ULL << 20);
std::vector<ProbabilisticModel> enumerate_deterministic_models(const MarginalScenario& s,
                                                               unsigned long long limit = 1ULL << 20);

/// Labels of the violated constraint rows (exact, zero tolerance); empty iff valid.
std::vector<std::string> check_model(const ProbabilisticModel& p);
/// Throws ConstraintViolation naming the first violated row.
void require_valid_model(const ProbabilisticModel& p);

struct MembershipCertificate {
    bool member = false;
    /// Member: p = sum_i weights[i] * deterministic_model(assignments[i]),
    /// only positive weights listed.
    std::vector<DeterministicModel> assignments;
    RationalVector weights;
    /// Non-member: g >= 0 on every deterministic model and g(p) < 0.
    std::optional<LinearFunctional> separating;
};

/// Exact LP decision of p in conv(deterministic models). Validates p first.
MembershipCertificate classical_membership(const ProbabilisticModel& p,
                                           unsigned long long limit = 1ULL << 20);

/// Throws ConstraintViolation when f and p live on different scenarios.
Rational evaluate_functional(const LinearFunctional& f, const ProbabilisticModel& p);
Rational evaluate_functional(const LinearFunctional& f, const RationalVector& values);

}  // namespace specklab

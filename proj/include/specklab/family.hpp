#pragma once

#include "specklab/events.hpp"
#include "specklab/functional.hpp"
#include "specklab/model_space.hpp"

#include <compare>
#include <string>
#include <vector>

namespace specklab {

/// I_n^{k,S,s,o}: k = |S| odd, s the outcomes on S, o the outcomes on the
/// remaining measurements (both listed in increasing measurement order).
struct InequalitySpec {
    int n = 0;
    std::vector<int> subset;
    std::vector<int> s;
    std::vector<int> o;

    int k() const { return static_cast<int>(subset.size()); }
    std::vector<int> complement() const;
    auto operator<=>(const InequalitySpec&) const = default;
};

/// Throws ParameterError when the spec is malformed or k is even.
void require_valid_spec(const InequalitySpec& spec);

/// sum_{J subset S, |J| <= k-1} (-1)^|J| p(s_J, o) over the binary n-Specker
/// scenario, with p of the empty assignment equal to 1. Each marginal is
/// expanded in the smallest context containing its domain. Declared >= 0.
LinearFunctional expand_inequality(const InequalitySpec& spec);

/// Every spec with odd k, one representative per pair {s, s-bar} (the one
/// with s[0] = 0). Sorted. Throws SizeLimitError for n > max_n.
std::vector<InequalitySpec> generate_family(int n, int max_n = 12);

/// f : O^X -> Q, indexed by the assignment read as a binary number with
/// measurement 1 as the most significant bit.
struct TableFunction {
    int n = 0;
    RationalVector values;

    static TableFunction point_mass(const std::vector<int>& assignment);
    /// Sum of f over assignments extending g.
    Rational marginal(const GeneralizedEvent& g) const;
    ProbabilisticModel to_model(const MarginalScenario& s) const;
};

/// Pairwise exclusive generalized events D with I_m^{m,X,s,empty} = 1 - sum_D p.
struct ExclusiveSet {
    std::vector<int> target;  // s on measurements 1..m
    std::vector<GeneralizedEvent> events;
};

/// The recursive construction for odd m >= 3, descending by two. Throws
/// ParameterError for even or small m. The result is checked with
/// check_exclusive_set before it is returned.
ExclusiveSet build_exclusive_set(int m, const std::vector<int>& s);

/// Violations of pairwise exclusivity, the size bound |domain| <= m-1 and the
/// requirement that each event differs from s and from s-bar somewhere.
std::vector<std::string> check_exclusive_set(const ExclusiveSet& d);

struct IdentityReport {
    bool holds = false;
    /// Both sides in reduced coordinates (constant last).
    RationalVector lhs;
    RationalVector rhs;
    std::string mismatch;  // first differing coordinate, empty when the identity holds
};

/// Exact check that expand_inequality(spec) and 1 - sum_{alpha in events}
/// p(alpha) agree on every valid model.
IdentityReport verify_ce_identity(const InequalitySpec& spec, const std::vector<GeneralizedEvent>& events);
IdentityReport verify_ce_identity(const InequalitySpec& spec, const ExclusiveSet& d);

/// Exclusive set certifying spec: for k < n the largest measurement outside S
/// is peeled off (D = {a-bar_i} u D' x {a_i}); at k = n the recursive
/// construction is used (k = 1 bottoms out at the empty set).
std::vector<GeneralizedEvent> certificate_events(const InequalitySpec& spec);

struct FamilyCertificate {
    InequalitySpec spec;
    std::vector<GeneralizedEvent> exclusive_set;
    std::vector<std::size_t> refined_events;  // union of refinements, sorted
    bool identity_holds = false;
    bool clique = false;
    bool passed() const { return identity_holds && clique; }
};

struct FamilyReport {
    int n = 0;
    std::vector<FamilyCertificate> certificates;
    std::size_t passed() const;
    bool all_passed() const { return passed() == certificates.size(); }
};

FamilyReport verify_family_is_ce(int n, int max_n = 8);

}  // namespace specklab

#pragma once

#include "specklab/lp.hpp"
#include "specklab/rational.hpp"
#include "specklab/scenario.hpp"

#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace specklab {

/// f(p) <= value (less_equal) or f(p) >= value (greater_equal).
struct DeclaredBound {
    lp::Relation relation = lp::Relation::less_equal;
    Rational value = 0;
    auto operator<=>(const DeclaredBound&) const = default;
};

/// sum_v coefficients[v] p(v) + offset, with coefficients indexed by the
/// canonical event order of the scenario.
struct LinearFunctional {
    MarginalScenario scenario;
    RationalVector coefficients;
    Rational offset = 0;
    std::optional<DeclaredBound> bound;

    bool operator==(const LinearFunctional&) const = default;
};

LinearFunctional zero_functional(const MarginalScenario& s);

/// Sum of p over the given event coordinates.
LinearFunctional event_sum_functional(const MarginalScenario& s, const std::vector<std::size_t>& events);

/// Sum of p over all events of one context (identically 1 on valid models).
LinearFunctional normalization_functional(const MarginalScenario& s, std::size_t context);

/// constant + sum_i singles[i] <X_i> + sum_{i<j} pairs[{i,j}] <X_i X_j> for
/// binary measurements with values (-1)^a.
struct CorrelatorExpression {
    Rational constant = 0;
    std::map<int, Rational> singles;
    std::map<std::pair<int, int>, Rational> pairs;  // keys with first < second
    bool operator==(const CorrelatorExpression&) const = default;
};

enum class SingleContextChoice { smallest, largest };

/// Rewrites correlators as event coefficients. Pairs expand in the smallest
/// context containing both measurements, singles in the smallest (or largest)
/// context containing the measurement. Throws ParameterError for non-binary
/// scenarios and for pairs or singles outside every context.
LinearFunctional correlators_to_functional(const CorrelatorExpression& e, const MarginalScenario& s,
                                           SingleContextChoice choice = SingleContextChoice::smallest);

/// The pentagonal inequality on four pairwise compatible binary measurements:
/// -<X1X2> - <X1X3> + <X1X4> + <X1> - <X2X3> + <X2X4> + <X2> + <X3X4> + <X3> - <X4> <= 2.
CorrelatorExpression pentagonal_expression();
LinearFunctional pentagonal_functional(SingleContextChoice choice = SingleContextChoice::smallest);

/// Coefficients num/den with num uniform in [-9, 9], den uniform in [1, 4].
LinearFunctional random_functional(const MarginalScenario& s, std::mt19937_64& rng);

}  // namespace specklab

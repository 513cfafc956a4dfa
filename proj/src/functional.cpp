#include "specklab/functional.hpp"

#include "specklab/errors.hpp"
#include "specklab/events.hpp"

namespace specklab {

namespace {

std::size_t event_count(const MarginalScenario& s)
{
    std::size_t total = 0;
    for (const auto& c : s.contexts) {
        std::size_t block = 1;
        for (std::size_t i = 0; i < c.size(); ++i)
            block *= static_cast<std::size_t>(s.outcomes);
        total += block;
    }
    return total;
}

// Adds weight * (-1)^(sum of outcomes) to every event of `context` refining
// each outcome pattern on `measurements`.
void add_correlator(RationalVector& coeffs, const EventSpace& space, std::size_t context,
                    const std::vector<int>& measurements, const Rational& weight)
{
    const std::size_t patterns = std::size_t{1} << measurements.size();
    for (std::size_t bits = 0; bits < patterns; ++bits) {
        GeneralizedEvent g{measurements, std::vector<int>(measurements.size())};
        int parity = 0;
        for (std::size_t i = 0; i < measurements.size(); ++i) {
            g.outcomes[i] = static_cast<int>((bits >> (measurements.size() - 1 - i)) & 1U);
            parity ^= g.outcomes[i];
        }
        for (auto v : space.refinement(context, g))
            coeffs[v] += parity ? Rational(-weight) : weight;
    }
}

}  // namespace

LinearFunctional zero_functional(const MarginalScenario& s)
{
    return LinearFunctional{s, RationalVector(event_count(s)), 0, std::nullopt};
}

LinearFunctional event_sum_functional(const MarginalScenario& s, const std::vector<std::size_t>& events)
{
    auto f = zero_functional(s);
    for (auto v : events) {
        if (v >= f.coefficients.size())
            throw ParameterError("event coordinate " + std::to_string(v) + " out of range");
        f.coefficients[v] += 1;
    }
    return f;
}

LinearFunctional normalization_functional(const MarginalScenario& s, std::size_t context)
{
    if (context >= s.contexts.size())
        throw ParameterError("context index " + std::to_string(context) + " out of range");
    EventSpace space(s);
    auto f = zero_functional(s);
    std::size_t block = space.size();
    if (context + 1 < s.contexts.size())
        block = space.context_offset(context + 1);
    for (std::size_t v = space.context_offset(context); v < block; ++v)
        f.coefficients[v] = 1;
    return f;
}

LinearFunctional correlators_to_functional(const CorrelatorExpression& e, const MarginalScenario& s,
                                           SingleContextChoice choice)
{
    if (s.outcomes != 2)
        throw ParameterError("correlator expressions need binary outcomes");
    EventSpace space(s);
    auto f = zero_functional(s);
    f.offset = e.constant;
    for (const auto& [pair, w] : e.pairs) {
        auto [i, j] = pair;
        if (i >= j)
            throw ParameterError("correlator pair " + std::to_string(i) + "," + std::to_string(j)
                                 + " must be listed with i < j");
        int ctx = smallest_context_containing(s, {i, j});
        if (ctx < 0)
            throw ParameterError("measurements " + std::to_string(i) + " and " + std::to_string(j)
                                 + " share no context");
        add_correlator(f.coefficients, space, static_cast<std::size_t>(ctx), {i, j}, w);
    }
    for (const auto& [i, w] : e.singles) {
        int ctx = choice == SingleContextChoice::smallest ? smallest_context_containing(s, {i})
                                                          : largest_context_containing(s, {i});
        if (ctx < 0)
            throw ParameterError("measurement " + std::to_string(i) + " is in no context");
        add_correlator(f.coefficients, space, static_cast<std::size_t>(ctx), {i}, w);
    }
    return f;
}

CorrelatorExpression pentagonal_expression()
{
    CorrelatorExpression e;
    e.pairs = {{{1, 2}, -1}, {{1, 3}, -1}, {{1, 4}, 1}, {{2, 3}, -1}, {{2, 4}, 1}, {{3, 4}, 1}};
    e.singles = {{1, 1}, {2, 1}, {3, 1}, {4, -1}};
    return e;
}

LinearFunctional pentagonal_functional(SingleContextChoice choice)
{
    auto f = correlators_to_functional(pentagonal_expression(), make_symmetric_scenario(4, 2, 2), choice);
    f.bound = DeclaredBound{lp::Relation::less_equal, 2};
    return f;
}

LinearFunctional random_functional(const MarginalScenario& s, std::mt19937_64& rng)
{
    // Plain modulo keeps the sequence identical across standard libraries,
    // unlike std::uniform_int_distribution.
    auto f = zero_functional(s);
    for (auto& c : f.coefficients) {
        long num = static_cast<long>(rng() % 19) - 9;
        long den = static_cast<long>(rng() % 4) + 1;
        c = Rational(num, den);
        c.canonicalize();
    }
    return f;
}

}  // namespace specklab

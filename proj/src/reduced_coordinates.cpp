#include "specklab/reduced_coordinates.hpp"

#include "specklab/errors.hpp"

#include <algorithm>
#include <set>

namespace specklab {

ReducedCoordinates::ReducedCoordinates(MarginalScenario scenario) : space_(std::move(scenario))
{
    const auto& s = space_.scenario();
    const int k = s.outcomes;

    std::set<std::vector<int>> subsets;
    for (const auto& ctx : s.contexts) {
        const std::size_t m = ctx.size();
        for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
            std::vector<int> t;
            for (std::size_t i = 0; i < m; ++i)
                if (mask >> i & 1UL)
                    t.push_back(ctx[i]);
            subsets.insert(std::move(t));
        }
    }
    std::vector<std::vector<int>> ordered(subsets.begin(), subsets.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    for (const auto& t : ordered) {
        std::vector<int> c(t.size(), 0);
        for (;;) {
            index_[GeneralizedEvent{t, c}] = labels_.size();
            labels_.push_back(GeneralizedEvent{t, c});
            int pos = static_cast<int>(c.size()) - 1;
            while (pos >= 0 && ++c[pos] == k - 1) {
                c[pos] = 0;
                --pos;
            }
            if (pos < 0)
                break;
        }
    }

    // p(a|x) = sum_{U subset L} (-1)^|U| sum_{b in {0..k-2}^U} q(Z u U; a_Z, b_U)
    // where L holds the measurements showing the last outcome k-1 and Z the rest.
    expansion_.resize(space_.size());
    for (std::size_t v = 0; v < space_.size(); ++v) {
        const auto& e = space_.events()[v];
        std::vector<std::size_t> last;
        for (std::size_t i = 0; i < e.context.size(); ++i)
            if (e.outcomes[i] == k - 1)
                last.push_back(i);
        std::map<std::size_t, Rational> acc;
        Rational constant = 0;
        for (unsigned long umask = 0; umask < (1UL << last.size()); ++umask) {
            std::vector<bool> in_u(e.context.size(), false);
            int sign = 1;
            for (std::size_t i = 0; i < last.size(); ++i)
                if (umask >> i & 1UL) {
                    in_u[last[i]] = true;
                    sign = -sign;
                }
            std::vector<int> t;
            std::vector<std::size_t> slots;  // positions within t belonging to U
            std::vector<int> base;
            for (std::size_t i = 0; i < e.context.size(); ++i) {
                if (e.outcomes[i] != k - 1 || in_u[i]) {
                    if (in_u[i])
                        slots.push_back(t.size());
                    t.push_back(e.context[i]);
                    base.push_back(in_u[i] ? 0 : e.outcomes[i]);
                }
            }
            if (t.empty()) {
                constant += sign;
                continue;
            }
            std::vector<int> c = base;
            for (;;) {
                acc[index_.at(GeneralizedEvent{t, c})] += sign;
                int pos = static_cast<int>(slots.size()) - 1;
                while (pos >= 0 && ++c[slots[pos]] == k - 1) {
                    c[slots[pos]] = 0;
                    --pos;
                }
                if (pos < 0)
                    break;
            }
        }
        expansion_[v].constant = constant;
        for (auto& [j, w] : acc)
            if (w != 0)
                expansion_[v].terms.emplace_back(j, w);
    }
}

RationalVector ReducedCoordinates::point(const RationalVector& event_values) const
{
    if (event_values.size() != space_.size())
        throw ParameterError("point: expected " + std::to_string(space_.size()) + " event values");
    RationalVector q(labels_.size());
    for (std::size_t j = 0; j < labels_.size(); ++j)
        for (auto v : space_.refinement(labels_[j]))
            q[j] += event_values[v];
    return q;
}

RationalVector ReducedCoordinates::reduce(const LinearFunctional& f) const
{
    if (!(f.scenario == space_.scenario()))
        throw ConstraintViolation("functional is defined on a different scenario");
    if (f.coefficients.size() != space_.size())
        throw ConstraintViolation("functional has the wrong number of coefficients");
    RationalVector r(labels_.size() + 1);
    r.back() = f.offset;
    for (std::size_t v = 0; v < space_.size(); ++v) {
        const auto& w = f.coefficients[v];
        if (w == 0)
            continue;
        r.back() += w * expansion_[v].constant;
        for (const auto& [j, c] : expansion_[v].terms)
            r[j] += w * c;
    }
    return r;
}

LinearFunctional ReducedCoordinates::to_functional(const RationalVector& reduced) const
{
    if (reduced.size() != labels_.size() + 1)
        throw ParameterError("to_functional: expected " + std::to_string(labels_.size() + 1) + " entries");
    LinearFunctional f = zero_functional(space_.scenario());
    f.offset = reduced.back();
    for (std::size_t j = 0; j < labels_.size(); ++j)
        if (reduced[j] != 0)
            for (auto v : space_.refinement(labels_[j]))
                f.coefficients[v] += reduced[j];
    return f;
}

std::vector<Integer> ReducedCoordinates::canonical_form(const LinearFunctional& f) const
{
    return primitive_integer_vector(reduce(f));
}

}  // namespace specklab

#include "specklab/scenario.hpp"

#include "specklab/errors.hpp"

#include <algorithm>
#include <set>

namespace specklab {

namespace {

void combinations(int n, int k, int start, std::vector<int>& current,
                  std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(current.size()) == k) {
        out.push_back(current);
        return;
    }
    for (int i = start; i <= n; ++i) {
        current.push_back(i);
        combinations(n, k, i + 1, current, out);
        current.pop_back();
    }
}

}  // namespace

bool is_subset(const std::vector<int>& small, const std::vector<int>& big)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

MarginalScenario make_symmetric_scenario(int n, int context_size, int outcomes)
{
    if (context_size < 1 || context_size > n)
        throw ParameterError("symmetric scenario requires 1 <= k_ctx <= n, got n="
                             + std::to_string(n) + " k_ctx=" + std::to_string(context_size));
    if (outcomes < 2)
        throw ParameterError("outcome arity must be at least 2, got " + std::to_string(outcomes));
    MarginalScenario s;
    s.measurements = n;
    s.outcomes = outcomes;
    std::vector<int> current;
    combinations(n, context_size, 1, current, s.contexts);
    return s;
}

MarginalScenario make_n_specker(int n)
{
    if (n < 2)
        throw ParameterError("n-Specker scenario requires n >= 2, got " + std::to_string(n));
    return make_symmetric_scenario(n, n - 1, 2);
}

MarginalScenario canonicalize(MarginalScenario s)
{
    for (auto& c : s.contexts)
        std::sort(c.begin(), c.end());
    std::sort(s.contexts.begin(), s.contexts.end());
    return s;
}

ScenarioKind kind_of(const MarginalScenario& s)
{
    ScenarioKind kind;
    if (s.contexts.empty())
        return kind;
    const auto size = s.contexts.front().size();
    if (size == 0 || static_cast<int>(size) > s.measurements)
        return kind;
    for (const auto& c : s.contexts)
        if (c.size() != size)
            return kind;
    auto sym = make_symmetric_scenario(s.measurements, static_cast<int>(size), std::max(2, s.outcomes));
    if (canonicalize(s).contexts == sym.contexts) {
        kind.tag = ScenarioKind::Tag::symmetric;
        kind.n = s.measurements;
        kind.context_size = static_cast<int>(size);
    }
    return kind;
}

std::vector<ScenarioIssue> validate_scenario(const MarginalScenario& s)
{
    using K = ScenarioIssue::Kind;
    std::vector<ScenarioIssue> issues;
    auto ctx_name = [](const std::vector<int>& c) {
        std::string out = "{";
        for (std::size_t i = 0; i < c.size(); ++i)
            out += (i ? "," : "") + std::to_string(c[i]);
        return out + "}";
    };

    if (s.outcomes < 2)
        issues.push_back({K::bad_arity, "outcome arity " + std::to_string(s.outcomes) + " < 2"});

    std::vector<std::vector<int>> sorted;
    for (const auto& c : s.contexts) {
        if (c.empty()) {
            issues.push_back({K::empty_context, "empty context"});
            continue;
        }
        auto cs = c;
        std::sort(cs.begin(), cs.end());
        if (std::adjacent_find(cs.begin(), cs.end()) != cs.end())
            issues.push_back({K::duplicate_measurement, "context " + ctx_name(c) + " repeats a measurement"});
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
        for (int m : cs)
            if (m < 1 || m > s.measurements)
                issues.push_back({K::out_of_range, "context " + ctx_name(c) + " references measurement "
                                                       + std::to_string(m) + " outside 1.."
                                                       + std::to_string(s.measurements)});
        sorted.push_back(std::move(cs));
    }

    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = 0; j < sorted.size(); ++j) {
            if (i == j)
                continue;
            if (sorted[i] == sorted[j]) {
                if (i < j)
                    issues.push_back({K::duplicate_context, "context " + ctx_name(sorted[i]) + " listed twice"});
            } else if (is_subset(sorted[i], sorted[j])) {
                issues.push_back({K::not_maximal, "context " + ctx_name(sorted[i]) + " is contained in "
                                                      + ctx_name(sorted[j])});
            }
        }

    std::set<int> covered;
    for (const auto& c : sorted)
        covered.insert(c.begin(), c.end());
    for (int m = 1; m <= s.measurements; ++m)
        if (!covered.count(m))
            issues.push_back({K::uncovered, "measurement " + std::to_string(m) + " appears in no context"});
    return issues;
}

void require_valid(const MarginalScenario& s)
{
    auto issues = validate_scenario(s);
    if (!issues.empty())
        throw ConstraintViolation("invalid scenario: " + issues.front().message);
}

int smallest_context_containing(const MarginalScenario& s, const std::vector<int>& subset)
{
    for (std::size_t i = 0; i < s.contexts.size(); ++i)
        if (is_subset(subset, s.contexts[i]))
            return static_cast<int>(i);
    return -1;
}

int largest_context_containing(const MarginalScenario& s, const std::vector<int>& subset)
{
    for (std::size_t i = s.contexts.size(); i-- > 0;)
        if (is_subset(subset, s.contexts[i]))
            return static_cast<int>(i);
    return -1;
}

}  // namespace specklab

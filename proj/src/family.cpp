#include "specklab/family.hpp"

#include "specklab/errors.hpp"
#include "specklab/parallel.hpp"
#include "specklab/reduced_coordinates.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace specklab {

namespace {

GeneralizedEvent make_event(std::vector<std::pair<int, int>> entries)
{
    std::sort(entries.begin(), entries.end());
    GeneralizedEvent g;
    for (auto [m, a] : entries) {
        g.measurements.push_back(m);
        g.outcomes.push_back(a);
    }
    return g;
}

GeneralizedEvent append(const GeneralizedEvent& g, int m, int a)
{
    std::vector<std::pair<int, int>> entries;
    for (std::size_t i = 0; i < g.measurements.size(); ++i)
        entries.emplace_back(g.measurements[i], g.outcomes[i]);
    entries.emplace_back(m, a);
    return make_event(std::move(entries));
}

// D over measurement labels x[0..m-1] for the outcomes s (s.size() == m, m odd >= 3).
std::vector<GeneralizedEvent> exclusive_on(const std::vector<int>& x, const std::vector<int>& s)
{
    auto bar = [](int a) { return 1 - a; };
    if (x.size() == 3)
        return {make_event({{x[0], s[0]}, {x[1], bar(s[1])}}),
                make_event({{x[1], s[1]}, {x[2], bar(s[2])}}),
                make_event({{x[0], bar(s[0])}, {x[2], s[2]}})};

    std::vector<int> rest_x(x.begin() + 2, x.end());
    std::vector<int> rest_s(s.begin() + 2, s.end());
    std::vector<GeneralizedEvent> d;
    d.push_back(make_event({{x[0], bar(s[0])}, {x[1], s[1]}}));
    std::vector<std::pair<int, int>> tail{{x[1], bar(s[1])}};
    for (std::size_t i = 0; i < rest_x.size(); ++i)
        tail.emplace_back(rest_x[i], rest_s[i]);
    d.push_back(make_event(tail));
    tail = {{x[0], s[0]}};
    for (std::size_t i = 0; i < rest_x.size(); ++i)
        tail.emplace_back(rest_x[i], bar(rest_s[i]));
    d.push_back(make_event(tail));

    auto inner = exclusive_on(rest_x, rest_s);
    const std::pair<int, int> prefixes[] = {{s[0], s[1]}, {s[0], bar(s[1])}, {bar(s[0]), bar(s[1])}};
    for (auto [a1, a2] : prefixes)
        for (const auto& alpha : inner) {
            std::vector<std::pair<int, int>> entries{{x[0], a1}, {x[1], a2}};
            for (std::size_t i = 0; i < alpha.measurements.size(); ++i)
                entries.emplace_back(alpha.measurements[i], alpha.outcomes[i]);
            d.push_back(make_event(std::move(entries)));
        }
    return d;
}

LinearFunctional one_minus_sum(const EventSpace& space, const std::vector<GeneralizedEvent>& events)
{
    auto f = zero_functional(space.scenario());
    f.offset = 1;
    for (const auto& g : events) {
        if (g.measurements.empty())
            throw ParameterError("exclusive set contains an event with empty domain");
        for (auto v : space.refinement(g))
            f.coefficients[v] -= 1;
    }
    return f;
}

IdentityReport compare(const ReducedCoordinates& rc, const LinearFunctional& lhs, const LinearFunctional& rhs)
{
    IdentityReport r;
    r.lhs = rc.reduce(lhs);
    r.rhs = rc.reduce(rhs);
    r.holds = r.lhs == r.rhs;
    if (!r.holds)
        for (std::size_t j = 0; j < r.lhs.size(); ++j)
            if (r.lhs[j] != r.rhs[j]) {
                std::string label = "constant";
                if (j < rc.dimension()) {
                    const auto& g = rc.labels()[j];
                    label = "q(";
                    for (std::size_t i = 0; i < g.measurements.size(); ++i)
                        label += (i ? "," : "") + std::to_string(g.measurements[i]) + "=" + std::to_string(g.outcomes[i]);
                    label += ")";
                }
                r.mismatch = label + ": " + to_string(r.lhs[j]) + " vs " + to_string(r.rhs[j]);
                break;
            }
    return r;
}

std::vector<GeneralizedEvent> certificate_on(std::vector<int> measurements, const InequalitySpec& spec,
                                             const std::map<int, int>& o)
{
    if (measurements == spec.subset) {
        if (spec.k() == 1)
            return {};
        auto d = exclusive_on(spec.subset, spec.s);
        return d;
    }
    int i = 0;
    for (int m : measurements)
        if (!std::binary_search(spec.subset.begin(), spec.subset.end(), m))
            i = std::max(i, m);
    const int a = o.at(i);
    measurements.erase(std::find(measurements.begin(), measurements.end(), i));
    auto inner = certificate_on(std::move(measurements), spec, o);
    std::vector<GeneralizedEvent> d{GeneralizedEvent{{i}, {1 - a}}};
    for (const auto& alpha : inner)
        d.push_back(append(alpha, i, a));
    return d;
}

}  // namespace

std::vector<int> InequalitySpec::complement() const
{
    std::vector<int> out;
    for (int m = 1; m <= n; ++m)
        if (!std::binary_search(subset.begin(), subset.end(), m))
            out.push_back(m);
    return out;
}

void require_valid_spec(const InequalitySpec& spec)
{
    if (spec.n < 2)
        throw ParameterError("inequality spec needs n >= 2");
    if (spec.k() < 1 || spec.k() > spec.n || spec.k() % 2 == 0)
        throw ParameterError("inequality spec needs odd k between 1 and n, got k = " + std::to_string(spec.k()));
    if (!std::is_sorted(spec.subset.begin(), spec.subset.end())
        || std::adjacent_find(spec.subset.begin(), spec.subset.end()) != spec.subset.end()
        || spec.subset.front() < 1 || spec.subset.back() > spec.n)
        throw ParameterError("inequality spec subset must be sorted, distinct and within 1..n");
    if (spec.s.size() != spec.subset.size() || spec.o.size() != static_cast<std::size_t>(spec.n - spec.k()))
        throw ParameterError("inequality spec outcome lists do not match the subset sizes");
    for (int a : spec.s)
        if (a != 0 && a != 1)
            throw ParameterError("inequality spec outcomes must be binary");
    for (int a : spec.o)
        if (a != 0 && a != 1)
            throw ParameterError("inequality spec outcomes must be binary");
}

LinearFunctional expand_inequality(const InequalitySpec& spec)
{
    require_valid_spec(spec);
    EventSpace space(make_n_specker(spec.n));
    auto f = zero_functional(space.scenario());
    f.bound = DeclaredBound{lp::Relation::greater_equal, 0};
    const auto rest = spec.complement();
    const int k = spec.k();
    for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
        const int size = std::popcount(mask);
        if (size > k - 1)
            continue;
        std::vector<std::pair<int, int>> entries;
        for (int i = 0; i < k; ++i)
            if (mask >> i & 1UL)
                entries.emplace_back(spec.subset[i], spec.s[i]);
        for (std::size_t i = 0; i < rest.size(); ++i)
            entries.emplace_back(rest[i], spec.o[i]);
        const int sign = size % 2 ? -1 : 1;
        if (entries.empty()) {
            f.offset += sign;
            continue;
        }
        for (auto v : space.refinement(make_event(std::move(entries))))
            f.coefficients[v] += sign;
    }
    return f;
}

std::vector<InequalitySpec> generate_family(int n, int max_n)
{
    if (n < 2)
        throw ParameterError("family needs n >= 2");
    if (n > max_n)
        throw SizeLimitError("family size guard exceeded for n = " + std::to_string(n),
                             static_cast<unsigned long long>(max_n));
    std::vector<InequalitySpec> out;
    for (unsigned long smask = 1; smask < (1UL << n); ++smask) {
        const int k = std::popcount(smask);
        if (k % 2 == 0)
            continue;
        InequalitySpec base{n, {}, {}, {}};
        for (int m = 1; m <= n; ++m)
            if (smask >> (m - 1) & 1UL)
                base.subset.push_back(m);
        for (unsigned long sbits = 0; sbits < (1UL << (k - 1)); ++sbits)
            for (unsigned long obits = 0; obits < (1UL << (n - k)); ++obits) {
                auto spec = base;
                spec.s.push_back(0);
                for (int i = k - 2; i >= 0; --i)
                    spec.s.push_back(static_cast<int>(sbits >> i & 1UL));
                for (int i = n - k - 1; i >= 0; --i)
                    spec.o.push_back(static_cast<int>(obits >> i & 1UL));
                out.push_back(std::move(spec));
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

TableFunction TableFunction::point_mass(const std::vector<int>& assignment)
{
    TableFunction t{static_cast<int>(assignment.size()), RationalVector(1UL << assignment.size())};
    std::size_t index = 0;
    for (int a : assignment)
        index = index * 2 + static_cast<std::size_t>(a);
    t.values[index] = 1;
    return t;
}

Rational TableFunction::marginal(const GeneralizedEvent& g) const
{
    Rational total = 0;
    for (std::size_t index = 0; index < values.size(); ++index) {
        bool match = true;
        for (std::size_t i = 0; i < g.measurements.size() && match; ++i) {
            const int bit = static_cast<int>(index >> (n - g.measurements[i]) & 1U);
            match = bit == g.outcomes[i];
        }
        if (match)
            total += values[index];
    }
    return total;
}

ProbabilisticModel TableFunction::to_model(const MarginalScenario& s) const
{
    if (s.measurements != n || s.outcomes != 2)
        throw ParameterError("table function does not match the scenario");
    EventSpace space(s);
    ProbabilisticModel p{s, RationalVector(space.size())};
    for (std::size_t v = 0; v < space.size(); ++v)
        p.values[v] = marginal(space.events()[v].as_generalized());
    return p;
}

ExclusiveSet build_exclusive_set(int m, const std::vector<int>& s)
{
    if (m < 3 || m % 2 == 0)
        throw ParameterError("exclusive sets are built for odd m >= 3, got " + std::to_string(m));
    if (s.size() != static_cast<std::size_t>(m))
        throw ParameterError("target assignment must have m entries");
    for (int a : s)
        if (a != 0 && a != 1)
            throw ParameterError("target assignment must be binary");
    std::vector<int> labels(m);
    for (int i = 0; i < m; ++i)
        labels[i] = i + 1;
    ExclusiveSet d{s, exclusive_on(labels, s)};
    auto issues = check_exclusive_set(d);
    if (!issues.empty())
        throw std::logic_error("exclusive set construction broke an invariant: " + issues.front());
    return d;
}

std::vector<std::string> check_exclusive_set(const ExclusiveSet& d)
{
    std::vector<std::string> issues;
    const auto m = d.target.size();
    for (std::size_t i = 0; i < d.events.size(); ++i) {
        const auto& e = d.events[i];
        if (e.measurements.empty() || e.measurements.size() > m - 1)
            issues.push_back("event " + std::to_string(i) + " involves " + std::to_string(e.measurements.size())
                             + " measurements");
        bool differs_s = false, differs_bar = false;
        for (std::size_t j = 0; j < e.measurements.size(); ++j) {
            const int target = d.target[static_cast<std::size_t>(e.measurements[j] - 1)];
            differs_s = differs_s || e.outcomes[j] != target;
            differs_bar = differs_bar || e.outcomes[j] != 1 - target;
        }
        if (!differs_s || !differs_bar)
            issues.push_back("event " + std::to_string(i) + " agrees with s or s-bar on its whole domain");
        for (std::size_t j = 0; j < i; ++j)
            if (!are_exclusive(d.events[j], e))
                issues.push_back("events " + std::to_string(j) + " and " + std::to_string(i) + " are not exclusive");
    }
    return issues;
}

IdentityReport verify_ce_identity(const InequalitySpec& spec, const std::vector<GeneralizedEvent>& events)
{
    auto lhs = expand_inequality(spec);
    ReducedCoordinates rc(lhs.scenario);
    return compare(rc, lhs, one_minus_sum(rc.events(), events));
}

IdentityReport verify_ce_identity(const InequalitySpec& spec, const ExclusiveSet& d)
{
    return verify_ce_identity(spec, d.events);
}

std::vector<GeneralizedEvent> certificate_events(const InequalitySpec& spec)
{
    require_valid_spec(spec);
    std::map<int, int> o;
    auto rest = spec.complement();
    for (std::size_t i = 0; i < rest.size(); ++i)
        o[rest[i]] = spec.o[i];
    std::vector<int> all(spec.n);
    for (int m = 1; m <= spec.n; ++m)
        all[m - 1] = m;
    auto d = certificate_on(all, spec, o);
    std::sort(d.begin(), d.end());
    return d;
}

std::size_t FamilyReport::passed() const
{
    return static_cast<std::size_t>(
        std::count_if(certificates.begin(), certificates.end(), [](const auto& c) { return c.passed(); }));
}

FamilyReport verify_family_is_ce(int n, int max_n)
{
    auto specs = generate_family(n, max_n);
    ReducedCoordinates rc(make_n_specker(n));
    const auto& space = rc.events();
    auto graph = build_exclusivity_graph(space.scenario());

    FamilyReport report{n, std::vector<FamilyCertificate>(specs.size())};
    parallel_for(specs.size(), [&](std::size_t i) {
        auto& cert = report.certificates[i];
        cert.spec = specs[i];
        cert.exclusive_set = certificate_events(specs[i]);
        cert.identity_holds = compare(rc, expand_inequality(specs[i]), one_minus_sum(space, cert.exclusive_set)).holds;
        std::set<std::size_t> refined;
        bool pairwise = true;
        for (std::size_t a = 0; a < cert.exclusive_set.size(); ++a) {
            for (auto v : space.refinement(cert.exclusive_set[a]))
                refined.insert(v);
            for (std::size_t b = 0; b < a; ++b)
                pairwise = pairwise && are_exclusive(cert.exclusive_set[a], cert.exclusive_set[b]);
        }
        cert.refined_events.assign(refined.begin(), refined.end());
        cert.clique = pairwise && is_clique(graph, cert.refined_events);
    });
    return report;
}

}  // namespace specklab

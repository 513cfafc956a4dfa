#include "specklab/polytope.hpp"

#include "specklab/errors.hpp"
#include "specklab/parallel.hpp"
#include "specklab/reduced_coordinates.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace specklab {

std::size_t affine_dimension(const std::vector<RationalVector>& points)
{
    if (points.empty())
        throw ParameterError("affine_dimension: no points");
    RationalMatrix diffs;
    for (std::size_t i = 1; i < points.size(); ++i) {
        RationalVector d(points[i].size());
        for (std::size_t j = 0; j < d.size(); ++j)
            d[j] = points[i][j] - points[0][j];
        diffs.push_back(std::move(d));
    }
    return diffs.empty() ? 0 : rank(diffs);
}

std::string to_string(FacetClass c)
{
    switch (c) {
    case FacetClass::ce:
        return "ce";
    case FacetClass::pentagonal:
        return "pentagonal";
    case FacetClass::other:
        return "other";
    }
    return "other";
}

FacetReport saturation_count(const LinearFunctional& f, const std::vector<ProbabilisticModel>& vertices,
                             std::size_t polytope_dimension)
{
    ReducedCoordinates rc(f.scenario);
    FacetReport r;
    r.inequality = f;
    r.canonical = rc.canonical_form(f);
    r.valid = true;
    std::vector<RationalVector> tight;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        auto value = evaluate_functional(f, vertices[i]);
        if (value < 0)
            r.valid = false;
        if (value == 0) {
            r.saturating.push_back(i);
            tight.push_back(rc.point(vertices[i].values));
        }
    }
    r.saturating_dimension = tight.empty() ? 0 : affine_dimension(tight);
    r.is_facet = r.valid && !tight.empty() && polytope_dimension > 0
                 && r.saturating_dimension == polytope_dimension - 1;
    return r;
}

Integer cyclic_facet_count(unsigned long d, unsigned long N)
{
    if (d == 0 || d % 2 != 0)
        throw ParameterError("cyclic_facet_count needs an even positive dimension, got " + std::to_string(d));
    if (N <= d)
        throw ParameterError("cyclic_facet_count needs N > d");
    const unsigned long m = d / 2;
    return binomial(N - m, m) + binomial(N - m - 1, m - 1);
}

LinearFunctional relabel_functional(const LinearFunctional& f, const std::vector<int>& permutation,
                                    const std::vector<int>& shifts)
{
    const auto& s = f.scenario;
    if (permutation.size() != static_cast<std::size_t>(s.measurements) || shifts.size() != permutation.size())
        throw ParameterError("relabel_functional: permutation and shifts need one entry per measurement");
    EventSpace space(s);
    auto g = zero_functional(s);
    g.offset = f.offset;
    g.bound = f.bound;
    for (std::size_t v = 0; v < space.size(); ++v) {
        const auto& e = space.events()[v];
        std::vector<std::pair<int, int>> mapped;
        for (std::size_t i = 0; i < e.context.size(); ++i) {
            const int m = e.context[i];
            mapped.emplace_back(permutation[m - 1], (e.outcomes[i] + shifts[m - 1]) % s.outcomes);
        }
        std::sort(mapped.begin(), mapped.end());
        std::vector<int> ctx, outcomes;
        for (auto [m, a] : mapped) {
            ctx.push_back(m);
            outcomes.push_back(a);
        }
        auto it = std::find(s.contexts.begin(), s.contexts.end(), ctx);
        if (it == s.contexts.end())
            throw ParameterError("relabel_functional: permutation does not preserve the contexts");
        g.coefficients[space.index(static_cast<std::size_t>(it - s.contexts.begin()), outcomes)] = f.coefficients[v];
    }
    return g;
}

std::vector<std::vector<Integer>> pentagonal_orbit()
{
    auto base = pentagonal_functional();
    for (auto& c : base.coefficients)
        c = -c;
    base.offset = 2 - base.offset;
    ReducedCoordinates rc(base.scenario);
    std::set<std::vector<Integer>> orbit;
    std::vector<int> perm{1, 2, 3, 4};
    do {
        for (int flips = 0; flips < 16; ++flips) {
            std::vector<int> shifts{flips >> 3 & 1, flips >> 2 & 1, flips >> 1 & 1, flips & 1};
            orbit.insert(rc.canonical_form(relabel_functional(base, perm, shifts)));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {orbit.begin(), orbit.end()};
}

namespace {

// Clique S with 1 - sum_S p proportional to f on the classical polytope.
bool find_clique_form(const LinearFunctional& f, std::vector<std::size_t>* clique)
{
    const auto& s = f.scenario;
    EventSpace space(s);
    auto graph = build_exclusivity_graph(s);
    auto vertices = enumerate_deterministic_models(s);
    std::vector<Rational> values;
    Rational level = 0;
    for (const auto& d : vertices) {
        values.push_back(evaluate_functional(f, d));
        if (values.back() < 0)
            return false;
        if (values.back() != 0) {
            if (level != 0 && values.back() != level)
                return false;
            level = values.back();
        }
    }
    if (level == 0)
        return false;

    const std::size_t n_events = space.size();
    std::vector<bool> allowed(n_events, true);
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (values[i] == 0) {
            tight.push_back(i);
            continue;
        }
        for (std::size_t v = 0; v < n_events; ++v)
            if (vertices[i].values[v] != 0)
                allowed[v] = false;
    }
    ReducedCoordinates rc(s);
    const auto target = rc.canonical_form(f);

    std::vector<std::size_t> chosen;
    std::vector<int> cover(tight.size(), 0);
    auto search = [&](auto&& self) -> bool {
        std::size_t pick = tight.size();
        std::vector<std::size_t> best_candidates;
        for (std::size_t t = 0; t < tight.size(); ++t) {
            if (cover[t])
                continue;
            std::vector<std::size_t> candidates;
            for (std::size_t v = 0; v < n_events; ++v) {
                if (!allowed[v] || vertices[tight[t]].values[v] == 0)
                    continue;
                if (std::all_of(chosen.begin(), chosen.end(), [&](std::size_t u) { return graph.adjacent(u, v); }))
                    candidates.push_back(v);
            }
            if (candidates.empty())
                return false;
            if (pick == tight.size() || candidates.size() < best_candidates.size()) {
                pick = t;
                best_candidates = std::move(candidates);
            }
        }
        if (pick == tight.size()) {
            auto candidate = event_sum_functional(s, chosen);
            for (auto& c : candidate.coefficients)
                c = -c;
            candidate.offset = 1;
            if (rc.canonical_form(candidate) != target)
                return false;
            if (clique) {
                *clique = chosen;
                std::sort(clique->begin(), clique->end());
            }
            return true;
        }
        for (auto v : best_candidates) {
            chosen.push_back(v);
            for (std::size_t t = 0; t < tight.size(); ++t)
                if (vertices[tight[t]].values[v] != 0)
                    ++cover[t];
            if (self(self))
                return true;
            for (std::size_t t = 0; t < tight.size(); ++t)
                if (vertices[tight[t]].values[v] != 0)
                    --cover[t];
            chosen.pop_back();
        }
        return false;
    };
    return search(search);
}

}  // namespace

FacetClass classify_inequality(const LinearFunctional& f, std::vector<std::size_t>* clique)
{
    if (find_clique_form(f, clique))
        return FacetClass::ce;
    if (f.scenario == make_symmetric_scenario(4, 2, 2)) {
        static const auto orbit = pentagonal_orbit();
        ReducedCoordinates rc(f.scenario);
        if (std::binary_search(orbit.begin(), orbit.end(), rc.canonical_form(f)))
            return FacetClass::pentagonal;
    }
    return FacetClass::other;
}

std::vector<FacetReport> enumerate_classical_facets(const MarginalScenario& s, const PolytopeOptions& options)
{
    require_valid(s);
    ReducedCoordinates rc(s);
    if (rc.dimension() > options.enumeration.max_dimension)
        throw SizeLimitError("reduced dimension " + std::to_string(rc.dimension()) + " exceeds the guard",
                             options.enumeration.max_dimension);
    auto vertices = enumerate_deterministic_models(s, options.vertex_limit);
    std::vector<RationalVector> points;
    for (const auto& v : vertices)
        points.push_back(rc.point(v.values));
    const auto dim = affine_dimension(points);
    if (dim != rc.dimension())
        throw ParameterError("classical polytope has dimension " + std::to_string(dim)
                             + " but the reduced space has dimension " + std::to_string(rc.dimension()));

    auto hull = lp::convex_hull_facets(points, options.enumeration);
    std::vector<FacetReport> reports(hull.size());
    parallel_for(hull.size(), [&](std::size_t i) {
        RationalVector r(hull[i].begin(), hull[i].end());
        auto f = rc.to_functional(r);
        f.bound = DeclaredBound{lp::Relation::greater_equal, 0};
        reports[i] = saturation_count(f, vertices, dim);
        reports[i].classification = classify_inequality(f, &reports[i].clique);
    });
    return reports;
}

ConstraintSystem ce_constraint_system(const MarginalScenario& s, std::size_t clique_limit)
{
    auto cs = build_model_constraints(s);
    auto graph = build_exclusivity_graph(s);
    for (const auto& clique : enumerate_maximal_cliques(graph, clique_limit)) {
        LinearRow row{RationalVector(cs.dimension), 1, "clique"};
        for (auto v : clique)
            row.coefficients[v] = -1;
        cs.inequalities.push_back(std::move(row));
    }
    return cs;
}

ExactCollapseReport check_theorem_collapse(int n, const ExactCollapseOptions& options)
{
    auto s = make_n_specker(n);
    ExactCollapseReport report;
    report.n = n;

    auto deterministic = enumerate_deterministic_models(s, options.polytope.vertex_limit);
    std::set<RationalVector> expected;
    for (const auto& d : deterministic)
        expected.insert(d.values);
    auto ce_vertices = lp::enumerate_polytope_vertices(ce_constraint_system(s), options.polytope.enumeration);
    report.ce_vertices = ce_vertices.size();
    std::set<RationalVector> found(ce_vertices.begin(), ce_vertices.end());
    report.vertices_deterministic = found == expected;
    for (const auto& v : ce_vertices)
        if (!expected.count(v)) {
            std::string text = "non-deterministic CE vertex:";
            for (const auto& x : v)
                text += " " + to_string(x);
            report.problems.push_back(text);
        }

    auto facets = enumerate_classical_facets(s, options.polytope);
    report.facets = facets.size();
    report.expected_facets = static_cast<std::size_t>(1) << (2 * n - 2);
    ReducedCoordinates rc(s);
    std::set<std::vector<Integer>> facet_forms, family_forms;
    for (const auto& f : facets)
        facet_forms.insert(f.canonical);
    for (const auto& spec : generate_family(n))
        family_forms.insert(rc.canonical_form(expand_inequality(spec)));
    report.facets_match_family = facet_forms == family_forms && facets.size() == report.expected_facets;

    const std::size_t checks = std::min(options.q1_checks, facets.size());
    std::vector<double> excess(checks, 0.0);
    std::vector<char> converged(checks, 0);
    parallel_for(checks, [&](std::size_t i) {
        auto g = facets[i].inequality;
        for (auto& c : g.coefficients)
            c = -c;
        g.offset = -g.offset;
        g.bound.reset();
        auto classical = maximize_over_classical(g);
        auto q1 = maximize_over_q1(g, options.sdp);
        excess[i] = q1.value - classical.value.get_d();
        converged[i] = q1.converged;
    });
    report.q1_checked = checks;
    for (std::size_t i = 0; i < checks; ++i) {
        report.q1_worst_excess = std::max(report.q1_worst_excess, excess[i]);
        if (!converged[i] || excess[i] > options.q1_tolerance) {
            report.q1_ok = false;
            report.problems.push_back("Q1 check failed on facet " + std::to_string(i));
        }
    }
    return report;
}

std::size_t CollapseReport::gaps() const
{
    return static_cast<std::size_t>(
        std::count_if(trials.begin(), trials.end(), [](const auto& t) { return !t.collapsed; }));
}

CollapseReport random_functional_collapse_check(const MarginalScenario& s, int trials, std::uint64_t seed,
                                                const std::vector<LinearFunctional>& probes,
                                                const CollapseOptions& options)
{
    if (trials < 0)
        throw ParameterError("trial count must be nonnegative");
    std::mt19937_64 rng(seed);
    CollapseReport report;
    report.scenario_label = "explicit scenario";
    std::vector<LinearFunctional> functionals = probes;
    for (int t = 0; t < trials; ++t)
        functionals.push_back(random_functional(s, rng));
    report.trials.resize(functionals.size());
    parallel_for(functionals.size(), [&](std::size_t i) {
        auto& trial = report.trials[i];
        trial.functional = functionals[i];
        trial.classical = maximize_over_classical(functionals[i]).value;
        auto ce = maximize_over_ce(functionals[i], options.ce);
        if (ce.status != lp::Status::optimal)
            throw std::logic_error("CE maximization did not reach an optimum");
        trial.ce = ce.value;
        trial.collapsed = trial.classical == trial.ce;
        if (options.run_q1) {
            auto q1 = maximize_over_q1(functionals[i], options.sdp);
            trial.q1 = q1.value;
            trial.q1_converged = q1.converged;
            trial.collapsed = trial.collapsed && q1.converged
                              && std::abs(q1.value - trial.classical.get_d()) <= options.q1_tolerance;
        }
    });
    return report;
}

CollapseReport random_functional_collapse_check(int n, int trials, std::uint64_t seed, const CollapseOptions& options)
{
    auto report = random_functional_collapse_check(make_n_specker(n), trials, seed, {}, options);
    report.scenario_label = "binary " + std::to_string(n) + "-Specker";
    if (n >= 5)
        report.scenario_label += " (sampled evidence, not a proof)";
    return report;
}

}  // namespace specklab

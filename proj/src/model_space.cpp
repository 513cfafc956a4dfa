#include "specklab/model_space.hpp"

#include "specklab/errors.hpp"
#include "specklab/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace specklab {

namespace {

std::string join(const std::vector<int>& v)
{
    std::string out;
    for (int x : v)
        out += std::to_string(x);
    return out;
}

std::string set_string(const std::vector<int>& v)
{
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out + "}";
}

std::vector<int> intersection(const std::vector<int>& a, const std::vector<int>& b)
{
    std::vector<int> out;
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end())
            out.push_back(x);
    return out;
}

}  // namespace

std::vector<double> ProbabilisticModel::as_doubles() const
{
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values)
        out.push_back(v.get_d());
    return out;
}

ConstraintSystem build_model_constraints(const MarginalScenario& s)
{
    require_valid(s);
    EventSpace space(s);
    const std::size_t n = space.size();
    ConstraintSystem cs;
    cs.dimension = n;

    for (std::size_t v = 0; v < n; ++v) {
        LinearRow row{RationalVector(n), 0, {}};
        row.coefficients[v] = 1;
        const auto& e = space.events()[v];
        row.label = "nonnegativity p(" + join(e.outcomes) + "|" + join(e.context) + ")";
        cs.inequalities.push_back(std::move(row));
    }
    for (std::size_t c = 0; c < s.contexts.size(); ++c) {
        LinearRow row{RationalVector(n), -1, "normalization " + set_string(s.contexts[c])};
        for (std::size_t v = 0; v < n; ++v)
            if (space.context_of(v) == c)
                row.coefficients[v] = 1;
        cs.equalities.push_back(std::move(row));
    }
    const int k = s.outcomes;
    for (std::size_t c1 = 0; c1 < s.contexts.size(); ++c1)
        for (std::size_t c2 = c1 + 1; c2 < s.contexts.size(); ++c2) {
            auto shared = intersection(s.contexts[c1], s.contexts[c2]);
            if (shared.empty())
                continue;
            std::vector<int> tuple(shared.size(), 0);
            for (;;) {
                GeneralizedEvent g{shared, tuple};
                LinearRow row{RationalVector(n), 0,
                              "no-disturbance " + set_string(s.contexts[c1]) + " vs " + set_string(s.contexts[c2])
                                  + " on " + set_string(shared) + "=" + join(tuple)};
                for (auto v : space.refinement(c1, g))
                    row.coefficients[v] += 1;
                for (auto v : space.refinement(c2, g))
                    row.coefficients[v] -= 1;
                cs.equalities.push_back(std::move(row));
                int pos = static_cast<int>(tuple.size()) - 1;
                while (pos >= 0 && ++tuple[pos] == k) {
                    tuple[pos] = 0;
                    --pos;
                }
                if (pos < 0)
                    break;
            }
        }
    return cs;
}

ProbabilisticModel deterministic_model(const MarginalScenario& s, const DeterministicModel& d)
{
    if (d.assignment.size() != static_cast<std::size_t>(s.measurements))
        throw ParameterError("assignment has " + std::to_string(d.assignment.size()) + " entries, scenario has "
                             + std::to_string(s.measurements) + " measurements");
    EventSpace space(s);
    ProbabilisticModel p{s, RationalVector(space.size())};
    for (std::size_t c = 0; c < s.contexts.size(); ++c) {
        std::vector<int> outcomes;
        for (int m : s.contexts[c])
            outcomes.push_back(d.assignment[m - 1]);
        p.values[space.index(c, outcomes)] = 1;
    }
    return p;
}

std::vector<DeterministicModel> enumerate_assignments(const MarginalScenario& s, unsigned long long limit)
{
    unsigned long long total = 1;
    for (int i = 0; i < s.measurements; ++i) {
        total *= static_cast<unsigned long long>(s.outcomes);
        if (total > limit)
            throw SizeLimitError("too many deterministic models", limit);
    }
    std::vector<DeterministicModel> out;
    out.reserve(total);
    std::vector<int> a(s.measurements, 0);
    for (unsigned long long i = 0; i < total; ++i) {
        out.push_back({a});
        for (int pos = s.measurements - 1; pos >= 0; --pos) {
            if (++a[pos] < s.outcomes)
                break;
            a[pos] = 0;
        }
    }
    return out;
}

std::vector<ProbabilisticModel> enumerate_deterministic_models(const MarginalScenario& s, unsigned long long limit)
{
    std::vector<ProbabilisticModel> out;
    for (const auto& d : enumerate_assignments(s, limit))
        out.push_back(deterministic_model(s, d));
    return out;
}

std::vector<std::string> check_model(const ProbabilisticModel& p)
{
    auto cs = build_model_constraints(p.scenario);
    if (p.values.size() != cs.dimension)
        return {"model has " + std::to_string(p.values.size()) + " values, scenario has "
                + std::to_string(cs.dimension) + " events"};
    std::vector<std::string> issues;
    for (const auto& row : cs.inequalities) {
        auto r = row.evaluate(p.values);
        if (r < 0)
            issues.push_back(row.label + " (value " + to_string(r) + ")");
    }
    for (const auto& row : cs.equalities) {
        auto r = row.evaluate(p.values);
        if (r != 0)
            issues.push_back(row.label + " (residual " + to_string(r) + ")");
    }
    return issues;
}

void require_valid_model(const ProbabilisticModel& p)
{
    auto issues = check_model(p);
    if (!issues.empty())
        throw ConstraintViolation("invalid probabilistic model: " + issues.front());
}

MembershipCertificate classical_membership(const ProbabilisticModel& p, unsigned long long limit)
{
    require_valid_model(p);
    const auto& s = p.scenario;
    auto assignments = enumerate_assignments(s, limit);
    std::vector<ProbabilisticModel> vertices;
    for (const auto& d : assignments)
        vertices.push_back(deterministic_model(s, d));
    const std::size_t n_events = p.values.size();

    lp::LinearProgram prog;
    prog.sense = lp::Sense::maximize;
    prog.objective.assign(vertices.size(), 0);
    for (std::size_t v = 0; v < n_events; ++v) {
        lp::Constraint row{RationalVector(vertices.size()), lp::Relation::equal, p.values[v], {}};
        for (std::size_t d = 0; d < vertices.size(); ++d)
            row.coefficients[d] = vertices[d].values[v];
        prog.constraints.push_back(std::move(row));
    }
    prog.constraints.push_back({RationalVector(vertices.size(), 1), lp::Relation::equal, 1, "convexity"});

    auto sol = lp::solve(prog);
    MembershipCertificate cert;
    if (sol.status == lp::Status::optimal) {
        cert.member = true;
        for (std::size_t d = 0; d < vertices.size(); ++d)
            if (sol.primal[d] > 0) {
                cert.assignments.push_back(assignments[d]);
                cert.weights.push_back(sol.primal[d]);
            }
        return cert;
    }
    if (sol.status != lp::Status::infeasible)
        throw std::logic_error("classical membership LP is unbounded");

    // Farkas multipliers y: sum_v y_v d(v) + y_0 >= 0 on every vertex d and
    // sum_v y_v p(v) + y_0 < 0.
    LinearFunctional g = zero_functional(s);
    for (std::size_t v = 0; v < n_events; ++v)
        g.coefficients[v] = sol.farkas[v];
    g.offset = sol.farkas[n_events];
    g.bound = DeclaredBound{lp::Relation::greater_equal, 0};
    for (const auto& vert : vertices)
        if (evaluate_functional(g, vert) < 0)
            throw std::logic_error("separating functional is negative on a deterministic model");
    if (evaluate_functional(g, p) >= 0)
        throw std::logic_error("separating functional does not separate the model");
    cert.separating = std::move(g);
    return cert;
}

Rational evaluate_functional(const LinearFunctional& f, const RationalVector& values)
{
    if (f.coefficients.size() != values.size())
        throw ConstraintViolation("functional has " + std::to_string(f.coefficients.size())
                                  + " coefficients, model has " + std::to_string(values.size()) + " values");
    Rational total = f.offset;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (f.coefficients[i] != 0 && values[i] != 0)
            total += f.coefficients[i] * values[i];
    return total;
}

Rational evaluate_functional(const LinearFunctional& f, const ProbabilisticModel& p)
{
    if (!(f.scenario == p.scenario))
        throw ConstraintViolation("functional and model are defined on different scenarios");
    return evaluate_functional(f, p.values);
}

}  // namespace specklab

#include "specklab/optimizers.hpp"

#include "specklab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace specklab {

namespace {

void require_shape(const LinearFunctional& f)
{
    require_valid(f.scenario);
    EventSpace space(f.scenario);
    if (f.coefficients.size() != space.size())
        throw ConstraintViolation("functional has " + std::to_string(f.coefficients.size())
                                  + " coefficients, scenario has " + std::to_string(space.size()) + " events");
}

lp::LinearProgram model_lp(const LinearFunctional& f)
{
    auto cs = build_model_constraints(f.scenario);
    lp::LinearProgram prog;
    prog.sense = lp::Sense::maximize;
    prog.objective = f.coefficients;
    prog.objective_offset = f.offset;
    // Nonnegativity is carried by the default variable bounds.
    for (const auto& row : cs.equalities)
        prog.constraints.push_back({row.coefficients, lp::Relation::equal, Rational(-row.constant), row.label});
    return prog;
}

lp::Constraint clique_row(std::size_t n, const std::vector<std::size_t>& clique)
{
    lp::Constraint row{RationalVector(n), lp::Relation::less_equal, 1, "clique"};
    for (auto v : clique)
        row.coefficients[v] = 1;
    return row;
}

std::vector<std::size_t> extend_to_maximal(const ExclusivityGraph& g, std::vector<std::size_t> clique)
{
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        if (std::find(clique.begin(), clique.end(), v) != clique.end())
            continue;
        if (std::all_of(clique.begin(), clique.end(), [&](std::size_t u) { return g.adjacent(u, v); }))
            clique.push_back(v);
    }
    std::sort(clique.begin(), clique.end());
    return clique;
}

}  // namespace

LpOptimum maximize_over_general(const LinearFunctional& f)
{
    require_shape(f);
    auto sol = lp::solve(model_lp(f));
    LpOptimum out;
    out.status = sol.status;
    if (sol.status == lp::Status::optimal) {
        out.value = sol.objective;
        out.optimizer = ProbabilisticModel{f.scenario, sol.primal};
    }
    return out;
}

ClassicalOptimum maximize_over_classical(const LinearFunctional& f, unsigned long long limit)
{
    require_shape(f);
    ClassicalOptimum best;
    bool first = true;
    for (const auto& d : enumerate_assignments(f.scenario, limit)) {
        auto value = evaluate_functional(f, deterministic_model(f.scenario, d));
        if (first || value > best.value) {
            best.value = value;
            best.argmax = d;
            first = false;
        }
    }
    return best;
}

std::vector<std::size_t> max_weight_clique(const ExclusivityGraph& g, const RationalVector& weights)
{
    std::vector<std::size_t> order;
    for (std::size_t v = 0; v < weights.size(); ++v)
        if (weights[v] > 0)
            order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return weights[a] > weights[b]; });

    std::vector<std::size_t> best, current;
    Rational best_weight = 0;
    auto search = [&](auto&& self, const std::vector<std::size_t>& candidates, const Rational& weight) -> void {
        if (weight > best_weight) {
            best_weight = weight;
            best = current;
        }
        Rational remaining = 0;
        for (auto v : candidates)
            remaining += weights[v];
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (weight + remaining <= best_weight)
                return;
            const auto v = candidates[i];
            remaining -= weights[v];
            std::vector<std::size_t> next;
            for (std::size_t j = i + 1; j < candidates.size(); ++j)
                if (g.adjacent(v, candidates[j]))
                    next.push_back(candidates[j]);
            current.push_back(v);
            self(self, next, weight + weights[v]);
            current.pop_back();
        }
    };
    search(search, order, Rational(0));
    std::sort(best.begin(), best.end());
    return best;
}

CeOptimum maximize_over_ce(const LinearFunctional& f, const CeOptions& options)
{
    require_shape(f);
    auto g = build_exclusivity_graph(f.scenario);
    const std::size_t n = g.vertices.size();
    auto prog = model_lp(f);
    CeOptimum out;

    std::vector<std::vector<std::size_t>> cliques;
    try {
        cliques = enumerate_maximal_cliques(g, options.full_clique_limit);
    } catch (const SizeLimitError&) {
        out.lazy = true;
    }

    if (!out.lazy) {
        for (const auto& c : cliques)
            prog.constraints.push_back(clique_row(n, c));
        auto sol = lp::solve(prog);
        out.status = sol.status;
        out.clique_constraints = cliques.size();
        out.rounds = 1;
        if (sol.status == lp::Status::optimal) {
            out.value = sol.objective;
            out.optimizer = ProbabilisticModel{f.scenario, sol.primal};
        }
        return out;
    }

    std::set<std::vector<std::size_t>> added;
    for (std::size_t round = 1; round <= options.max_rounds; ++round) {
        auto sol = lp::solve(prog);
        out.status = sol.status;
        out.rounds = round;
        if (sol.status != lp::Status::optimal)
            return out;
        auto clique = max_weight_clique(g, sol.primal);
        Rational weight = 0;
        for (auto v : clique)
            weight += sol.primal[v];
        if (weight <= 1) {
            out.value = sol.objective;
            out.optimizer = ProbabilisticModel{f.scenario, sol.primal};
            out.clique_constraints = added.size();
            return out;
        }
        auto maximal = extend_to_maximal(g, clique);
        if (!added.insert(maximal).second)
            throw std::logic_error("clique separation returned an inequality already present");
        prog.constraints.push_back(clique_row(n, maximal));
    }
    throw SizeLimitError("consistent-exclusivity cut generation did not terminate", options.max_rounds);
}

bool MomentCheck::valid(double tolerance) const
{
    return min_eigenvalue >= -tolerance && unit_residual <= tolerance && diagonal_residual <= tolerance
           && exclusivity_residual <= tolerance && model_residual <= tolerance;
}

std::vector<double> moment_model(const MomentMatrix& m)
{
    std::vector<double> p;
    for (std::size_t v = 1; v < m.matrix.dimension(); ++v)
        p.push_back(m.matrix(0, v));
    return p;
}

MomentCheck validate_moment_matrix(const MomentMatrix& m)
{
    auto g = build_exclusivity_graph(m.scenario);
    const std::size_t n = g.vertices.size();
    if (m.matrix.dimension() != n + 1)
        throw ConstraintViolation("moment matrix dimension " + std::to_string(m.matrix.dimension())
                                  + " does not match 1 + " + std::to_string(n) + " events");
    MomentCheck check;
    check.min_eigenvalue = sdp::min_eigenvalue(m.matrix);
    check.unit_residual = std::abs(m.matrix(0, 0) - 1);
    for (std::size_t v = 0; v < n; ++v) {
        check.diagonal_residual = std::max(check.diagonal_residual, std::abs(m.matrix(0, v + 1) - m.matrix(v + 1, v + 1)));
        for (std::size_t u = 0; u < v; ++u)
            if (g.adjacent(u, v))
                check.exclusivity_residual = std::max(check.exclusivity_residual, std::abs(m.matrix(u + 1, v + 1)));
    }
    auto p = moment_model(m);
    for (const auto& row : build_model_constraints(m.scenario).equalities) {
        double r = row.constant.get_d();
        for (std::size_t v = 0; v < n; ++v)
            if (row.coefficients[v] != 0)
                r += row.coefficients[v].get_d() * p[v];
        check.model_residual = std::max(check.model_residual, std::abs(r));
    }
    return check;
}

sdp::SdpProblem q1_problem(const LinearFunctional& f)
{
    require_shape(f);
    auto g = build_exclusivity_graph(f.scenario);
    const std::size_t n = g.vertices.size();
    sdp::SdpProblem p;
    p.dimension = n + 1;
    p.sense = sdp::Sense::maximize;
    p.constraints.push_back({{{0, 0, 1.0}}, 1.0, "unit"});
    for (std::size_t v = 0; v < n; ++v)
        p.constraints.push_back({{{0, v + 1, 1.0}, {v + 1, v + 1, -1.0}}, 0.0, "diagonal"});
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u = 0; u < v; ++u)
            if (g.adjacent(u, v))
                p.constraints.push_back({{{u + 1, v + 1, 1.0}}, 0.0, "exclusive"});
    for (const auto& row : build_model_constraints(f.scenario).equalities) {
        sdp::AffineConstraint c{{}, -row.constant.get_d(), row.label};
        for (std::size_t v = 0; v < n; ++v)
            if (row.coefficients[v] != 0)
                c.terms.push_back({0, v + 1, row.coefficients[v].get_d()});
        p.constraints.push_back(std::move(c));
    }
    for (std::size_t v = 0; v < n; ++v)
        if (f.coefficients[v] != 0)
            p.objective.push_back({0, v + 1, f.coefficients[v].get_d()});
    p.objective_offset = f.offset.get_d();
    return p;
}

Q1Optimum maximize_over_q1(const LinearFunctional& f, const sdp::SdpOptions& options)
{
    auto problem = q1_problem(f);
    auto result = sdp::solve_sdp(problem, options);
    Q1Optimum out;
    out.value = result.objective;
    out.converged = result.report.status == sdp::SdpStatus::converged;
    out.certificate = MomentMatrix{f.scenario, std::move(result.matrix)};
    out.report = std::move(result.report);
    return out;
}

}  // namespace specklab

#include "specklab/realization.hpp"

#include "specklab/errors.hpp"
#include "specklab/model_space.hpp"

#include <algorithm>
#include <cmath>

namespace specklab {

namespace {

using Matrix = Eigen::MatrixXcd;

double max_abs(const Matrix& m)
{
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

std::string event_name(const Event& e)
{
    std::string a, x;
    for (int o : e.outcomes)
        a += std::to_string(o);
    for (int m : e.context)
        x += std::to_string(m);
    return "(" + a + "|" + x + ")";
}

std::string set_name(const std::vector<int>& v)
{
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out + "}";
}

struct Common {
    EventSpace space;
    RealizationReport report;
};

// Checks shared by both definitions: dimensions, state, projectivity and the
// induced model.
Common common_checks(const QuantumRealization& r, const MarginalScenario& s, double tolerance)
{
    require_valid(s);
    Common c{EventSpace(s), {}};
    auto& rep = c.report;
    const auto d = r.state.dimension();
    if (r.projectors.size() != c.space.size())
        throw ParameterError("realization has " + std::to_string(r.projectors.size()) + " projectors, scenario has "
                             + std::to_string(c.space.size()) + " events");
    for (const auto& p : r.projectors)
        if (p.dimension() != d)
            throw ParameterError("projector dimension does not match the state");

    const double trace_dev = std::abs(r.state.matrix().trace() - std::complex<double>(1.0, 0.0));
    rep.max_residual = std::max(rep.max_residual, trace_dev);
    if (trace_dev > tolerance)
        rep.issues.push_back("state trace deviates from 1 by " + std::to_string(trace_dev));
    const double state_min = sdp::min_eigenvalue(r.state);
    if (state_min < -tolerance)
        rep.issues.push_back("state has negative eigenvalue " + std::to_string(state_min));

    for (std::size_t v = 0; v < c.space.size(); ++v) {
        const auto& p = r.projectors[v].matrix();
        const double idem = max_abs(p * p - p);
        rep.max_residual = std::max(rep.max_residual, idem);
        if (idem > tolerance)
            rep.issues.push_back("projector " + event_name(c.space.events()[v]) + " is not idempotent (residual "
                                 + std::to_string(idem) + ")");
        rep.model.push_back((p * r.state.matrix()).trace().real());
    }

    double worst = 0;
    for (const auto& row : build_model_constraints(s).equalities) {
        double value = row.constant.get_d();
        for (std::size_t v = 0; v < c.space.size(); ++v)
            if (row.coefficients[v] != 0)
                value += row.coefficients[v].get_d() * rep.model[v];
        worst = std::max(worst, std::abs(value));
    }
    rep.normalized = worst <= tolerance;
    return c;
}

Matrix context_sum(const QuantumRealization& r, const EventSpace& space, std::size_t context)
{
    const auto d = static_cast<Eigen::Index>(r.state.dimension());
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t v = 0; v < space.size(); ++v)
        if (space.context_of(v) == context)
            sum += r.projectors[v].matrix();
    return sum;
}

}  // namespace

RealizationReport check_quantum_realization(const QuantumRealization& r, const MarginalScenario& s, double tolerance)
{
    auto c = common_checks(r, s, tolerance);
    auto& rep = c.report;
    const auto d = static_cast<Eigen::Index>(r.state.dimension());
    const Matrix id = Matrix::Identity(d, d);
    for (std::size_t ctx = 0; ctx < s.contexts.size(); ++ctx) {
        const double dev = max_abs(context_sum(r, c.space, ctx) - id);
        rep.max_residual = std::max(rep.max_residual, dev);
        if (dev > tolerance)
            rep.issues.push_back("projectors of context " + set_name(s.contexts[ctx])
                                 + " do not sum to the identity (residual " + std::to_string(dev) + ")");
    }
    // Marginal effects on overlaps must not depend on the context.
    for (std::size_t c1 = 0; c1 < s.contexts.size(); ++c1)
        for (std::size_t c2 = c1 + 1; c2 < s.contexts.size(); ++c2) {
            std::vector<int> shared;
            for (int m : s.contexts[c1])
                if (std::binary_search(s.contexts[c2].begin(), s.contexts[c2].end(), m))
                    shared.push_back(m);
            if (shared.empty())
                continue;
            std::vector<int> tuple(shared.size(), 0);
            for (;;) {
                GeneralizedEvent g{shared, tuple};
                Matrix diff = Matrix::Zero(d, d);
                for (auto v : c.space.refinement(c1, g))
                    diff += r.projectors[v].matrix();
                for (auto v : c.space.refinement(c2, g))
                    diff -= r.projectors[v].matrix();
                const double dev = max_abs(diff);
                rep.max_residual = std::max(rep.max_residual, dev);
                if (dev > tolerance)
                    rep.issues.push_back("marginal effects on " + set_name(shared) + " differ between "
                                         + set_name(s.contexts[c1]) + " and " + set_name(s.contexts[c2])
                                         + " (residual " + std::to_string(dev) + ")");
                int pos = static_cast<int>(tuple.size()) - 1;
                while (pos >= 0 && ++tuple[pos] == s.outcomes) {
                    tuple[pos] = 0;
                    --pos;
                }
                if (pos < 0)
                    break;
            }
        }
    rep.valid = rep.issues.empty();
    return rep;
}

RealizationReport check_almost_quantum_realization(const QuantumRealization& r, const MarginalScenario& s,
                                                   double tolerance)
{
    auto c = common_checks(r, s, tolerance);
    auto& rep = c.report;
    const auto d = static_cast<Eigen::Index>(r.state.dimension());
    const Matrix id = Matrix::Identity(d, d);
    for (std::size_t ctx = 0; ctx < s.contexts.size(); ++ctx) {
        Matrix gap = id - context_sum(r, c.space, ctx);
        gap = (gap + gap.adjoint()) / 2.0;
        const double lowest = sdp::min_eigenvalue(sdp::HermMatrix(gap));
        if (lowest < -tolerance) {
            rep.max_residual = std::max(rep.max_residual, -lowest);
            rep.issues.push_back("projectors of context " + set_name(s.contexts[ctx])
                                 + " exceed the identity (eigenvalue " + std::to_string(lowest) + ")");
        }
    }
    auto graph = build_exclusivity_graph(s);
    for (std::size_t v = 0; v < c.space.size(); ++v)
        for (std::size_t u = 0; u < v; ++u) {
            if (!graph.adjacent(u, v))
                continue;
            const double overlap = max_abs(r.projectors[u].matrix() * r.projectors[v].matrix());
            rep.max_residual = std::max(rep.max_residual, overlap);
            if (overlap > tolerance)
                rep.issues.push_back("exclusive projectors " + event_name(c.space.events()[u]) + " and "
                                     + event_name(c.space.events()[v]) + " are not orthogonal (residual "
                                     + std::to_string(overlap) + ")");
        }
    rep.valid = rep.issues.empty();
    return rep;
}

JointMeasurabilityReport check_joint_measurability_simulation(
    const std::vector<sdp::HermMatrix>& parent, const std::vector<std::vector<sdp::HermMatrix>>& children,
    double tolerance)
{
    JointMeasurabilityReport rep;
    const std::size_t n = children.size();
    if (n == 0 || parent.empty())
        throw ParameterError("joint measurability check needs a parent and at least one child");
    const std::size_t k = children.front().size();
    if (k < 2)
        throw ParameterError("child measurements need at least two outcomes");
    std::size_t expected = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (children[i].size() != k)
            throw ParameterError("all child measurements must share the outcome count");
        expected *= k;
    }
    if (parent.size() != expected)
        throw ParameterError("parent has " + std::to_string(parent.size()) + " effects, expected "
                             + std::to_string(expected));
    const auto d = static_cast<Eigen::Index>(parent.front().dimension());
    for (const auto& e : parent)
        if (static_cast<Eigen::Index>(e.dimension()) != d)
            throw ParameterError("parent effects differ in dimension");
    for (const auto& child : children)
        for (const auto& e : child)
            if (static_cast<Eigen::Index>(e.dimension()) != d)
                throw ParameterError("child effect dimension does not match the parent");

    Matrix total = Matrix::Zero(d, d);
    for (std::size_t t = 0; t < parent.size(); ++t) {
        const double lowest = sdp::min_eigenvalue(parent[t]);
        if (lowest < -tolerance)
            rep.issues.push_back("parent effect " + std::to_string(t) + " has negative eigenvalue "
                                 + std::to_string(lowest));
        total += parent[t].matrix();
    }
    const double completeness = max_abs(total - Matrix::Identity(d, d));
    if (completeness > tolerance)
        rep.issues.push_back("parent effects do not sum to the identity (residual " + std::to_string(completeness) + ")");

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < k; ++a) {
            Matrix marginal = Matrix::Zero(d, d);
            for (std::size_t t = 0; t < parent.size(); ++t) {
                std::size_t rest = t;
                for (std::size_t j = n - 1; j > i; --j)
                    rest /= k;
                if (rest % k == a)
                    marginal += parent[t].matrix();
            }
            const double dev = max_abs(marginal - children[i][a].matrix());
            rep.max_residual = std::max(rep.max_residual, dev);
            if (dev > tolerance)
                rep.issues.push_back("child " + std::to_string(i + 1) + " outcome " + std::to_string(a)
                                     + " differs from the parent marginal (residual " + std::to_string(dev) + ")");
        }
    rep.valid = rep.issues.empty();
    return rep;
}

std::vector<sdp::HermMatrix> unsharp_qubit_parent(const sdp::HermMatrix& x, const sdp::HermMatrix& z)
{
    const Matrix id = Matrix::Identity(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<sdp::HermMatrix> out;
    for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) {
            const double s1 = a1 ? -1.0 : 1.0;
            const double s2 = a2 ? -1.0 : 1.0;
            out.emplace_back(0.25 * (id + r * (s1 * x.matrix() + s2 * z.matrix())));
        }
    return out;
}

std::vector<std::vector<sdp::HermMatrix>> unsharp_qubit_children(const sdp::HermMatrix& x, const sdp::HermMatrix& z)
{
    const Matrix id = Matrix::Identity(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<std::vector<sdp::HermMatrix>> out(2);
    for (int a = 0; a < 2; ++a) {
        const double sign = a ? -1.0 : 1.0;
        out[0].emplace_back(0.5 * (id + sign * r * x.matrix()));
        out[1].emplace_back(0.5 * (id + sign * r * z.matrix()));
    }
    return out;
}

std::vector<sdp::HermMatrix> unsharp_qubit_parent()
{
    return unsharp_qubit_parent(sdp::pauli_x(), sdp::pauli_z());
}

std::vector<std::vector<sdp::HermMatrix>> unsharp_qubit_children()
{
    return unsharp_qubit_children(sdp::pauli_x(), sdp::pauli_z());
}

}  // namespace specklab

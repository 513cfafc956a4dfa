#pragma once

#include "specklab/events.hpp"
#include "specklab/functional.hpp"
#include "specklab/lp.hpp"
#include "specklab/model_space.hpp"
#include "specklab/sdp.hpp"

#include <cstddef>
#include <vector>

namespace specklab {

struct LpOptimum {
    lp::Status status = lp::Status::infeasible;
    Rational value = 0;
    ProbabilisticModel optimizer;  // set when optimal
};

/// Exact maximum over the no-disturbance polytope G.
LpOptimum maximize_over_general(const LinearFunctional& f);

struct ClassicalOptimum {
    Rational value = 0;
    DeterministicModel argmax;  // first maximizer in lexicographic order
};

/// Maximum over the k^n deterministic models.
ClassicalOptimum maximize_over_classical(const LinearFunctional& f, unsigned long long limit = 1ULL << 20);

struct CeOptions {
    /// Use every maximal clique when there are at most this many; otherwise
    /// add violated clique inequalities on demand.
    std::size_t full_clique_limit = 4096;
    std::size_t max_rounds = 10'000;
};

struct CeOptimum {
    lp::Status status = lp::Status::infeasible;
    Rational value = 0;
    ProbabilisticModel optimizer;
    std::size_t clique_constraints = 0;
    bool lazy = false;   // constraints were generated on demand
    std::size_t rounds = 0;
};

/// Exact maximum over G intersected with every clique inequality
/// sum_{v in S} p(v) <= 1 of the exclusivity graph.
CeOptimum maximize_over_ce(const LinearFunctional& f, const CeOptions& options = {});

/// A clique of maximum total weight among vertices of positive weight
/// (exact branch and bound); empty when no weight is positive.
std::vector<std::size_t> max_weight_clique(const ExclusivityGraph& g, const RationalVector& weights);

/// Moment matrix indexed by {unit} u V: row/column 0 is the unit, row
/// 1 + v is event v in canonical order.
struct MomentMatrix {
    MarginalScenario scenario;
    sdp::SymMatrix matrix;
};

struct MomentCheck {
    double min_eigenvalue = 0;
    double unit_residual = 0;         // |M_00 - 1|
    double diagonal_residual = 0;     // max |M_0v - M_vv|
    double exclusivity_residual = 0;  // max |M_uv| over exclusive pairs
    double model_residual = 0;        // normalization and no-disturbance on the unit row
    bool valid(double tolerance) const;
};

MomentCheck validate_moment_matrix(const MomentMatrix& m);

/// The unit row of a moment matrix read as a model.
std::vector<double> moment_model(const MomentMatrix& m);

/// The relaxation: M PSD, M_00 = 1, M_0v = M_vv, M_uv = 0 for exclusive
/// u, v, and the model equalities imposed on the unit row.
sdp::SdpProblem q1_problem(const LinearFunctional& f);

struct Q1Optimum {
    double value = 0;
    bool converged = false;
    MomentMatrix certificate;
    sdp::SdpReport report;
};

Q1Optimum maximize_over_q1(const LinearFunctional& f, const sdp::SdpOptions& options = {});

}  // namespace specklab

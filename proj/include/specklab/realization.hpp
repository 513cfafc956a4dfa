#pragma once

#include "specklab/events.hpp"
#include "specklab/sdp.hpp"

#include <string>
#include <vector>

namespace specklab {

/// A density operator and one projector per event (canonical event order).
struct QuantumRealization {
    sdp::HermMatrix state;
    std::vector<sdp::HermMatrix> projectors;
};

struct RealizationReport {
    bool valid = false;
    std::vector<std::string> issues;
    std::vector<double> model;  // p(v) = Re tr(P_v rho)
    double max_residual = 0;
    /// Induced values are normalized per context and satisfy no-disturbance
    /// within the tolerance.
    bool normalized = false;
};

/// Projectivity, sum_{v in context} P_v = 1 for each context, and equality
/// of marginal effects on context overlaps; state PSD with unit trace.
RealizationReport check_quantum_realization(const QuantumRealization& r, const MarginalScenario& s,
                                            double tolerance = 1e-9);

/// As above with completeness relaxed to 1 - sum_{v in context} P_v PSD and
/// exclusive projectors required to be orthogonal. Sub-normalized induced
/// values are reported through `normalized`, not as issues.
RealizationReport check_almost_quantum_realization(const QuantumRealization& r, const MarginalScenario& s,
                                                   double tolerance = 1e-9);

struct JointMeasurabilityReport {
    bool valid = false;
    std::vector<std::string> issues;
    double max_residual = 0;  // largest entrywise deviation of child from marginal
};

/// parent: k^n effects indexed by outcome tuples in lexicographic order;
/// children[i][a]: effect of measurement i + 1 with outcome a. Checks that the
/// parent is a POVM and that every child effect is the corresponding marginal
/// sum of parent effects.
JointMeasurabilityReport check_joint_measurability_simulation(const std::vector<sdp::HermMatrix>& parent,
                                                             const std::vector<std::vector<sdp::HermMatrix>>& children,
                                                             double tolerance = 1e-9);

/// N_{a1,a2} = (1 + ((-1)^a1 sigma_x + (-1)^a2 sigma_z) / sqrt 2) / 4 and the
/// unsharp qubit observables A_1^a = (1 + (-1)^a sigma_x / sqrt 2) / 2,
/// A_2^a = (1 + (-1)^a sigma_z / sqrt 2) / 2 that it simulates.
/// The Pauli matrices are the defaults for x and z.
std::vector<sdp::HermMatrix> unsharp_qubit_parent(const sdp::HermMatrix& x, const sdp::HermMatrix& z);
std::vector<std::vector<sdp::HermMatrix>> unsharp_qubit_children(const sdp::HermMatrix& x, const sdp::HermMatrix& z);
std::vector<sdp::HermMatrix> unsharp_qubit_parent();
std::vector<std::vector<sdp::HermMatrix>> unsharp_qubit_children();

}  // namespace specklab

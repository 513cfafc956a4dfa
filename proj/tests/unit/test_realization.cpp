#include "specklab/errors.hpp"
#include "specklab/realization.hpp"

#include <doctest.h>

#include <cmath>

using namespace specklab;
using sdp::HermMatrix;

namespace {

HermMatrix projector(double a, double b)
{
    // |v><v| for the real unit vector (a, b).
    Eigen::MatrixXcd m(2, 2);
    m << a * a, a * b, a * b, b * b;
    return HermMatrix(m);
}

// Z then X on a qubit, each measured on its own.
QuantumRealization z_and_x(const HermMatrix& state)
{
    const double h = 1 / std::sqrt(2.0);
    return {state, {projector(1, 0), projector(0, 1), projector(h, h), projector(h, -h)}};
}

const MarginalScenario two_singletons{2, 2, {{1}, {2}}};

}  // namespace

TEST_SUITE("realization")
{
    TEST_CASE("Z and X on |0> give the expected model")
    {
        auto r = check_quantum_realization(z_and_x(projector(1, 0)), two_singletons);
        CHECK(r.valid);
        REQUIRE(r.model.size() == 4);
        CHECK(r.model[0] == doctest::Approx(1));
        CHECK(r.model[1] == doctest::Approx(0));
        CHECK(r.model[2] == doctest::Approx(0.5));
        CHECK(r.model[3] == doctest::Approx(0.5));
        CHECK(check_almost_quantum_realization(z_and_x(projector(1, 0)), two_singletons).valid);
    }

    TEST_CASE("defects are reported")
    {
        auto not_projective = z_and_x(projector(1, 0));
        not_projective.projectors[0] = HermMatrix(0.5 * Eigen::MatrixXcd::Identity(2, 2));
        CHECK(!check_quantum_realization(not_projective, two_singletons).valid);

        auto bad_state = z_and_x(HermMatrix::identity(2));
        auto r = check_quantum_realization(bad_state, two_singletons);
        CHECK(!r.valid);

        auto incomplete = z_and_x(projector(1, 0));
        incomplete.projectors[1] = HermMatrix::zero(2);
        CHECK(!check_quantum_realization(incomplete, two_singletons).valid);
        // Sub-normalized contexts are fine for the almost-quantum definition.
        CHECK(check_almost_quantum_realization(incomplete, two_singletons).valid);

        auto overlapping = z_and_x(projector(1, 0));
        overlapping.projectors[1] = overlapping.projectors[0];
        CHECK(!check_almost_quantum_realization(overlapping, two_singletons).valid);

        auto short_list = z_and_x(projector(1, 0));
        short_list.projectors.pop_back();
        CHECK_THROWS_AS(check_quantum_realization(short_list, two_singletons), ParameterError);
    }

    TEST_CASE("context-dependent marginal effects are flagged")
    {
        // Contexts {1,2} and {2,3} on a qubit, measurement 2 realized differently.
        MarginalScenario s{3, 2, {{1, 2}, {2, 3}}};
        const double h = 1 / std::sqrt(2.0);
        auto z0 = projector(1, 0), z1 = projector(0, 1), x0 = projector(h, h), x1 = projector(h, -h);
        auto zero = HermMatrix::zero(2);
        // Context {1,2}: measurement 1 trivial (always 0), measurement 2 = Z.
        // Context {2,3}: measurement 2 = X, measurement 3 trivial.
        QuantumRealization r{projector(1, 0), {z0, z1, zero, zero, x0, zero, x1, zero}};
        auto rep = check_quantum_realization(r, s);
        CHECK(!rep.valid);
        QuantumRealization consistent{projector(1, 0), {z0, z1, zero, zero, z0, zero, z1, zero}};
        CHECK(check_quantum_realization(consistent, s).valid);
    }

    TEST_CASE("unsharp qubit observables are jointly measurable")
    {
        auto parent = unsharp_qubit_parent();
        auto children = unsharp_qubit_children();
        REQUIRE(parent.size() == 4);
        REQUIRE(children.size() == 2);
        // Parent effects are positive and complete.
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(2, 2);
        for (const auto& e : parent) {
            CHECK(sdp::min_eigenvalue(e) >= -1e-12);
            sum += e.matrix();
        }
        CHECK((sum - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);
        auto r = check_joint_measurability_simulation(parent, children);
        CHECK(r.valid);
        CHECK(r.max_residual < 1e-12);
        // Sharp Z children are not the marginals of this parent.
        auto sharp = children;
        sharp[1] = {projector(1, 0), projector(0, 1)};
        CHECK(!check_joint_measurability_simulation(parent, sharp).valid);
    }
}

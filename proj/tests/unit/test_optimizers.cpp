#include "oracles.hpp"

#include "specklab/functional.hpp"
#include "specklab/optimizers.hpp"
#include "specklab/sdp.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace specklab;

namespace {

// CE maximum from an LP written out here with every clique found by
// exhaustive search.
Rational brute_ce_max(const LinearFunctional& f)
{
    auto g = build_exclusivity_graph(f.scenario);
    const std::size_t n = g.vertices.size();
    REQUIRE(n <= 16);
    auto cs = build_model_constraints(f.scenario);
    lp::LinearProgram p;
    p.objective = f.coefficients;
    for (const auto& r : cs.equalities) {
        Rational rhs = -r.constant;
        p.constraints.push_back({r.coefficients, lp::Relation::equal, rhs, r.label});
    }
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        bool clique = true;
        for (std::size_t i = 0; i < n && clique; ++i)
            for (std::size_t j = i + 1; j < n && clique; ++j)
                if ((mask >> i & 1u) && (mask >> j & 1u))
                    clique = oracle::exclusive(g.vertices[i].as_generalized(), g.vertices[j].as_generalized());
        if (!clique || std::popcount(mask) < 2)
            continue;
        RationalVector row(n);
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1u)
                row[i] = 1;
        p.constraints.push_back({row, lp::Relation::less_equal, 1, ""});
    }
    auto s = lp::solve(p);
    REQUIRE(s.status == lp::Status::optimal);
    return s.objective + f.offset;
}

}  // namespace

TEST_SUITE("sdp")
{
    TEST_CASE("packed symmetric storage round trips through Eigen")
    {
        Eigen::MatrixXd m(3, 3);
        m << 1, 2, 3, 2, 5, 6, 3, 6, 9;
        auto s = sdp::SymMatrix::from_eigen(m);
        CHECK(s(0, 2) == 3);
        CHECK(s(2, 0) == 3);
        CHECK((s.to_eigen() - m).norm() == 0);
    }

    TEST_CASE("Hermitian matrices are checked and Pauli matrices have eigenvalues +-1")
    {
        Eigen::MatrixXcd bad(2, 2);
        bad << 1, 1, 0, 1;
        CHECK_THROWS(sdp::HermMatrix(bad));
        CHECK(sdp::min_eigenvalue(sdp::pauli_x()) == doctest::Approx(-1));
        CHECK(sdp::min_eigenvalue(sdp::pauli_z()) == doctest::Approx(-1));
        CHECK(sdp::min_eigenvalue(sdp::HermMatrix::identity(3)) == doctest::Approx(1));
    }

    TEST_CASE("max <C, X> over unit-trace PSD matrices is the top eigenvalue")
    {
        std::mt19937_64 rng(19);
        std::normal_distribution<double> gauss;
        for (int trial = 0; trial < 10; ++trial) {
            const std::size_t n = 2 + rng() % 5;
            Eigen::MatrixXd c(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j <= i; ++j)
                    c(i, j) = c(j, i) = gauss(rng);
            sdp::SdpProblem p;
            p.dimension = n;
            sdp::AffineConstraint trace;
            for (std::size_t i = 0; i < n; ++i) {
                trace.terms.push_back({i, i, 1.0});
                p.objective.push_back({i, i, c(i, i)});
                for (std::size_t j = 0; j < i; ++j)
                    p.objective.push_back({i, j, 2 * c(i, j)});
            }
            trace.rhs = 1;
            p.constraints.push_back(trace);
            auto r = sdp::solve_sdp(p);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
            CHECK(r.report.status == sdp::SdpStatus::converged);
            CHECK(r.objective == doctest::Approx(es.eigenvalues().maxCoeff()).epsilon(1e-5));
            CHECK(sdp::affine_residual(p, r.matrix) < 1e-6);
            CHECK(r.report.min_eigenvalue > -1e-6);
        }
    }

    TEST_CASE("Lovasz theta of the 5-cycle is sqrt 5")
    {
        sdp::SdpProblem p;
        p.dimension = 5;
        sdp::AffineConstraint trace;
        for (std::size_t i = 0; i < 5; ++i) {
            trace.terms.push_back({i, i, 1.0});
            for (std::size_t j = 0; j <= i; ++j)
                p.objective.push_back({i, j, i == j ? 1.0 : 2.0});
            p.constraints.push_back({{{i, (i + 1) % 5, 1.0}}, 0.0, "edge"});
        }
        trace.rhs = 1;
        p.constraints.push_back(trace);
        auto r = sdp::solve_sdp(p);
        CHECK(r.report.status == sdp::SdpStatus::converged);
        CHECK(r.objective == doctest::Approx(std::sqrt(5.0)).epsilon(1e-5));
    }

    TEST_CASE("an infeasible problem does not report convergence")
    {
        sdp::SdpProblem p;
        p.dimension = 2;
        p.constraints.push_back({{{0, 0, 1.0}}, -1.0, "negative diagonal"});
        p.objective.push_back({1, 1, 1.0});
        sdp::SdpOptions o;
        o.max_iterations = 5000;
        auto r = sdp::solve_sdp(p, o);
        CHECK(r.report.status != sdp::SdpStatus::converged);
    }

    TEST_CASE("non-finite input is rejected")
    {
        Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
        m(0, 1) = m(1, 0) = std::nan("");
        CHECK_THROWS(sdp::min_eigenvalue(m));
    }
}

TEST_SUITE("optimizers")
{
    TEST_CASE("general, classical and CE values of the pentagonal functional")
    {
        auto f = pentagonal_functional();
        auto g = maximize_over_general(f);
        REQUIRE(g.status == lp::Status::optimal);
        CHECK(g.value == 6);
        CHECK(evaluate_functional(f, g.optimizer) == 6);
        CHECK(check_model(g.optimizer).empty());
        CHECK(maximize_over_classical(f).value == 2);
        auto ce = maximize_over_ce(f);
        CHECK(ce.value == Rational(10, 3));
        CHECK(!ce.lazy);
    }

    TEST_CASE("CE optimum matches an LP over all cliques found by brute force")
    {
        std::mt19937_64 rng(27);
        auto s = make_n_specker(3);
        for (int trial = 0; trial < 8; ++trial) {
            auto f = random_functional(s, rng);
            CHECK(maximize_over_ce(f).value == brute_ce_max(f));
        }
    }

    TEST_CASE("lazy clique generation agrees with the full clique LP")
    {
        std::mt19937_64 rng(28);
        CeOptions lazy;
        lazy.full_clique_limit = 0;
        for (const auto& s : {make_n_specker(3), make_symmetric_scenario(4, 2, 2)}) {
            for (int trial = 0; trial < 6; ++trial) {
                auto f = random_functional(s, rng);
                auto full = maximize_over_ce(f);
                auto cut = maximize_over_ce(f, lazy);
                CHECK(cut.lazy);
                CHECK(full.value == cut.value);
            }
        }
    }

    TEST_CASE("max weight clique matches exhaustive search")
    {
        std::mt19937_64 rng(29);
        auto g = build_exclusivity_graph(make_n_specker(3));
        const std::size_t n = g.vertices.size();
        for (int trial = 0; trial < 30; ++trial) {
            RationalVector w(n);
            for (auto& x : w)
                x = Rational(static_cast<long>(rng() % 21) - 5, 4);
            Rational best = 0;
            for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
                std::vector<std::size_t> c;
                Rational total = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (mask >> i & 1u) {
                        c.push_back(i);
                        total += w[i];
                    }
                if (total > best && is_clique(g, c))
                    best = total;
            }
            auto c = max_weight_clique(g, w);
            CHECK(is_clique(g, c));
            Rational got = 0;
            for (auto v : c)
                got += w[v];
            CHECK(got == best);
        }
    }

    TEST_CASE("Q1 value of the pentagonal functional and its certificate")
    {
        auto r = maximize_over_q1(pentagonal_functional());
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(2.5).epsilon(1e-4));
        auto check = validate_moment_matrix(r.certificate);
        CHECK(check.valid(1e-6));
        auto model = moment_model(r.certificate);
        CHECK(model.size() == EventSpace(pentagonal_functional().scenario).size());
    }

    TEST_CASE("tampered moment matrices fail validation")
    {
        auto r = maximize_over_q1(pentagonal_functional());
        auto g = build_exclusivity_graph(r.certificate.scenario);
        auto tampered = r.certificate;
        // Put weight on an exclusive pair (indices shifted by the unit row).
        std::size_t u = 0, v = 1;
        while (!g.adjacent(u, v))
            ++v;
        tampered.matrix.set(u + 1, v + 1, 0.25);
        CHECK(validate_moment_matrix(tampered).exclusivity_residual >= 0.25 - 1e-6);
        CHECK(!validate_moment_matrix(tampered).valid(1e-6));

        auto indefinite = r.certificate;
        indefinite.matrix.set(1, 1, -1.0);
        CHECK(!validate_moment_matrix(indefinite).valid(1e-6));
    }

    TEST_CASE("sandwich on random 3-Specker functionals")
    {
        std::mt19937_64 rng(30);
        auto s = make_n_specker(3);
        for (int trial = 0; trial < 8; ++trial) {
            auto f = random_functional(s, rng);
            const double c = to_double(maximize_over_classical(f).value);
            auto q = maximize_over_q1(f);
            const double ce = to_double(maximize_over_ce(f).value);
            const double g = to_double(maximize_over_general(f).value);
            CHECK(q.converged);
            CHECK(c <= q.value + 1e-4);
            CHECK(q.value <= ce + 2e-4);
            CHECK(ce <= g);
        }
    }
}

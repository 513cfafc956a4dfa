#include "oracles.hpp"

#include "specklab/errors.hpp"
#include "specklab/family.hpp"
#include "specklab/polytope.hpp"
#include "specklab/reduced_coordinates.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace specklab;

TEST_SUITE("polytope")
{
    TEST_CASE("affine dimension of simple point sets")
    {
        CHECK(affine_dimension({{0, 0}, {1, 0}, {0, 1}, {1, 1}}) == 2);
        CHECK(affine_dimension({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}) == 1);
        CHECK(affine_dimension({{3, 4}}) == 0);
    }

    TEST_CASE("classical dimension equals the reduced-coordinate dimension")
    {
        // Deterministic models span the whole no-disturbance affine hull.
        for (const auto& s : {make_n_specker(3), make_n_specker(4), make_symmetric_scenario(4, 2, 2),
                              make_symmetric_scenario(3, 2, 3)}) {
            std::vector<RationalVector> pts;
            for (const auto& v : enumerate_deterministic_models(s))
                pts.push_back(v.values);
            CHECK(affine_dimension(pts) == ReducedCoordinates(s).dimension());
        }
    }

    TEST_CASE("cyclic polytope facet counts")
    {
        // Polygons and the classic C(4, 6) with 9 facets.
        for (unsigned long N = 3; N < 12; ++N)
            CHECK(cyclic_facet_count(2, N) == static_cast<long>(N));
        CHECK(cyclic_facet_count(4, 6) == 9);
        CHECK(cyclic_facet_count(4, 7) == 14);
        for (unsigned long d = 2; d <= 12; d += 2)
            for (unsigned long N = d + 1; N <= d + 8; ++N) {
                const unsigned long m = d / 2;
                CHECK(cyclic_facet_count(d, N) * Integer(N - m) == Integer(N) * binomial(N - m, m));
            }
        CHECK_THROWS_AS(cyclic_facet_count(3, 6), ParameterError);
        CHECK_THROWS_AS(cyclic_facet_count(4, 4), ParameterError);
    }

    TEST_CASE("relabelling preserves values on relabelled deterministic models")
    {
        std::mt19937_64 rng(6);
        auto s = make_symmetric_scenario(4, 2, 2);
        auto models = enumerate_deterministic_models(s);
        auto assignments = enumerate_assignments(s);
        for (int trial = 0; trial < 10; ++trial) {
            auto f = random_functional(s, rng);
            std::vector<int> perm{1, 2, 3, 4}, shift(4);
            std::shuffle(perm.begin(), perm.end(), rng);
            for (auto& x : shift)
                x = static_cast<int>(rng() % 2);
            auto g = relabel_functional(f, perm, shift);
            for (std::size_t i = 0; i < models.size(); ++i) {
                // Measurement m with outcome a becomes measurement perm[m] with a + shift[m].
                std::vector<int> b(4);
                for (int m = 0; m < 4; ++m)
                    b[perm[m] - 1] = (assignments[i].assignment[m] + shift[m]) % 2;
                auto mapped = deterministic_model(s, DeterministicModel{b});
                CHECK(evaluate_functional(g, mapped) == evaluate_functional(f, models[i]));
            }
        }
    }

    TEST_CASE("classification of known inequalities")
    {
        auto s = make_symmetric_scenario(4, 2, 2);
        auto pent = pentagonal_functional();
        // 2 - I_pent >= 0 is the facet form.
        auto facet = pent;
        for (auto& c : facet.coefficients)
            c = -c;
        facet.offset = 2 - pent.offset;
        CHECK(classify_inequality(facet) == FacetClass::pentagonal);

        // 1 - sum over a clique; cliques covering a whole context give the
        // zero form, which is not an inequality at all.
        auto g = build_exclusivity_graph(s);
        auto vertices = enumerate_deterministic_models(s);
        auto clique_form = [&](const std::vector<std::size_t>& c) {
            auto f = event_sum_functional(s, c);
            for (auto& x : f.coefficients)
                x = -x;
            f.offset = 1;
            return f;
        };
        auto trivial = [&](const LinearFunctional& f) {
            return std::all_of(vertices.begin(), vertices.end(),
                               [&](const auto& v) { return evaluate_functional(f, v) == 0; });
        };
        std::vector<LinearFunctional> proper;
        int zero_forms = 0;
        for (const auto& c : enumerate_maximal_cliques(g)) {
            auto f = clique_form(c);
            if (trivial(f)) {
                ++zero_forms;
                CHECK(classify_inequality(f) == FacetClass::other);
                continue;
            }
            std::vector<std::size_t> found;
            CHECK(classify_inequality(f, &found) == FacetClass::ce);
            CHECK(is_clique(g, found));
            proper.push_back(f);
        }
        CHECK(zero_forms > 0);
        REQUIRE(proper.size() >= 2);

        // The sum of two different clique inequalities is neither.
        auto sum = proper.front();
        for (std::size_t v = 0; v < sum.coefficients.size(); ++v)
            sum.coefficients[v] += proper.back().coefficients[v];
        sum.offset = 2;
        CHECK(classify_inequality(sum) == FacetClass::other);
    }

    TEST_CASE("pentagonal orbit has no duplicates")
    {
        auto orbit = pentagonal_orbit();
        std::set<std::vector<Integer>> distinct(orbit.begin(), orbit.end());
        CHECK(distinct.size() == orbit.size());
        CHECK(orbit.size() > 1);
    }

    TEST_CASE("saturation data of a facet and of a non-facet")
    {
        auto s = make_n_specker(3);
        auto vertices = enumerate_deterministic_models(s);
        auto spec = generate_family(3).front();
        auto r = saturation_count(expand_inequality(spec), vertices, 6);
        CHECK(r.valid);
        CHECK(r.saturating.size() == 6);
        CHECK(r.is_facet);

        auto weak = expand_inequality(spec);
        weak.offset += 1;
        auto w = saturation_count(weak, vertices, 6);
        CHECK(w.valid);
        CHECK(w.saturating.empty());
        CHECK(!w.is_facet);
    }

    TEST_CASE("facets of the 3-Specker polytope are the family, all CE")
    {
        auto s = make_n_specker(3);
        auto facets = enumerate_classical_facets(s);
        REQUIRE(facets.size() == 16);
        ReducedCoordinates rc(s);
        std::set<std::vector<Integer>> family, got;
        for (const auto& spec : generate_family(3))
            family.insert(rc.canonical_form(expand_inequality(spec)));
        for (const auto& f : facets) {
            CHECK(f.is_facet);
            CHECK(f.classification == FacetClass::ce);
            got.insert(f.canonical);
        }
        CHECK(got == family);
    }

    TEST_CASE("(4,2) facets: 40 CE and 16 pentagonal")
    {
        auto facets = enumerate_classical_facets(make_symmetric_scenario(4, 2, 2));
        std::map<FacetClass, int> count;
        for (const auto& f : facets)
            ++count[f.classification];
        CHECK(facets.size() == 56);
        CHECK(count[FacetClass::ce] == 40);
        CHECK(count[FacetClass::pentagonal] == 16);
        CHECK(count[FacetClass::other] == 0);
    }

    TEST_CASE("collapse checks")
    {
        ExactCollapseOptions opts;
        opts.q1_checks = 2;
        auto r = check_theorem_collapse(3, opts);
        CHECK(r.passed());
        CHECK(r.ce_vertices == 8);
        CHECK(r.facets == 16);
        CHECK(r.q1_checked == 2);

        CollapseOptions c;
        c.run_q1 = false;
        auto rep = random_functional_collapse_check(3, 10, 5, c);
        CHECK(rep.trials.size() == 10);
        CHECK(rep.all_collapsed());

        // On the (4,2) scenario the pentagonal probe separates CE from C.
        auto gap = random_functional_collapse_check(make_symmetric_scenario(4, 2, 2), 0, 5, {pentagonal_functional()}, c);
        CHECK(gap.gaps() == 1);
    }
}

#include "oracles.hpp"

#include "specklab/family.hpp"
#include "specklab/lp.hpp"
#include "specklab/model_space.hpp"
#include "specklab/vertex_enumeration.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace specklab;
using namespace specklab::lp;

namespace {

// Check a Farkas certificate for an infeasible LP whose variables are all >= 0.
void check_farkas(const LinearProgram& prog, const Solution& sol)
{
    REQUIRE(sol.farkas.size() == prog.constraints.size());
    Rational rhs = 0;
    RationalVector col(prog.variables());
    for (std::size_t i = 0; i < prog.constraints.size(); ++i) {
        const auto& c = prog.constraints[i];
        const auto& y = sol.farkas[i];
        if (c.relation == Relation::less_equal)
            CHECK(y >= 0);
        if (c.relation == Relation::greater_equal)
            CHECK(y <= 0);
        rhs += y * c.rhs;
        for (std::size_t j = 0; j < col.size(); ++j)
            col[j] += y * c.coefficients[j];
    }
    for (const auto& x : col)
        CHECK(x >= 0);
    CHECK(rhs < 0);
}

// Brute-force LP oracle for two variables: evaluate at every pairwise
// intersection of constraint lines (bounds included) that is feasible.
std::optional<Rational> brute_max_2d(const LinearProgram& prog)
{
    std::vector<std::pair<RationalVector, Rational>> lines;
    for (const auto& c : prog.constraints)
        lines.push_back({c.coefficients, c.rhs});
    lines.push_back({{1, 0}, 0});
    lines.push_back({{0, 1}, 0});
    auto feasible = [&](const RationalVector& x) {
        if (x[0] < 0 || x[1] < 0)
            return false;
        for (const auto& c : prog.constraints) {
            Rational v = dot(c.coefficients, x);
            if (c.relation == Relation::less_equal && v > c.rhs)
                return false;
            if (c.relation == Relation::greater_equal && v < c.rhs)
                return false;
            if (c.relation == Relation::equal && v != c.rhs)
                return false;
        }
        return true;
    };
    std::optional<Rational> best;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const auto& [a, b] = lines[i];
            const auto& [c, d] = lines[j];
            Rational det = a[0] * c[1] - a[1] * c[0];
            if (det == 0)
                continue;
            RationalVector x{(b * c[1] - a[1] * d) / det, (a[0] * d - b * c[0]) / det};
            if (!feasible(x))
                continue;
            Rational v = dot(prog.objective, x);
            if (!best || v > *best)
                best = v;
        }
    return best;
}

}  // namespace

TEST_SUITE("lp")
{
    TEST_CASE("textbook maximization")
    {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
        LinearProgram p;
        p.objective = {3, 5};
        p.constraints = {{{1, 0}, Relation::less_equal, 4, "a"},
                         {{0, 2}, Relation::less_equal, 12, "b"},
                         {{3, 2}, Relation::less_equal, 18, "c"}};
        auto s = solve(p);
        REQUIRE(s.status == Status::optimal);
        CHECK(s.objective == 36);
        CHECK(s.primal == RationalVector{2, 6});
        // Strong duality with the reported multipliers.
        Rational dual_obj = 0;
        for (std::size_t i = 0; i < p.constraints.size(); ++i) {
            CHECK(s.dual[i] >= 0);
            dual_obj += s.dual[i] * p.constraints[i].rhs;
        }
        CHECK(dual_obj == 36);
    }

    TEST_CASE("exact fractional optimum")
    {
        LinearProgram p;
        p.sense = Sense::minimize;
        p.objective = {1, 1};
        p.constraints = {{{3, 1}, Relation::greater_equal, 1, ""}, {{1, 3}, Relation::greater_equal, 1, ""}};
        auto s = solve(p);
        REQUIRE(s.status == Status::optimal);
        CHECK(s.objective == Rational(1, 2));
    }

    TEST_CASE("infeasible programs carry a valid Farkas certificate")
    {
        LinearProgram p;
        p.objective = {1, 1};
        p.constraints = {{{1, 1}, Relation::less_equal, 1, ""}, {{1, 0}, Relation::greater_equal, 2, ""}};
        auto s = solve(p);
        CHECK(s.status == Status::infeasible);
        check_farkas(p, s);

        LinearProgram q;
        q.objective = {0};
        q.constraints = {{{1}, Relation::equal, -1, ""}};
        auto t = solve(q);
        CHECK(t.status == Status::infeasible);
        check_farkas(q, t);
    }

    TEST_CASE("unbounded program is reported")
    {
        LinearProgram p;
        p.objective = {1, 0};
        p.constraints = {{{-1, 1}, Relation::less_equal, 1, ""}};
        CHECK(solve(p).status == Status::unbounded);
    }

    TEST_CASE("free variables and upper bounds")
    {
        LinearProgram p;
        p.sense = Sense::minimize;
        p.objective = {1, 0};
        p.constraints = {{{1, 1}, Relation::equal, 0, ""}};
        p.bounds = {Bounds{std::nullopt, std::nullopt}, Bounds{Rational(0), Rational(5)}};
        auto s = solve(p);
        REQUIRE(s.status == Status::optimal);
        CHECK(s.objective == -5);
    }

    TEST_CASE("degenerate cycling example terminates")
    {
        // Beale's example cycles under plain Dantzig pricing with naive ties.
        LinearProgram p;
        p.objective = {Rational(3, 4), -150, Rational(1, 50), -6};
        p.constraints = {{{Rational(1, 4), -60, Rational(-1, 25), 9}, Relation::less_equal, 0, ""},
                         {{Rational(1, 2), -90, Rational(-1, 50), 3}, Relation::less_equal, 0, ""},
                         {{0, 0, 1, 0}, Relation::less_equal, 1, ""}};
        Options o;
        o.degenerate_run = 1;
        auto s = solve(p, o);
        REQUIRE(s.status == Status::optimal);
        CHECK(s.objective == Rational(1, 20));
    }

    TEST_CASE("random two-variable programs agree with the vertex oracle")
    {
        std::mt19937_64 rng(101);
        int optimal = 0;
        for (int trial = 0; trial < 300; ++trial) {
            LinearProgram p;
            p.objective = {static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 11) - 5};
            const int m = 1 + static_cast<int>(rng() % 4);
            for (int i = 0; i < m; ++i) {
                Constraint c;
                c.coefficients = {static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 9) - 4};
                c.rhs = static_cast<long>(rng() % 13) - 3;
                c.relation = static_cast<Relation>(rng() % 3 == 0 ? 2 : 0);
                p.constraints.push_back(c);
            }
            // Keep the region bounded.
            p.constraints.push_back({{1, 1}, Relation::less_equal, 10, "box"});
            auto s = solve(p);
            auto brute = brute_max_2d(p);
            if (!brute) {
                CHECK(s.status == Status::infeasible);
                if (s.status == Status::infeasible)
                    check_farkas(p, s);
                continue;
            }
            REQUIRE(s.status == Status::optimal);
            CHECK(s.objective == *brute);
            Rational dual_obj = 0;
            for (std::size_t i = 0; i < p.constraints.size(); ++i)
                dual_obj += s.dual[i] * p.constraints[i].rhs;
            CHECK(dual_obj == s.objective);
            ++optimal;
        }
        CHECK(optimal > 100);
    }
}

TEST_SUITE("vertex_enumeration")
{
    TEST_CASE("unit square")
    {
        ConstraintSystem cs;
        cs.dimension = 2;
        cs.inequalities = {{{1, 0}, 0, ""}, {{0, 1}, 0, ""}, {{-1, 0}, 1, ""}, {{0, -1}, 1, ""}};
        auto v = enumerate_polytope_vertices(cs);
        std::set<RationalVector> got(v.begin(), v.end());
        CHECK(got == std::set<RationalVector>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    }

    TEST_CASE("standard simplex through an equality")
    {
        for (std::size_t d = 2; d <= 6; ++d) {
            ConstraintSystem cs;
            cs.dimension = d;
            cs.equalities.push_back({RationalVector(d, Rational(1)), -1, "sum"});
            for (std::size_t i = 0; i < d; ++i) {
                RationalVector e(d);
                e[i] = 1;
                cs.inequalities.push_back({e, 0, ""});
            }
            auto v = enumerate_polytope_vertices(cs);
            CHECK(v.size() == d);
            for (const auto& x : v) {
                int ones = 0;
                for (const auto& c : x)
                    ones += c == 1;
                CHECK(ones == 1);
            }
        }
    }

    TEST_CASE("the 3-Specker classical polytope from its I_3 facets has the deterministic vertices")
    {
        auto s = make_n_specker(3);
        auto cs = build_model_constraints(s);
        cs.inequalities.clear();
        for (const auto& spec : generate_family(3)) {
            auto f = expand_inequality(spec);
            cs.inequalities.push_back({f.coefficients, f.offset, "I_3"});
        }
        auto v = enumerate_polytope_vertices(cs);
        std::set<RationalVector> got(v.begin(), v.end()), want;
        for (const auto& d : enumerate_deterministic_models(s))
            want.insert(d.values);
        CHECK(got.size() == 8);
        CHECK(got == want);
    }

    TEST_CASE("empty and unbounded polyhedra")
    {
        ConstraintSystem empty;
        empty.dimension = 1;
        empty.inequalities = {{{1}, -2, ""}, {{-1}, 1, ""}};  // x >= 2, x <= 1
        CHECK(enumerate_polytope_vertices(empty).empty());

        ConstraintSystem ray;
        ray.dimension = 2;
        ray.inequalities = {{{1, 0}, 0, ""}, {{0, 1}, 0, ""}};
        CHECK_THROWS(enumerate_polytope_vertices(ray));
    }

    TEST_CASE("hull facets of random point sets are valid and tight")
    {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 25; ++trial) {
            const std::size_t d = 2 + rng() % 2;
            std::vector<RationalVector> pts;
            // A simplex guarantees full dimension.
            pts.push_back(RationalVector(d));
            for (std::size_t i = 0; i < d; ++i) {
                RationalVector e(d);
                e[i] = 10;
                pts.push_back(e);
            }
            for (int k = 0; k < 6; ++k) {
                RationalVector p(d);
                for (auto& x : p)
                    x = static_cast<long>(rng() % 21) - 5;
                pts.push_back(p);
            }
            auto facets = convex_hull_facets(pts);
            CHECK(facets.size() >= d + 1);
            for (const auto& f : facets) {
                std::vector<RationalVector> tight;
                for (const auto& p : pts) {
                    Rational v = Rational(f[d]);
                    for (std::size_t i = 0; i < d; ++i)
                        v += Rational(f[i]) * p[i];
                    CHECK(v >= 0);
                    if (v == 0)
                        tight.push_back(p);
                }
                // A facet is spanned by d affinely independent points.
                RationalMatrix diff;
                for (std::size_t i = 1; i < tight.size(); ++i) {
                    RationalVector r(d);
                    for (std::size_t k = 0; k < d; ++k)
                        r[k] = tight[i][k] - tight[0][k];
                    diff.push_back(r);
                }
                CHECK(rank(diff) == d - 1);
            }
        }
    }

    TEST_CASE("ray bound is enforced")
    {
        ConstraintSystem cs;
        cs.dimension = 4;
        for (std::size_t i = 0; i < 4; ++i) {
            RationalVector e(4), f(4);
            e[i] = 1;
            f[i] = -1;
            cs.inequalities.push_back({e, 0, ""});
            cs.inequalities.push_back({f, 1, ""});
        }
        EnumerationOptions o;
        o.max_rays = 4;
        CHECK_THROWS(enumerate_polytope_vertices(cs, o));
        CHECK(enumerate_polytope_vertices(cs).size() == 16);
    }
}

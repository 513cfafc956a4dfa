#include "specklab/repro.hpp"

#include "specklab/json_io.hpp"
#include "specklab/parallel.hpp"
#include "specklab/polytope.hpp"
#include "specklab/realization.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace specklab {

namespace {

struct Outcome {
    std::string computed;
    std::string status;
};

Outcome verdict(std::string computed, bool ok)
{
    return {std::move(computed), ok ? "pass" : "fail"};
}

std::string number(double x)
{
    std::ostringstream out;
    out.precision(10);
    out << x;
    return out.str();
}

LinearFunctional triangle_anticorrelation()
{
    auto s = make_n_specker(3);
    EventSpace space(s);
    std::vector<std::size_t> clique;
    for (const auto& g : {GeneralizedEvent{{1, 2}, {0, 1}}, GeneralizedEvent{{2, 3}, {0, 1}},
                          GeneralizedEvent{{1, 3}, {1, 0}}})
        clique.push_back(space.refinement(g).front());
    return event_sum_functional(s, clique);
}

}  // namespace

bool ReproReport::all_passed() const
{
    return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.passed(); });
}

std::filesystem::path default_data_dir()
{
    return SPECKLAB_DATA_DIR;
}

ReproReport reproduce_paper(const ReproOptions& options)
{
    ReproReport report;
    auto run = [&](std::string name, std::string expected, double tolerance, const std::function<Outcome()>& body) {
        const auto start = std::chrono::steady_clock::now();
        ReproRecord rec{std::move(name), std::move(expected), "", tolerance, "fail", 0};
        try {
            auto out = body();
            rec.computed = std::move(out.computed);
            rec.status = std::move(out.status);
        } catch (const std::exception& e) {
            rec.computed = std::string("error: ") + e.what();
            rec.status = "fail";
        }
        rec.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.records.push_back(std::move(rec));
    };

    auto expression = pentagonal_expression();
    if (options.tamper_pentagonal)
        expression.singles[4] = -expression.singles[4];
    auto pentagonal = correlators_to_functional(expression, make_symmetric_scenario(4, 2, 2));
    sdp::SdpOptions sdp_options;
    sdp_options.tolerance = options.sdp_tolerance;
    sdp_options.max_iterations = options.sdp_max_iterations;

    if (!options.data_dir.empty()) {
        run("pentagonal fixture matches the built-in expression", "equal", 0, [&] {
            auto f = io::functional_from_json(io::read_json_file(options.data_dir / "pentagonal.json"));
            f.bound.reset();
            auto builtin = pentagonal_functional();
            builtin.bound.reset();
            return verdict(f == builtin ? "equal" : "different", f == builtin);
        });
    }

    run("pentagonal maximum over general models", "6", 0, [&] {
        auto r = maximize_over_general(pentagonal);
        return verdict(to_string(r.value), r.status == lp::Status::optimal && r.value == 6);
    });
    run("pentagonal classical bound", "2", 0, [&] {
        auto r = maximize_over_classical(pentagonal);
        return verdict(to_string(r.value), r.value == 2);
    });
    run("pentagonal almost-quantum value", "2.5", 1e-3, [&]() -> Outcome {
        auto r = maximize_over_q1(pentagonal, sdp_options);
        if (!r.converged)
            return {number(r.value) + " (" + sdp::to_string(r.report.status) + " after "
                        + std::to_string(r.report.iterations) + " iterations)",
                    "nonconvergence"};
        auto check = validate_moment_matrix(r.certificate);
        return verdict(number(r.value), std::abs(r.value - 2.5) <= 1e-3 && check.valid(1e-6));
    });
    run("pentagonal maximum over CE models (recorded)", ">= 2.5", 0, [&] {
        auto r = maximize_over_ce(pentagonal);
        return verdict(to_string(r.value), r.status == lp::Status::optimal && r.value >= Rational(5, 2));
    });

    run("sandwich C <= Q1 <= CE <= G on I_pent and random functionals", "0 violations", 0, [&] {
        const auto s = make_symmetric_scenario(4, 2, 2);
        std::mt19937_64 rng(options.seed);
        std::vector<LinearFunctional> fs{pentagonal};
        for (std::size_t i = 0; i < options.random_functionals; ++i)
            fs.push_back(random_functional(s, rng));
        std::vector<int> bad(fs.size(), 0);
        parallel_for(fs.size(), [&](std::size_t i) {
            const double c = maximize_over_classical(fs[i]).value.get_d();
            const auto q = maximize_over_q1(fs[i], sdp_options);
            const double ce = maximize_over_ce(fs[i]).value.get_d();
            const double g = maximize_over_general(fs[i]).value.get_d();
            bad[i] = !q.converged || c > q.value + 1e-4 || q.value > ce + 2e-4 || ce > g + 2e-4;
        });
        const auto violations = std::count(bad.begin(), bad.end(), 1);
        return verdict(std::to_string(violations) + " violations", violations == 0);
    });

    run("family sizes |I_n| for n = 2..6", "4 16 64 256 1024", 0, [&] {
        std::string computed;
        for (int n = 2; n <= 6; ++n)
            computed += (n > 2 ? " " : "") + std::to_string(generate_family(n).size());
        return verdict(computed, computed == "4 16 64 256 1024");
    });
    run("CE certificates for every I_n, n = 3, 4, 5", "16/16 64/64 256/256", 0, [&] {
        std::string computed;
        bool ok = true;
        for (int n = 3; n <= 5; ++n) {
            auto r = verify_family_is_ce(n);
            computed += (n > 3 ? " " : "") + std::to_string(r.passed()) + "/" + std::to_string(r.certificates.size());
            ok = ok && r.all_passed();
        }
        return verdict(computed, ok && computed == "16/16 64/64 256/256");
    });
    run("dimension of the classical polytope, n = 3, 4", "6 14", 0, [&] {
        std::string computed;
        for (int n = 3; n <= 4; ++n) {
            std::vector<RationalVector> points;
            for (const auto& d : enumerate_deterministic_models(make_n_specker(n)))
                points.push_back(d.values);
            computed += (n > 3 ? " " : "") + std::to_string(affine_dimension(points));
        }
        return verdict(computed, computed == "6 14");
    });
    run("I_n saturation counts, n = 3, 4", "6 14, distinct", 0, [&] {
        std::string computed;
        bool ok = true;
        for (int n = 3; n <= 4; ++n) {
            const auto s = make_n_specker(n);
            const auto vertices = enumerate_deterministic_models(s);
            std::set<std::size_t> counts;
            std::set<std::vector<std::size_t>> sets;
            const auto specs = generate_family(n);
            for (const auto& spec : specs) {
                auto r = saturation_count(expand_inequality(spec), vertices, (1U << n) - 2);
                counts.insert(r.saturating.size());
                sets.insert(r.saturating);
                ok = ok && r.is_facet;
            }
            ok = ok && counts.size() == 1 && *counts.begin() == (1U << n) - 2 && sets.size() == specs.size();
            computed += (n > 3 ? " " : "") + std::to_string(counts.size() == 1 ? *counts.begin() : 0);
        }
        return verdict(computed + (ok ? ", distinct" : ""), ok);
    });
    run("CE polytope collapses to C, n = 3, 4", "8 vertices 16 facets; 16 vertices 64 facets", 0, [&] {
        std::string computed;
        bool ok = true;
        for (int n = 3; n <= 4; ++n) {
            auto r = check_theorem_collapse(n);
            computed += (n > 3 ? "; " : "") + std::to_string(r.ce_vertices) + " vertices " + std::to_string(r.facets)
                        + " facets";
            ok = ok && r.passed();
        }
        return verdict(computed, ok && computed == "8 vertices 16 facets; 16 vertices 64 facets");
    });
    run("cyclic polytope facet count identity, n = 2..8", "all equal 2^(2n-2)", 0, [&] {
        bool ok = true;
        for (unsigned long n = 2; n <= 8; ++n)
            ok = ok && cyclic_facet_count((1UL << n) - 2, 1UL << n) == Integer(1) << (2 * n - 2);
        return verdict(ok ? "all equal 2^(2n-2)" : "mismatch", ok);
    });
    run("unsharp qubit observables simulated by one POVM", "residual < 1e-12", 1e-12, [&] {
        auto r = check_joint_measurability_simulation(unsharp_qubit_parent(), unsharp_qubit_children(), 1e-12);
        return verdict("residual " + number(r.max_residual), r.valid && r.max_residual < 1e-12);
    });
    run("triangle anti-correlation: general vs CE maximum", "3/2 vs 1", 0, [&] {
        auto f = triangle_anticorrelation();
        auto g = maximize_over_general(f);
        auto ce = maximize_over_ce(f);
        return verdict(to_string(g.value) + " vs " + to_string(ce.value), g.value == Rational(3, 2) && ce.value == 1);
    });
    run("(4,2) facets are CE or pentagonal", "0 other", 0, [&] {
        auto facets = enumerate_classical_facets(make_symmetric_scenario(4, 2, 2));
        std::size_t ce = 0, pent = 0, other = 0;
        for (const auto& f : facets) {
            if (f.classification == FacetClass::ce)
                ++ce;
            else if (f.classification == FacetClass::pentagonal)
                ++pent;
            else
                ++other;
        }
        return verdict(std::to_string(ce) + " CE, " + std::to_string(pent) + " pentagonal, " + std::to_string(other)
                           + " other",
                       other == 0 && pent > 0);
    });
    return report;
}

}  // namespace specklab

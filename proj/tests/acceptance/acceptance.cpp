// Acceptance checklist. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Tolerances are pinned here on purpose.

#include "specklab/events.hpp"
#include "specklab/family.hpp"
#include "specklab/functional.hpp"
#include "specklab/model_space.hpp"
#include "specklab/optimizers.hpp"
#include "specklab/polytope.hpp"
#include "specklab/realization.hpp"
#include "specklab/vertex_enumeration.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace specklab;

namespace {

constexpr double kQ1ValueTol = 1e-3;
constexpr double kCertificateTol = 1e-6;
constexpr double kSandwichQ1 = 1e-4;
constexpr double kSandwichCe = 2e-4;
constexpr double kOperatorTol = 1e-12;

struct Verdict {
    bool ok = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_seconds, const std::function<Verdict()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget_seconds) {
        v.ok = false;
        v.detail += " (over time budget)";
    }
    failures += !v.ok;
    std::printf("%s  %2d  %-58s %s [%.2fs / %gs]\n", v.ok ? "PASS" : "FAIL", id, title, v.detail.c_str(), secs,
                budget_seconds);
    std::fflush(stdout);
}

std::string str(double x)
{
    std::ostringstream out;
    out.precision(10);
    out << x;
    return out.str();
}

std::vector<ProbabilisticModel> deterministic(int n)
{
    return enumerate_deterministic_models(make_n_specker(n));
}

}  // namespace

int main()
{
    const auto pent = pentagonal_functional();

    criterion(1, "pentagonal maximum over general models is exactly 6", 1, [&] {
        auto r = maximize_over_general(pent);
        return Verdict{r.status == lp::Status::optimal && r.value == 6 && check_model(r.optimizer).empty(),
                       "value " + to_string(r.value)};
    });

    criterion(2, "pentagonal classical bound is exactly 2", 0.1, [&] {
        auto r = maximize_over_classical(pent);
        // Re-evaluate on every deterministic model independently of the optimizer.
        Rational best = -1000;
        std::size_t count = 0;
        for (const auto& v : enumerate_deterministic_models(pent.scenario)) {
            best = std::max(best, evaluate_functional(pent, v));
            ++count;
        }
        return Verdict{r.value == 2 && best == 2 && count == 16,
                       "value " + to_string(r.value) + " over " + std::to_string(count) + " models"};
    });

    criterion(3, "pentagonal almost-quantum value 2.5 with valid certificate", 60, [&] {
        auto r = maximize_over_q1(pent);
        auto check = validate_moment_matrix(r.certificate);
        const bool ok = r.converged && std::abs(r.value - 2.5) <= kQ1ValueTol
                        && check.min_eigenvalue >= -kCertificateTol && check.exclusivity_residual <= kCertificateTol
                        && check.valid(kCertificateTol);
        return Verdict{ok, "value " + str(r.value) + ", min eig " + str(check.min_eigenvalue) + ", exclusivity "
                               + str(check.exclusivity_residual)};
    });

    criterion(4, "sandwich C <= Q1 <= CE <= G on I_pent and 50 random functionals", 600, [&] {
        auto s = make_symmetric_scenario(4, 2, 2);
        std::vector<LinearFunctional> fs{pent};
        std::mt19937_64 rng(7);
        for (int i = 0; i < 50; ++i)
            fs.push_back(random_functional(s, rng));
        int bad = 0, unconverged = 0;
        for (const auto& f : fs) {
            const double c = to_double(maximize_over_classical(f).value);
            auto q = maximize_over_q1(f);
            const double ce = to_double(maximize_over_ce(f).value);
            const double g = to_double(maximize_over_general(f).value);
            unconverged += !q.converged;
            if (!(c <= q.value + kSandwichQ1 && q.value <= ce + kSandwichCe && ce <= g + kSandwichCe))
                ++bad;
        }
        return Verdict{bad == 0 && unconverged == 0, std::to_string(fs.size()) + " functionals, "
                                                         + std::to_string(bad) + " violations, "
                                                         + std::to_string(unconverged) + " unconverged"};
    });

    criterion(5, "family sizes |I_n| = 2^(2n-2), n = 2..6", 10, [&] {
        std::string detail;
        bool ok = true;
        for (int n = 2; n <= 6; ++n) {
            auto family = generate_family(n);
            std::set<InequalitySpec> distinct(family.begin(), family.end());
            ok = ok && family.size() == (std::size_t{1} << (2 * n - 2)) && distinct.size() == family.size();
            detail += std::to_string(family.size()) + " ";
        }
        return Verdict{ok, detail};
    });

    criterion(6, "every I_n is CE with a clique certificate, n = 3, 4, 5", 120, [&] {
        std::string detail;
        bool ok = true;
        for (int n = 3; n <= 5; ++n) {
            auto report = verify_family_is_ce(n);
            auto g = build_exclusivity_graph(make_n_specker(n));
            std::size_t cliques = 0;
            for (const auto& c : report.certificates) {
                // Independent pairwise check of the refined events.
                bool clique = !c.refined_events.empty();
                for (std::size_t i = 0; i < c.refined_events.size() && clique; ++i)
                    for (std::size_t j = i + 1; j < c.refined_events.size() && clique; ++j)
                        clique = are_exclusive(g.vertices[c.refined_events[i]], g.vertices[c.refined_events[j]]);
                cliques += clique && c.identity_holds;
            }
            ok = ok && report.all_passed() && cliques == report.certificates.size()
                 && report.certificates.size() == (std::size_t{1} << (2 * n - 2));
            detail += std::to_string(cliques) + "/" + std::to_string(report.certificates.size()) + " ";
        }
        return Verdict{ok, detail};
    });

    criterion(7, "classical polytope dimension 6 (n=3) and 14 (n=4)", 5, [&] {
        std::size_t d[2];
        for (int n = 3; n <= 4; ++n) {
            std::vector<RationalVector> pts;
            for (const auto& v : deterministic(n))
                pts.push_back(v.values);
            d[n - 3] = affine_dimension(pts);
        }
        return Verdict{d[0] == 6 && d[1] == 14, std::to_string(d[0]) + " " + std::to_string(d[1])};
    });

    criterion(8, "each I_n saturated by 2^n - 2 vertices, sets distinct", 5, [&] {
        bool ok = true;
        std::string detail;
        for (int n = 3; n <= 4; ++n) {
            auto vertices = deterministic(n);
            std::set<std::vector<std::size_t>> seen;
            std::size_t good = 0;
            for (const auto& spec : generate_family(n)) {
                auto f = expand_inequality(spec);
                std::vector<std::size_t> tight;
                bool valid = true;
                for (std::size_t i = 0; i < vertices.size(); ++i) {
                    auto v = evaluate_functional(f, vertices[i]);
                    valid = valid && v >= 0;
                    if (v == 0)
                        tight.push_back(i);
                }
                good += valid && tight.size() == (std::size_t{1} << n) - 2;
                seen.insert(tight);
            }
            const std::size_t total = std::size_t{1} << (2 * n - 2);
            ok = ok && good == total && seen.size() == total;
            detail += "n=" + std::to_string(n) + ": " + std::to_string(good) + "/" + std::to_string(total) + " ";
        }
        return Verdict{ok, detail};
    });

    criterion(9, "CE polytope equals C: vertices and facets, n = 3, 4", 300, [&] {
        bool ok = true;
        std::string detail;
        for (int n = 3; n <= 4; ++n) {
            auto s = make_n_specker(n);
            auto ce_vertices = lp::enumerate_polytope_vertices(ce_constraint_system(s));
            std::set<RationalVector> want, got(ce_vertices.begin(), ce_vertices.end());
            for (const auto& v : deterministic(n))
                want.insert(v.values);
            auto r = check_theorem_collapse(n);
            ok = ok && got == want && r.passed() && r.facets == (std::size_t{1} << (2 * n - 2));
            detail += "n=" + std::to_string(n) + ": " + std::to_string(got.size()) + " vertices, "
                      + std::to_string(r.facets) + " facets; ";
        }
        return Verdict{ok, detail};
    });

    criterion(10, "cyclic polytope facet count equals 2^(2n-2), n = 2..8", 1, [&] {
        bool ok = true;
        for (unsigned long n = 2; n <= 8; ++n) {
            const unsigned long N = 1UL << n, d = N - 2, m = d / 2;
            // Even dimension: f = N / (N - m) * C(N - m, m).
            Integer gale = Integer(N) * binomial(N - m, m) / Integer(N - m);
            Integer got = cyclic_facet_count(d, N);
            ok = ok && got == gale && got == Integer(1) << (2 * n - 2);
        }
        return Verdict{ok, ok ? "all equal" : "mismatch"};
    });

    criterion(11, "unsharp qubit pair simulated by one four-outcome POVM", 1, [&] {
        auto r = check_joint_measurability_simulation(unsharp_qubit_parent(), unsharp_qubit_children(), kOperatorTol);
        return Verdict{r.valid && r.max_residual < kOperatorTol, "residual " + str(r.max_residual)};
    });

    criterion(12, "triangle anti-correlation clique: general 3/2, CE 1", 5, [&] {
        auto s = make_n_specker(3);
        EventSpace space(s);
        std::vector<std::size_t> clique;
        for (const auto& g : {GeneralizedEvent{{1, 2}, {0, 1}}, GeneralizedEvent{{2, 3}, {0, 1}},
                              GeneralizedEvent{{1, 3}, {1, 0}}})
            clique.push_back(space.refinement(g).front());
        auto graph = build_exclusivity_graph(s);
        auto f = event_sum_functional(s, clique);
        auto g = maximize_over_general(f);
        auto ce = maximize_over_ce(f);
        return Verdict{is_clique(graph, clique) && g.value == Rational(3, 2) && ce.value == 1,
                       "general " + to_string(g.value) + ", CE " + to_string(ce.value)};
    });

    criterion(13, "binary (4,2) facets are CE or pentagonal, none other", 60, [&] {
        auto facets = enumerate_classical_facets(make_symmetric_scenario(4, 2, 2));
        std::size_t ce = 0, pentagonal = 0, other = 0, genuine = 0;
        for (const auto& f : facets) {
            genuine += f.is_facet;
            switch (f.classification) {
            case FacetClass::ce: ++ce; break;
            case FacetClass::pentagonal: ++pentagonal; break;
            case FacetClass::other: ++other; break;
            }
        }
        return Verdict{other == 0 && genuine == facets.size() && !facets.empty(),
                       std::to_string(facets.size()) + " facets: " + std::to_string(ce) + " CE, "
                           + std::to_string(pentagonal) + " pentagonal, " + std::to_string(other) + " other"};
    });

    std::printf("%d of 13 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}

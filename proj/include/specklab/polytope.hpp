#pragma once

#include "specklab/family.hpp"
#include "specklab/functional.hpp"
#include "specklab/model_space.hpp"
#include "specklab/optimizers.hpp"
#include "specklab/vertex_enumeration.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace specklab {

/// Dimension of the affine hull (rank of differences to the first point).
std::size_t affine_dimension(const std::vector<RationalVector>& points);

enum class FacetClass { ce, pentagonal, other };
std::string to_string(FacetClass c);

struct FacetReport {
    LinearFunctional inequality;           // read as inequality >= 0
    std::vector<Integer> canonical;        // ReducedCoordinates::canonical_form
    bool valid = false;                    // nonnegative on every vertex
    std::vector<std::size_t> saturating;   // vertex indices with value 0
    std::size_t saturating_dimension = 0;  // affine dimension of the saturating set
    bool is_facet = false;                 // valid and saturating_dimension == dim - 1
    FacetClass classification = FacetClass::other;
    std::vector<std::size_t> clique;       // for CE facets: S with inequality ~ 1 - sum_S p
};

/// Saturation analysis of f >= 0 against models spanning a polytope of the
/// given dimension. Affine ranks are computed in reduced coordinates.
FacetReport saturation_count(const LinearFunctional& f, const std::vector<ProbabilisticModel>& vertices,
                             std::size_t polytope_dimension);

/// Facets of the cyclic polytope C(d, N) for even d = 2m:
/// C(N - m, m) + C(N - m - 1, m - 1).
Integer cyclic_facet_count(unsigned long d, unsigned long N);

/// g(pi(v)) = f(v) where pi sends measurement m to permutation[m - 1] and
/// outcome a of m to (a + shifts[m - 1]) mod k. The permuted contexts must be
/// contexts of the scenario.
LinearFunctional relabel_functional(const LinearFunctional& f, const std::vector<int>& permutation,
                                    const std::vector<int>& shifts);

/// Canonical forms of 2 - I_pent >= 0 under the 4! x 2^4 relabelings.
std::vector<std::vector<Integer>> pentagonal_orbit();

/// Classifies f >= 0 (assumed valid on the classical polytope) as a clique
/// inequality 1 - sum_S p >= 0 up to positive scaling, a member of the
/// pentagonal orbit, or neither. Returns the clique when one exists.
FacetClass classify_inequality(const LinearFunctional& f, std::vector<std::size_t>* clique = nullptr);

struct PolytopeOptions {
    lp::EnumerationOptions enumeration{};
    unsigned long long vertex_limit = 1ULL << 16;
};

/// Facets of conv(deterministic models), by double description in reduced
/// coordinates, each mapped back to event coordinates and classified.
std::vector<FacetReport> enumerate_classical_facets(const MarginalScenario& s, const PolytopeOptions& options = {});

/// G intersected with all maximal clique inequalities.
ConstraintSystem ce_constraint_system(const MarginalScenario& s, std::size_t clique_limit = 1'000'000);

struct ExactCollapseReport {
    int n = 0;
    std::size_t ce_vertices = 0;
    bool vertices_deterministic = false;   // every CE vertex is a deterministic model and all appear
    std::size_t facets = 0;
    std::size_t expected_facets = 0;       // 2^(2n-2)
    bool facets_match_family = false;
    std::size_t q1_checked = 0;
    double q1_worst_excess = 0;            // max over checked facets of Q1 max - classical max
    bool q1_ok = true;
    std::vector<std::string> problems;
    bool passed() const { return vertices_deterministic && facets_match_family && q1_ok && problems.empty(); }
};

struct ExactCollapseOptions {
    PolytopeOptions polytope{};
    /// Q1 spot checks on the first q1_checks facets (0 disables them).
    std::size_t q1_checks = 0;
    double q1_tolerance = 1e-4;
    sdp::SdpOptions sdp{};
};

ExactCollapseReport check_theorem_collapse(int n, const ExactCollapseOptions& options = {});

struct CollapseTrial {
    LinearFunctional functional;
    Rational classical = 0;
    Rational ce = 0;
    double q1 = 0;
    bool q1_converged = false;
    bool collapsed = false;
};

struct CollapseReport {
    std::string scenario_label;
    std::vector<CollapseTrial> trials;
    std::size_t gaps() const;
    bool all_collapsed() const { return gaps() == 0; }
};

struct CollapseOptions {
    double q1_tolerance = 1e-4;
    bool run_q1 = true;
    CeOptions ce{};
    sdp::SdpOptions sdp{};
};

/// Random functionals on the binary n-Specker scenario (seeded mt19937_64):
/// classical max must equal CE max exactly, and Q1 must lie within tolerance.
CollapseReport random_functional_collapse_check(int n, int trials, std::uint64_t seed,
                                                const CollapseOptions& options = {});
/// Same on an arbitrary scenario; `probes` are checked before the random ones.
CollapseReport random_functional_collapse_check(const MarginalScenario& s, int trials, std::uint64_t seed,
                                                const std::vector<LinearFunctional>& probes = {},
                                                const CollapseOptions& options = {});

}  // namespace specklab

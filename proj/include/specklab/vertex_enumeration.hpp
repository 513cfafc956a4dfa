#pragma once

#include "specklab/constraint_system.hpp"
#include "specklab/linalg.hpp"

#include <cstddef>
#include <vector>

namespace specklab::lp {

using IntegerVector = std::vector<Integer>;

struct EnumerationOptions {
    std::size_t max_dimension = 16;      // after eliminating equalities
    std::size_t max_rays = 2'000'000;    // intermediate double-description rays
};

/// Extreme rays of the pointed cone {y : row . y >= 0 for every row}, as
/// primitive integer vectors, sorted. Double description with the
/// combinatorial adjacency test. Throws ParameterError if the cone is not
/// pointed (rows do not have full column rank).
std::vector<IntegerVector> extreme_rays(const RationalMatrix& rows,
                                        const EnumerationOptions& options = {});

/// All vertices of a bounded polyhedron, exact, deduplicated and sorted.
/// Equalities are eliminated first by exact parametrization; the
/// dimension guard applies to the remaining free coordinates.
/// Throws SizeLimitError past the guard and ParameterError if unbounded.
std::vector<RationalVector> enumerate_polytope_vertices(const ConstraintSystem& cs,
                                                        const EnumerationOptions& options = {});

/// Facet inequalities a . x + a0 >= 0 of conv(points), each returned as the
/// primitive integer vector (a..., a0). The points must affinely span the
/// ambient space.
std::vector<IntegerVector> convex_hull_facets(const std::vector<RationalVector>& points,
                                              const EnumerationOptions& options = {});

}  // namespace specklab::lp

#pragma once

#include "specklab/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace specklab {

using RationalMatrix = std::vector<RationalVector>;

struct RowEchelonForm {
    RationalMatrix rows;               // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;   // pivot column of each row
};

RowEchelonForm reduced_row_echelon(RationalMatrix m);

std::size_t rank(const RationalMatrix& m);

/// Indices of a maximal linearly independent subset of rows, chosen greedily
/// in the given order.
std::vector<std::size_t> independent_rows(const RationalMatrix& m);

std::optional<RationalMatrix> inverse(const RationalMatrix& square);

/// Solution set of a.x = b as origin + span(directions); nullopt when the
/// system is inconsistent. One direction per free (non-pivot) column, so the
/// directions have a unit entry in their own free coordinate.
struct AffineSubspace {
    RationalVector origin;
    RationalMatrix directions;
    std::vector<std::size_t> free_columns;
};

std::optional<AffineSubspace> solve_affine(const RationalMatrix& a, const RationalVector& b,
                                           std::size_t columns);

Rational dot(const RationalVector& a, const RationalVector& b);

}  // namespace specklab

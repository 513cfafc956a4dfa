#pragma once

#include "specklab/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace specklab {

/// coefficients . x + constant, read as "== 0" or ">= 0" depending on the list
/// it sits in.
struct LinearRow {
    RationalVector coefficients;
    Rational constant = 0;
    std::string label;

    Rational evaluate(const RationalVector& x) const;
};

struct ConstraintSystem {
    std::size_t dimension = 0;
    std::vector<LinearRow> equalities;
    std::vector<LinearRow> inequalities;
};

}  // namespace specklab

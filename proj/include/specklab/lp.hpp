#pragma once

#include "specklab/rational.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace specklab::lp {

enum class Relation { less_equal, equal, greater_equal };
enum class Sense { maximize, minimize };
enum class Status { optimal, infeasible, unbounded };

std::string to_string(Status s);

struct Constraint {
    RationalVector coefficients;
    Relation relation = Relation::less_equal;
    Rational rhs = 0;
    std::string label;
};

/// Variable bounds; a missing lower bound means the variable is free.
struct Bounds {
    std::optional<Rational> lower = Rational(0);
    std::optional<Rational> upper;
};

struct LinearProgram {
    Sense sense = Sense::maximize;
    RationalVector objective;
    Rational objective_offset = 0;
    std::vector<Constraint> constraints;
    std::vector<Bounds> bounds;  // empty: every variable >= 0

    std::size_t variables() const { return objective.size(); }
};

struct Solution {
    Status status = Status::infeasible;
    RationalVector primal;
    Rational objective = 0;
    /// Optimal: one multiplier per constraint, sign convention of the
    /// original sense (for a maximization y >= 0 on <= rows, y <= 0 on >= rows).
    RationalVector dual;
    /// Multipliers of the finite upper bounds, same convention.
    RationalVector bound_dual;
    /// Infeasible: y with y >= 0 on <= rows, y <= 0 on >= rows,
    /// sum_i y_i a_ij >= 0 for every variable bounded below (= 0 when free)
    /// and sum_i y_i rhs'_i < 0, where rhs' is the rhs after shifting
    /// variables to their lower bounds.
    RationalVector farkas;
    RationalVector farkas_bounds;
    std::size_t pivots = 0;
};

struct Options {
    /// Consecutive degenerate pivots tolerated before switching from
    /// largest-coefficient pricing to Bland's rule for the rest of the phase.
    std::size_t degenerate_run = 50;
    std::ostream* trace = nullptr;
};

/// Exact two-phase tableau simplex. Optimal solutions are re-verified
/// (primal feasibility, dual feasibility, zero duality gap) before returning;
/// a failed verification throws std::logic_error.
Solution solve(const LinearProgram& lp, const Options& options = {});

}  // namespace specklab::lp

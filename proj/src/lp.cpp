#include "specklab/lp.hpp"

#include <ostream>
#include <stdexcept>

namespace specklab::lp {

std::string to_string(Status s)
{
    switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

enum class ColumnKind { structural, slack, artificial };

// Internal standard form: maximize c.x subject to A x = b, x >= 0, b >= 0.
struct StandardForm {
    std::vector<RationalVector> a;
    RationalVector b;
    RationalVector cost;
    std::vector<ColumnKind> kind;
    std::vector<std::size_t> init_column;  // identity column per row
    std::vector<int> row_sign;             // -1 when the row was negated
    std::size_t columns = 0;
};

// How an original variable maps onto internal structural columns.
struct VariableMap {
    bool free = false;
    Rational shift = 0;
    std::size_t column = 0;  // x' (or x+ when free)
    std::size_t negative = 0;  // x- when free
};

struct Tableau {
    std::vector<RationalVector> t;
    RationalVector rhs;
    std::vector<std::size_t> basis;
    RationalVector reduced;  // c_j - c_B B^-1 A_j
    Rational value;          // c_B x_B
    std::size_t pivots = 0;

    void pivot(std::size_t r, std::size_t c)
    {
        auto& row = t[r];
        const Rational inv = 1 / row[c];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) {
                row[j] *= inv;
                nz.push_back(j);
            }
        rhs[r] *= inv;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i == r || t[i][c] == 0)
                continue;
            const Rational f = t[i][c];
            for (std::size_t j : nz)
                t[i][j] -= f * row[j];
            rhs[i] -= f * rhs[r];
        }
        if (reduced[c] != 0) {
            const Rational f = reduced[c];
            for (std::size_t j : nz)
                reduced[j] -= f * row[j];
            value += f * rhs[r];
        }
        basis[r] = c;
        ++pivots;
    }

    void reset_objective(const RationalVector& cost)
    {
        reduced = cost;
        value = 0;
        for (std::size_t r = 0; r < t.size(); ++r) {
            const Rational& cb = cost[basis[r]];
            if (cb == 0)
                continue;
            value += cb * rhs[r];
            for (std::size_t j = 0; j < reduced.size(); ++j)
                if (t[r][j] != 0)
                    reduced[j] -= cb * t[r][j];
        }
    }
};

enum class PhaseResult { optimal, unbounded };

PhaseResult run_phase(Tableau& tab, const std::vector<bool>& forbidden, const Options& opt, const char* phase)
{
    bool bland = false;
    std::size_t degenerate = 0;
    while (true) {
        std::size_t enter = tab.reduced.size();
        for (std::size_t j = 0; j < tab.reduced.size(); ++j) {
            if (forbidden[j] || tab.reduced[j] <= 0)
                continue;
            if (enter == tab.reduced.size()) {
                enter = j;
                if (bland)
                    break;
            } else if (tab.reduced[j] > tab.reduced[enter]) {
                enter = j;
            }
        }
        if (enter == tab.reduced.size())
            return PhaseResult::optimal;

        std::size_t leave = tab.t.size();
        Rational best;
        for (std::size_t i = 0; i < tab.t.size(); ++i) {
            const Rational& e = tab.t[i][enter];
            if (e <= 0)
                continue;
            Rational ratio = tab.rhs[i] / e;
            if (leave == tab.t.size() || ratio < best
                || (ratio == best && tab.basis[i] < tab.basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == tab.t.size())
            return PhaseResult::unbounded;

        if (best == 0) {
            if (++degenerate > opt.degenerate_run)
                bland = true;
        } else {
            degenerate = 0;
        }
        if (opt.trace)
            *opt.trace << phase << " pivot " << tab.pivots << ": enter " << enter << " leave row " << leave
                       << " (basic " << tab.basis[leave] << ") step " << best.get_str()
                       << (bland ? " [bland]" : "") << '\n';
        tab.pivot(leave, enter);
    }
}

RationalVector read_duals(const Tableau& tab, const StandardForm& sf, const RationalVector& cost)
{
    // Column j of the initial identity has A_j = e_r, so d_j = c_j - y_r.
    RationalVector y(sf.b.size());
    for (std::size_t r = 0; r < y.size(); ++r) {
        std::size_t j = sf.init_column[r];
        y[r] = cost[j] - tab.reduced[j];
    }
    return y;
}

}  // namespace

Solution solve(const LinearProgram& lp, const Options& options)
{
    const std::size_t n = lp.variables();
    for (const auto& c : lp.constraints)
        if (c.coefficients.size() != n)
            throw std::invalid_argument("constraint '" + c.label + "' has " + std::to_string(c.coefficients.size())
                                        + " coefficients, expected " + std::to_string(n));
    if (!lp.bounds.empty() && lp.bounds.size() != n)
        throw std::invalid_argument("bounds vector size mismatch");
    auto bound = [&](std::size_t j) { return lp.bounds.empty() ? Bounds{} : lp.bounds[j]; };

    // Variable substitution.
    std::vector<VariableMap> vars(n);
    std::size_t structural = 0;
    for (std::size_t j = 0; j < n; ++j) {
        auto bj = bound(j);
        if (bj.lower) {
            vars[j].shift = *bj.lower;
            vars[j].column = structural++;
        } else {
            vars[j].free = true;
            vars[j].column = structural++;
            vars[j].negative = structural++;
        }
        if (bj.lower && bj.upper && *bj.upper < *bj.lower) {
            Solution s;
            s.status = Status::infeasible;
            return s;
        }
    }

    // Rows over structural columns: original constraints, then upper bounds.
    struct Row {
        RationalVector a;
        Relation rel;
        Rational b;
    };
    std::vector<Row> rows;
    auto substitute = [&](const RationalVector& coeffs, Relation rel, const Rational& rhs) {
        Row r{RationalVector(structural), rel, rhs};
        for (std::size_t j = 0; j < n; ++j) {
            if (coeffs[j] == 0)
                continue;
            r.a[vars[j].column] += coeffs[j];
            if (vars[j].free)
                r.a[vars[j].negative] -= coeffs[j];
            else
                r.b -= coeffs[j] * vars[j].shift;
        }
        return r;
    };
    for (const auto& c : lp.constraints)
        rows.push_back(substitute(c.coefficients, c.relation, c.rhs));
    std::vector<std::size_t> upper_vars;
    for (std::size_t j = 0; j < n; ++j) {
        auto bj = bound(j);
        if (!bj.upper)
            continue;
        RationalVector e(n);
        e[j] = 1;
        rows.push_back(substitute(e, Relation::less_equal, *bj.upper));
        upper_vars.push_back(j);
    }

    // Standard form with slacks and artificials.
    StandardForm sf;
    const std::size_t m = rows.size();
    sf.columns = structural;
    std::vector<std::size_t> slack_col(m, SIZE_MAX), art_col(m, SIZE_MAX);
    sf.row_sign.assign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].b < 0) {
            sf.row_sign[i] = -1;
            for (auto& x : rows[i].a)
                x = -x;
            rows[i].b = -rows[i].b;
            if (rows[i].rel == Relation::less_equal)
                rows[i].rel = Relation::greater_equal;
            else if (rows[i].rel == Relation::greater_equal)
                rows[i].rel = Relation::less_equal;
        }
        if (rows[i].rel != Relation::equal)
            slack_col[i] = sf.columns++;
    }
    for (std::size_t i = 0; i < m; ++i)
        if (rows[i].rel != Relation::less_equal)
            art_col[i] = sf.columns++;

    sf.kind.assign(sf.columns, ColumnKind::structural);
    sf.a.assign(m, RationalVector(sf.columns));
    sf.b.resize(m);
    sf.init_column.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < structural; ++j)
            sf.a[i][j] = rows[i].a[j];
        sf.b[i] = rows[i].b;
        if (slack_col[i] != SIZE_MAX) {
            sf.a[i][slack_col[i]] = rows[i].rel == Relation::less_equal ? 1 : -1;
            sf.kind[slack_col[i]] = ColumnKind::slack;
        }
        if (art_col[i] != SIZE_MAX) {
            sf.a[i][art_col[i]] = 1;
            sf.kind[art_col[i]] = ColumnKind::artificial;
            sf.init_column[i] = art_col[i];
        } else {
            sf.init_column[i] = slack_col[i];
        }
    }

    Tableau tab;
    tab.t = sf.a;
    tab.rhs = sf.b;
    tab.basis = sf.init_column;

    Solution sol;
    std::vector<bool> forbidden(sf.columns, false);

    // Phase 1: maximize -(sum of artificials).
    RationalVector phase1(sf.columns);
    bool any_artificial = false;
    for (std::size_t j = 0; j < sf.columns; ++j)
        if (sf.kind[j] == ColumnKind::artificial) {
            phase1[j] = -1;
            any_artificial = true;
        }
    if (any_artificial) {
        tab.reset_objective(phase1);
        run_phase(tab, forbidden, options, "phase1");
        if (tab.value < 0) {
            auto y = read_duals(tab, sf, phase1);
            sol.status = Status::infeasible;
            sol.pivots = tab.pivots;
            for (std::size_t i = 0; i < lp.constraints.size(); ++i)
                sol.farkas.push_back(y[i] * sf.row_sign[i]);
            for (std::size_t i = lp.constraints.size(); i < m; ++i)
                sol.farkas_bounds.push_back(y[i] * sf.row_sign[i]);
            return sol;
        }
        // Drive zero-level artificials out of the basis where possible.
        for (std::size_t r = 0; r < m; ++r) {
            if (sf.kind[tab.basis[r]] != ColumnKind::artificial)
                continue;
            for (std::size_t j = 0; j < sf.columns; ++j)
                if (sf.kind[j] != ColumnKind::artificial && tab.t[r][j] != 0) {
                    tab.pivot(r, j);
                    break;
                }
        }
        for (std::size_t j = 0; j < sf.columns; ++j)
            forbidden[j] = sf.kind[j] == ColumnKind::artificial;
    }

    // Phase 2.
    sf.cost.assign(sf.columns, Rational(0));
    const Rational sense_sign = lp.sense == Sense::maximize ? 1 : -1;
    for (std::size_t j = 0; j < n; ++j) {
        Rational c = sense_sign * lp.objective[j];
        sf.cost[vars[j].column] += c;
        if (vars[j].free)
            sf.cost[vars[j].negative] -= c;
    }
    tab.reset_objective(sf.cost);
    if (run_phase(tab, forbidden, options, "phase2") == PhaseResult::unbounded) {
        sol.status = Status::unbounded;
        sol.pivots = tab.pivots;
        return sol;
    }

    // Extract and verify in standard form.
    RationalVector x(sf.columns);
    for (std::size_t r = 0; r < m; ++r)
        x[tab.basis[r]] = tab.rhs[r];
    auto y = read_duals(tab, sf, sf.cost);

    for (std::size_t j = 0; j < sf.columns; ++j)
        if (x[j] < 0)
            throw std::logic_error("simplex verification: negative primal value");
    Rational primal_obj = 0, dual_obj = 0;
    for (std::size_t i = 0; i < m; ++i) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < sf.columns; ++j)
            if (sf.a[i][j] != 0 && x[j] != 0)
                lhs += sf.a[i][j] * x[j];
        if (lhs != sf.b[i])
            throw std::logic_error("simplex verification: equality row violated");
        dual_obj += sf.b[i] * y[i];
    }
    for (std::size_t j = 0; j < sf.columns; ++j) {
        primal_obj += sf.cost[j] * x[j];
        if (sf.kind[j] == ColumnKind::artificial) {
            if (x[j] != 0)
                throw std::logic_error("simplex verification: artificial left positive");
            continue;
        }
        Rational ya = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (sf.a[i][j] != 0)
                ya += y[i] * sf.a[i][j];
        if (ya < sf.cost[j])
            throw std::logic_error("simplex verification: dual infeasible");
    }
    if (primal_obj != dual_obj)
        throw std::logic_error("simplex verification: nonzero duality gap");

    sol.status = Status::optimal;
    sol.pivots = tab.pivots;
    sol.primal.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        sol.primal[j] = vars[j].free ? Rational(x[vars[j].column] - x[vars[j].negative])
                                     : Rational(vars[j].shift + x[vars[j].column]);
    }
    sol.objective = lp.objective_offset;
    for (std::size_t j = 0; j < n; ++j)
        sol.objective += lp.objective[j] * sol.primal[j];
    for (std::size_t i = 0; i < lp.constraints.size(); ++i)
        sol.dual.push_back(sense_sign * y[i] * sf.row_sign[i]);
    for (std::size_t i = lp.constraints.size(); i < m; ++i)
        sol.bound_dual.push_back(sense_sign * y[i] * sf.row_sign[i]);

    // Independent check against the original formulation.
    for (const auto& c : lp.constraints) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (c.coefficients[j] != 0)
                lhs += c.coefficients[j] * sol.primal[j];
        bool ok = c.relation == Relation::equal ? lhs == c.rhs
                  : c.relation == Relation::less_equal ? lhs <= c.rhs
                                                       : lhs >= c.rhs;
        if (!ok)
            throw std::logic_error("simplex verification: constraint '" + c.label + "' violated");
    }
    if (sol.objective - lp.objective_offset != sense_sign * primal_obj + [&] {
            Rational shift = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (!vars[j].free)
                    shift += lp.objective[j] * vars[j].shift;
            return shift;
        }())
        throw std::logic_error("simplex verification: objective mismatch");
    return sol;
}

}  // namespace specklab::lp

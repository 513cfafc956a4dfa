#include "specklab/linalg.hpp"

#include <stdexcept>

namespace specklab {

RowEchelonForm reduced_row_echelon(RationalMatrix m)
{
    RowEchelonForm out;
    if (m.empty())
        return out;
    const std::size_t cols = m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j)
            if (m[r][j] != 0)
                m[r][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (m[r][j] != 0)
                    m[i][j] -= f * m[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    out.rows = std::move(m);
    return out;
}

std::size_t rank(const RationalMatrix& m)
{
    return reduced_row_echelon(m).pivots.size();
}

std::vector<std::size_t> independent_rows(const RationalMatrix& m)
{
    // Incremental elimination against the rows accepted so far.
    std::vector<std::size_t> chosen;
    RationalMatrix basis;
    std::vector<std::size_t> basis_pivot;
    for (std::size_t i = 0; i < m.size(); ++i) {
        RationalVector v = m[i];
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const Rational& f = v[basis_pivot[b]];
            if (f == 0)
                continue;
            Rational factor = f;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (basis[b][j] != 0)
                    v[j] -= factor * basis[b][j];
        }
        std::size_t piv = 0;
        while (piv < v.size() && v[piv] == 0)
            ++piv;
        if (piv == v.size())
            continue;
        Rational inv = 1 / v[piv];
        for (auto& x : v)
            x *= inv;
        // keep the accepted rows mutually reduced on their pivots
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (basis[b][piv] == 0)
                continue;
            Rational factor = basis[b][piv];
            for (std::size_t j = 0; j < v.size(); ++j)
                if (v[j] != 0)
                    basis[b][j] -= factor * v[j];
        }
        basis.push_back(std::move(v));
        basis_pivot.push_back(piv);
        chosen.push_back(i);
    }
    return chosen;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& square)
{
    const std::size_t n = square.size();
    RationalMatrix aug(n, RationalVector(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        if (square[i].size() != n)
            throw std::invalid_argument("inverse: matrix is not square");
        for (std::size_t j = 0; j < n; ++j)
            aug[i][j] = square[i][j];
        aug[i][n + i] = 1;
    }
    auto ref = reduced_row_echelon(std::move(aug));
    if (ref.pivots.size() < n || ref.pivots[n - 1] >= n)
        return std::nullopt;
    RationalMatrix inv(n, RationalVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv[i][j] = ref.rows[i][n + j];
    return inv;
}

std::optional<AffineSubspace> solve_affine(const RationalMatrix& a, const RationalVector& b,
                                           std::size_t columns)
{
    RationalMatrix aug;
    aug.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        RationalVector row(columns + 1);
        for (std::size_t j = 0; j < columns; ++j)
            row[j] = a[i][j];
        row[columns] = b[i];
        aug.push_back(std::move(row));
    }
    auto ref = reduced_row_echelon(std::move(aug));
    for (std::size_t p : ref.pivots)
        if (p == columns)
            return std::nullopt;

    std::vector<bool> is_pivot(columns, false);
    for (std::size_t p : ref.pivots)
        is_pivot[p] = true;

    AffineSubspace out;
    out.origin.assign(columns, Rational(0));
    for (std::size_t r = 0; r < ref.rows.size(); ++r)
        out.origin[ref.pivots[r]] = ref.rows[r][columns];
    for (std::size_t f = 0; f < columns; ++f) {
        if (is_pivot[f])
            continue;
        RationalVector d(columns);
        d[f] = 1;
        for (std::size_t r = 0; r < ref.rows.size(); ++r)
            d[ref.pivots[r]] = -ref.rows[r][f];
        out.directions.push_back(std::move(d));
        out.free_columns.push_back(f);
    }
    return out;
}

Rational dot(const RationalVector& a, const RationalVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0)
            s += a[i] * b[i];
    return s;
}

}  // namespace specklab

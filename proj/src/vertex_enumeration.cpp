#include "specklab/vertex_enumeration.hpp"

#include "specklab/errors.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <set>

namespace specklab {

Rational LinearRow::evaluate(const RationalVector& x) const
{
    return dot(coefficients, x) + constant;
}

namespace lp {

namespace {

using Bits = boost::dynamic_bitset<>;

struct Ray {
    IntegerVector v;
    Bits zero;  // processed rows on which the ray is tight
};

Integer dot_int(const IntegerVector& a, const IntegerVector& b)
{
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0)
            s += a[i] * b[i];
    return s;
}

void make_primitive(IntegerVector& v)
{
    Integer g = 0;
    for (const auto& x : v)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : v)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

std::vector<IntegerVector> extreme_rays(const RationalMatrix& rows, const EnumerationOptions& options)
{
    if (rows.empty())
        throw ParameterError("extreme_rays: no constraints, cone is not pointed");
    const std::size_t dim = rows.front().size();
    const std::size_t m = rows.size();

    std::vector<IntegerVector> irows;
    irows.reserve(m);
    for (const auto& r : rows)
        irows.push_back(primitive_integer_vector(r));

    auto basis = independent_rows(rows);
    if (basis.size() < dim)
        throw ParameterError("extreme_rays: constraint matrix rank " + std::to_string(basis.size())
                             + " < " + std::to_string(dim) + ", cone is not pointed");

    RationalMatrix b;
    for (auto i : basis)
        b.push_back(rows[i]);
    auto inv = inverse(b);

    std::vector<Ray> rays;
    for (std::size_t k = 0; k < dim; ++k) {
        RationalVector col(dim);
        for (std::size_t i = 0; i < dim; ++i)
            col[i] = (*inv)[i][k];
        rays.push_back(Ray{primitive_integer_vector(col), Bits(m)});
    }
    std::vector<bool> processed(m, false);
    for (auto i : basis) {
        processed[i] = true;
        for (auto& r : rays)
            if (dot_int(irows[i], r.v) == 0)
                r.zero[i] = true;
    }

    for (std::size_t row = 0; row < m; ++row) {
        if (processed[row])
            continue;
        processed[row] = true;
        std::vector<Integer> value(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            value[r] = dot_int(irows[row], rays[r].v);
            int s = sgn(value[r]);
            if (s > 0)
                pos.push_back(r);
            else if (s < 0)
                neg.push_back(r);
            else
                rays[r].zero[row] = true;
        }
        if (neg.empty())
            continue;

        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (value[r] >= 0)
                next.push_back(rays[r]);
        for (auto p : pos)
            for (auto q : neg) {
                Bits common = rays[p].zero & rays[q].zero;
                if (common.count() + 2 < dim)
                    continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
                    if (r != p && r != q && common.is_subset_of(rays[r].zero))
                        adjacent = false;
                if (!adjacent)
                    continue;
                Ray fresh{IntegerVector(dim), common};
                const Integer wp = -value[q];  // > 0
                const Integer wq = value[p];   // > 0
                for (std::size_t i = 0; i < dim; ++i)
                    fresh.v[i] = wp * rays[p].v[i] + wq * rays[q].v[i];
                make_primitive(fresh.v);
                fresh.zero[row] = true;
                next.push_back(std::move(fresh));
                if (next.size() > options.max_rays)
                    throw SizeLimitError("double description exceeded its ray bound", options.max_rays);
            }
        rays = std::move(next);
    }

    std::vector<IntegerVector> out;
    out.reserve(rays.size());
    for (auto& r : rays)
        out.push_back(std::move(r.v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<RationalVector> enumerate_polytope_vertices(const ConstraintSystem& cs, const EnumerationOptions& options)
{
    const std::size_t n = cs.dimension;
    RationalMatrix eq;
    RationalVector rhs;
    for (const auto& r : cs.equalities) {
        if (r.coefficients.size() != n)
            throw std::invalid_argument("equality '" + r.label + "' has wrong dimension");
        eq.push_back(r.coefficients);
        rhs.push_back(-r.constant);
    }
    for (const auto& r : cs.inequalities)
        if (r.coefficients.size() != n)
            throw std::invalid_argument("inequality '" + r.label + "' has wrong dimension");

    auto affine = solve_affine(eq, rhs, n);
    if (!affine)
        return {};
    const std::size_t d = affine->directions.size();
    if (d > options.max_dimension)
        throw SizeLimitError("polytope dimension " + std::to_string(d) + " after reduction exceeds guard",
                             options.max_dimension);

    auto lift = [&](const RationalVector& z) {
        RationalVector x = affine->origin;
        for (std::size_t k = 0; k < d; ++k)
            if (z[k] != 0)
                for (std::size_t i = 0; i < n; ++i)
                    if (affine->directions[k][i] != 0)
                        x[i] += z[k] * affine->directions[k][i];
        return x;
    };

    if (d == 0) {
        for (const auto& r : cs.inequalities)
            if (r.evaluate(affine->origin) < 0)
                return {};
        return {affine->origin};
    }

    // Homogenized cone over (z, t).
    RationalMatrix rows;
    for (const auto& r : cs.inequalities) {
        RationalVector row(d + 1);
        for (std::size_t k = 0; k < d; ++k)
            row[k] = dot(r.coefficients, affine->directions[k]);
        row[d] = r.evaluate(affine->origin);
        rows.push_back(std::move(row));
    }
    RationalVector t_row(d + 1);
    t_row[d] = 1;
    rows.push_back(t_row);

    std::vector<IntegerVector> rays;
    try {
        rays = extreme_rays(rows, options);
    } catch (const ParameterError&) {
        throw ParameterError("enumerate_polytope_vertices: polyhedron is unbounded");
    }

    std::set<RationalVector> vertices;
    for (const auto& ray : rays) {
        if (ray[d] == 0)
            throw ParameterError("enumerate_polytope_vertices: polyhedron is unbounded");
        RationalVector z(d);
        for (std::size_t k = 0; k < d; ++k)
            z[k] = Rational(ray[k], ray[d]);
        for (auto& q : z)
            q.canonicalize();
        vertices.insert(lift(z));
    }
    return {vertices.begin(), vertices.end()};
}

std::vector<IntegerVector> convex_hull_facets(const std::vector<RationalVector>& points,
                                              const EnumerationOptions& options)
{
    if (points.empty())
        throw ParameterError("convex_hull_facets: no points");
    const std::size_t d = points.front().size();
    RationalMatrix rows;
    for (const auto& p : points) {
        RationalVector row = p;
        row.push_back(1);
        rows.push_back(std::move(row));
    }
    try {
        return extreme_rays(rows, options);
    } catch (const ParameterError&) {
        throw ParameterError("convex_hull_facets: points do not affinely span dimension " + std::to_string(d));
    }
}

}  // namespace lp
}  // namespace specklab

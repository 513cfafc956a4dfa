#include "specklab/sdp.hpp"

#include "specklab/errors.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace specklab::sdp {

SymMatrix::SymMatrix(std::size_t dimension) : dimension_(dimension), data_(dimension * (dimension + 1) / 2, 0.0) {}

SymMatrix SymMatrix::from_eigen(const Eigen::MatrixXd& m)
{
    if (m.rows() != m.cols())
        throw ParameterError("SymMatrix::from_eigen: matrix is not square");
    SymMatrix out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j <= i; ++j)
            out.set(i, j, 0.5 * (m(i, j) + m(j, i)));
    return out;
}

Eigen::MatrixXd SymMatrix::to_eigen() const
{
    const auto n = static_cast<Eigen::Index>(dimension_);
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j)
            m(i, j) = m(j, i) = (*this)(i, j);
    return m;
}

HermMatrix::HermMatrix(Eigen::MatrixXcd m, double tolerance) : m_(std::move(m))
{
    if (m_.rows() != m_.cols())
        throw ParameterError("HermMatrix: matrix is not square");
    if (!m_.allFinite())
        throw ParameterError("HermMatrix: non-finite entry");
    double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (m_.size() > 0 && dev > tolerance)
        throw ParameterError("HermMatrix: deviation from Hermitian " + std::to_string(dev));
}

HermMatrix HermMatrix::identity(std::size_t dimension)
{
    const auto n = static_cast<Eigen::Index>(dimension);
    return HermMatrix(Eigen::MatrixXcd::Identity(n, n));
}

HermMatrix HermMatrix::zero(std::size_t dimension)
{
    const auto n = static_cast<Eigen::Index>(dimension);
    return HermMatrix(Eigen::MatrixXcd::Zero(n, n));
}

HermMatrix pauli_x()
{
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1, 1, 0;
    return HermMatrix(m);
}

HermMatrix pauli_z()
{
    Eigen::MatrixXcd m(2, 2);
    m << 1, 0, 0, -1;
    return HermMatrix(m);
}

double min_eigenvalue(const Eigen::MatrixXd& m)
{
    if (m.size() == 0)
        throw ParameterError("min_eigenvalue: empty matrix");
    if (!m.allFinite())
        throw ParameterError("min_eigenvalue: non-finite entry");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double min_eigenvalue(const SymMatrix& m)
{
    return min_eigenvalue(m.to_eigen());
}

double min_eigenvalue(const HermMatrix& m)
{
    if (m.dimension() == 0)
        throw ParameterError("min_eigenvalue: empty matrix");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

std::string to_string(SdpStatus s)
{
    switch (s) {
    case SdpStatus::converged:
        return "converged";
    case SdpStatus::iteration_limit:
        return "iteration_limit";
    case SdpStatus::infeasible_suspected:
        return "infeasible_suspected";
    }
    return "unknown";
}

double affine_residual(const SdpProblem& problem, const SymMatrix& m)
{
    double worst = 0;
    for (const auto& c : problem.constraints) {
        double lhs = 0;
        for (const auto& t : c.terms)
            lhs += t.value * m(t.row, t.col);
        worst = std::max(worst, std::abs(lhs - c.rhs));
    }
    return worst;
}

double objective_value(const SdpProblem& problem, const SymMatrix& m)
{
    double v = problem.objective_offset;
    for (const auto& t : problem.objective)
        v += t.value * m(t.row, t.col);
    return v;
}

namespace {

using Vec = Eigen::VectorXd;
using Sparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

const double sqrt2 = std::sqrt(2.0);

std::size_t slot(std::size_t i, std::size_t j)
{
    return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i;
}

// Coefficient on the svec coordinate of entry (i, j): svec stores M_ii and
// sqrt(2) M_ij so that the Euclidean and trace inner products agree.
double svec_weight(std::size_t i, std::size_t j)
{
    return i == j ? 1.0 : 1.0 / sqrt2;
}

Eigen::MatrixXd smat(const Vec& x, std::size_t n)
{
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double v = x[static_cast<Eigen::Index>(slot(i, j))];
            if (i != j)
                v /= sqrt2;
            m(i, j) = m(j, i) = v;
        }
    return m;
}

Vec svec(const Eigen::MatrixXd& m)
{
    const auto n = static_cast<std::size_t>(m.rows());
    Vec x(static_cast<Eigen::Index>(n * (n + 1) / 2));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            x[static_cast<Eigen::Index>(slot(i, j))] = i == j ? m(i, j) : sqrt2 * m(i, j);
    return x;
}

class PsdProjector {
public:
    explicit PsdProjector(std::size_t n) : n_(n), solver_(static_cast<Eigen::Index>(n)) {}

    Vec operator()(const Vec& x)
    {
        solver_.compute(smat(x, n_));
        Vec lambda = solver_.eigenvalues().cwiseMax(0.0);
        const auto& v = solver_.eigenvectors();
        return svec(v * lambda.asDiagonal() * v.transpose());
    }

private:
    std::size_t n_;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver_;
};

// Euclidean projection onto {x : x_F = f, A x = b}. Single-entry
// constraints become fixed coordinates; the rest are rank-pruned and
// projected with a cached Cholesky factor of A A^T.
class AffineProjector {
public:
    AffineProjector(const SdpProblem& p, double tolerance)
    {
        const std::size_t n = p.dimension;
        dim_ = n * (n + 1) / 2;
        fixed_.assign(dim_, false);
        fixed_value_ = Vec::Zero(static_cast<Eigen::Index>(dim_));

        std::vector<std::map<std::size_t, double>> rows;
        std::vector<double> rhs;
        for (const auto& c : p.constraints) {
            std::map<std::size_t, double> row;
            for (const auto& t : c.terms) {
                if (t.row >= n || t.col >= n)
                    throw ParameterError("SDP constraint '" + c.label + "' indexes outside the matrix");
                row[slot(t.row, t.col)] += t.value * svec_weight(t.row, t.col);
            }
            std::erase_if(row, [](const auto& kv) { return kv.second == 0.0; });
            rows.push_back(std::move(row));
            rhs.push_back(c.rhs);
        }
        // Fix coordinates from single-entry rows, then substitute.
        std::vector<bool> used(rows.size(), false);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != 1)
                continue;
            auto [s, coef] = *rows[r].begin();
            double value = rhs[r] / coef;
            used[r] = true;
            if (fixed_[s]) {
                if (std::abs(fixed_value_[static_cast<Eigen::Index>(s)] - value) > tolerance)
                    inconsistent_ = true;
                continue;
            }
            fixed_[s] = true;
            fixed_value_[static_cast<Eigen::Index>(s)] = value;
        }
        for (std::size_t s = 0; s < dim_; ++s)
            if (!fixed_[s]) {
                free_index_.push_back(s);
            }
        std::vector<std::size_t> position(dim_, 0);
        for (std::size_t k = 0; k < free_index_.size(); ++k)
            position[free_index_[k]] = k;

        std::vector<Eigen::Triplet<double>> triplets;
        std::vector<double> reduced_rhs;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r])
                continue;
            double b = rhs[r];
            std::vector<std::pair<std::size_t, double>> entries;
            for (auto [s, coef] : rows[r]) {
                if (fixed_[s])
                    b -= coef * fixed_value_[static_cast<Eigen::Index>(s)];
                else
                    entries.emplace_back(position[s], coef);
            }
            if (entries.empty()) {
                if (std::abs(b) > tolerance)
                    inconsistent_ = true;
                continue;
            }
            for (auto [k, coef] : entries)
                triplets.emplace_back(static_cast<int>(reduced_rhs.size()), static_cast<int>(k), coef);
            reduced_rhs.push_back(b);
        }
        const auto m = static_cast<Eigen::Index>(reduced_rhs.size());
        const auto nf = static_cast<Eigen::Index>(free_index_.size());
        Sparse all(m, nf);
        all.setFromTriplets(triplets.begin(), triplets.end());

        if (m > 0) {
            Eigen::MatrixXd dense_t = Eigen::MatrixXd(all).transpose();
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(dense_t);
            qr.setThreshold(1e-10);
            const auto r = qr.rank();
            std::vector<int> keep;
            for (Eigen::Index i = 0; i < r; ++i)
                keep.push_back(qr.colsPermutation().indices()[i]);
            std::sort(keep.begin(), keep.end());
            std::vector<Eigen::Triplet<double>> kept;
            b_ = Vec(static_cast<Eigen::Index>(keep.size()));
            for (std::size_t i = 0; i < keep.size(); ++i) {
                b_[static_cast<Eigen::Index>(i)] = reduced_rhs[static_cast<std::size_t>(keep[i])];
                for (Sparse::InnerIterator it(all, keep[i]); it; ++it)
                    kept.emplace_back(static_cast<int>(i), static_cast<int>(it.col()), it.value());
            }
            a_ = Sparse(static_cast<Eigen::Index>(keep.size()), nf);
            a_.setFromTriplets(kept.begin(), kept.end());
            Eigen::MatrixXd gram = Eigen::MatrixXd(a_ * a_.transpose());
            llt_.compute(gram);
            if (llt_.info() != Eigen::Success)
                throw std::runtime_error("SDP affine projection: Gram matrix factorization failed");
        }
    }

    bool inconsistent() const { return inconsistent_; }
    std::size_t dimension() const { return dim_; }

    Vec operator()(const Vec& v) const
    {
        Vec out = v;
        for (std::size_t s = 0; s < dim_; ++s)
            if (fixed_[s])
                out[static_cast<Eigen::Index>(s)] = fixed_value_[static_cast<Eigen::Index>(s)];
        if (a_.rows() == 0)
            return out;
        Vec w(static_cast<Eigen::Index>(free_index_.size()));
        for (std::size_t k = 0; k < free_index_.size(); ++k)
            w[static_cast<Eigen::Index>(k)] = v[static_cast<Eigen::Index>(free_index_[k])];
        Vec correction = a_.transpose() * llt_.solve(a_ * w - b_);
        w -= correction;
        for (std::size_t k = 0; k < free_index_.size(); ++k)
            out[static_cast<Eigen::Index>(free_index_[k])] = w[static_cast<Eigen::Index>(k)];
        return out;
    }

private:
    std::size_t dim_ = 0;
    std::vector<bool> fixed_;
    Vec fixed_value_;
    std::vector<std::size_t> free_index_;
    Sparse a_;
    Vec b_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    bool inconsistent_ = false;
};

}  // namespace

SdpResult solve_sdp(const SdpProblem& problem, const SdpOptions& options)
{
    if (problem.dimension == 0)
        throw ParameterError("solve_sdp: empty matrix");
    if (!(options.tolerance > 0) || !(options.relaxation > 0 && options.relaxation < 2) || !(options.rho > 0))
        throw ParameterError("solve_sdp: invalid options");
    const std::size_t n = problem.dimension;
    AffineProjector project_affine(problem, options.tolerance);
    PsdProjector project_psd(n);
    const auto dim = static_cast<Eigen::Index>(project_affine.dimension());

    // Minimize c . x in svec coordinates.
    Vec c = Vec::Zero(dim);
    const double sign = problem.sense == Sense::maximize ? -1.0 : 1.0;
    for (const auto& t : problem.objective) {
        if (t.row >= n || t.col >= n)
            throw ParameterError("SDP objective indexes outside the matrix");
        c[static_cast<Eigen::Index>(slot(t.row, t.col))] += sign * t.value * svec_weight(t.row, t.col);
    }

    auto finish = [&](const Vec& z, SdpReport report) {
        SdpResult result;
        result.matrix = SymMatrix::from_eigen(smat(z, n));
        result.objective = objective_value(problem, result.matrix);
        report.affine_residual = affine_residual(problem, result.matrix);
        report.min_eigenvalue = min_eigenvalue(result.matrix);
        result.report = std::move(report);
        return result;
    };

    double rho = options.rho;
    const double alpha = options.relaxation;
    Vec z = project_psd(project_affine(Vec::Zero(dim)));
    Vec u = Vec::Zero(dim);
    SdpReport report;
    if (project_affine.inconsistent()) {
        report.status = SdpStatus::infeasible_suspected;
        return finish(z, report);
    }

    Vec best = z;
    double best_score = std::numeric_limits<double>::infinity();
    SdpReport best_report;
    double previous_objective = c.dot(z);
    std::size_t it = 0;
    for (it = 1; it <= options.max_iterations; ++it) {
        Vec x = project_affine(z - u - c / rho);
        Vec xh = alpha * x + (1 - alpha) * z;
        Vec z_old = z;
        z = project_psd(xh + u);
        u += xh - z;

        const double r_primal = (x - z).norm();
        const double r_dual = rho * (z - z_old).norm();
        const double r_affine = (project_affine(z) - z).norm();
        const double objective = c.dot(z);
        const double change = std::abs(objective - previous_objective);
        previous_objective = objective;

        SdpReport current;
        current.iterations = it;
        current.primal_residual = r_primal;
        current.dual_residual = r_dual;
        current.affine_residual = r_affine;
        current.objective_change = change;

        const double score = std::max({r_primal, r_affine, r_dual});
        if (score <= best_score) {
            best_score = score;
            best = z;
            best_report = current;
        }
        if (options.trace_every && it % options.trace_every == 0)
            report.trace.push_back({it, sign * objective + problem.objective_offset, r_primal, r_affine, r_dual});

        const double tol = options.tolerance;
        if (r_primal < tol && r_affine < tol && r_dual < tol && change < tol) {
            current.status = SdpStatus::converged;
            current.trace = std::move(report.trace);
            return finish(z, current);
        }
        if (options.adapt_every && it % options.adapt_every == 0) {
            if (r_primal > 10 * r_dual) {
                rho *= 2;
                u /= 2;
            } else if (r_dual > 10 * r_primal) {
                rho /= 2;
                u *= 2;
            }
        }
    }
    best_report.trace = std::move(report.trace);
    best_report.iterations = options.max_iterations;
    best_report.status = std::max(best_report.primal_residual, best_report.affine_residual) > 1e3 * options.tolerance
                             ? SdpStatus::infeasible_suspected
                             : SdpStatus::iteration_limit;
    return finish(best, best_report);
}

}  // namespace specklab::sdp

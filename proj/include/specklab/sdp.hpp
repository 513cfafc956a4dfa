#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace specklab::sdp {

/// Real symmetric matrix, packed lower triangle.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t dimension);
    static SymMatrix from_eigen(const Eigen::MatrixXd& m);  // symmetrizes (m + m^T) / 2

    std::size_t dimension() const { return dimension_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[slot(i, j)]; }
    void set(std::size_t i, std::size_t j, double value) { data_[slot(i, j)] = value; }
    Eigen::MatrixXd to_eigen() const;
    bool operator==(const SymMatrix&) const = default;

private:
    static std::size_t slot(std::size_t i, std::size_t j) { return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i; }
    std::size_t dimension_ = 0;
    std::vector<double> data_;
};

/// Complex Hermitian matrix. Construction checks |m - m^*| <= 1e-12 entrywise
/// and throws ParameterError otherwise.
class HermMatrix {
public:
    HermMatrix() = default;
    explicit HermMatrix(Eigen::MatrixXcd m, double tolerance = 1e-12);
    static HermMatrix identity(std::size_t dimension);
    static HermMatrix zero(std::size_t dimension);

    std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return m_; }

private:
    Eigen::MatrixXcd m_;
};

/// Pauli matrices.
HermMatrix pauli_x();
HermMatrix pauli_z();

/// Smallest eigenvalue. Throws ParameterError on non-finite entries.
double min_eigenvalue(const SymMatrix& m);
double min_eigenvalue(const HermMatrix& m);
double min_eigenvalue(const Eigen::MatrixXd& m);

/// value * M(row, col); off-diagonal terms refer to the single entry, so
/// M(i,j) and M(j,i) are the same variable.
struct MatrixTerm {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0;
};

struct AffineConstraint {
    std::vector<MatrixTerm> terms;
    double rhs = 0;
    std::string label;
};

enum class Sense { maximize, minimize };

struct SdpProblem {
    std::size_t dimension = 0;
    std::vector<AffineConstraint> constraints;
    std::vector<MatrixTerm> objective;
    double objective_offset = 0;
    Sense sense = Sense::maximize;
};

struct SdpOptions {
    double tolerance = 1e-7;
    std::size_t max_iterations = 200'000;
    double rho = 1.0;
    double relaxation = 1.6;
    std::size_t adapt_every = 50;
    std::size_t trace_every = 1000;
};

enum class SdpStatus { converged, iteration_limit, infeasible_suspected };
std::string to_string(SdpStatus s);

struct TracePoint {
    std::size_t iteration = 0;
    double objective = 0;
    double primal_residual = 0;
    double affine_residual = 0;
    double dual_residual = 0;
};

struct SdpReport {
    SdpStatus status = SdpStatus::iteration_limit;
    std::size_t iterations = 0;
    double primal_residual = 0;   // |X - Z| at the returned iterate
    double affine_residual = 0;   // max_j |<A_j, M> - b_j| of the returned matrix
    double dual_residual = 0;
    double objective_change = 0;
    double min_eigenvalue = 0;    // of the returned matrix
    std::vector<TracePoint> trace;
};

struct SdpResult {
    double objective = 0;
    SymMatrix matrix;
    SdpReport report;
};

/// ADMM in the half-vectorized space: the affine step is a cached
/// least-squares projection, the conic step clips eigenvalues, with
/// over-relaxation and residual-balancing step size updates. Stops when the
/// consensus, affine, dual residuals and the objective change all drop below
/// the tolerance; otherwise returns the best iterate seen with its report.
SdpResult solve_sdp(const SdpProblem& problem, const SdpOptions& options = {});

/// max_j |sum of terms - rhs| for the given matrix.
double affine_residual(const SdpProblem& problem, const SymMatrix& m);
double objective_value(const SdpProblem& problem, const SymMatrix& m);

}  // namespace specklab::sdp

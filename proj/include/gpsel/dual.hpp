#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gpsel/posynomial.hpp"

namespace gpsel {

/// Dual of a standard-form GP.
///
/// Terms are flattened block by block: the objective terms first (block 0),
/// then the terms of constraint 1 (block 1), and so on. Dual weight k belongs
/// to term k. The linear part of the dual is the system
///
///     sum_{k in block 0} w_k = 1                 (normality)
///     sum_k exponents(k, j) * w_k = 0   for all j  (orthogonality)
///
/// together with w >= 0.
struct DualProgram {
    Eigen::VectorXd coefficients;       // c_k > 0, constraint terms already divided by b_i
    std::vector<std::size_t> block_of;  // owner block of each term
    std::vector<std::size_t> block_start;  // first term of each block; size = num_blocks + 1
    Eigen::MatrixXd exponents;          // num_terms x num_variables

    std::size_t num_terms() const noexcept { return static_cast<std::size_t>(coefficients.size()); }
    std::size_t num_variables() const noexcept { return static_cast<std::size_t>(exponents.cols()); }
    std::size_t num_blocks() const noexcept { return block_start.empty() ? 0 : block_start.size() - 1; }
    std::size_t block_size(std::size_t b) const { return block_start[b + 1] - block_start[b]; }

    /// (1 + n) x T matrix: row 0 is normality, rows 1..n are orthogonality.
    Eigen::MatrixXd equality_matrix() const;
    /// The unit vector e1 of length 1 + n.
    Eigen::VectorXd equality_rhs() const;

    /// Name of weight k in the w_{it} convention: "w01", "w12", ... ("w3_12" once an index exceeds 9).
    std::string weight_name(std::size_t k) const;
};

struct DualSolution {
    Eigen::VectorXd weights;
    Eigen::VectorXd lambdas;  // one per constraint block (block 1..m)
    double objective_value{0.0};
};

DualProgram build_dual(const StandardGp& s);

/// Number of primal terms minus number of variables minus one. May be negative.
long degree_of_difficulty(const StandardGp& s);

/// lambda_i = sum of the weights of constraint block i, i = 1..m.
Eigen::VectorXd block_sums(const DualProgram& d, const Eigen::VectorXd& w);

/// prod_k (c_k / w_k)^{w_k} * prod_i lambda_i^{lambda_i}, with t^t -> 1 at t = 0.
double dual_objective(const DualProgram& d, const Eigen::VectorXd& w);

struct LogDualValue {
    double value{0.0};
    Eigen::VectorXd gradient;  // +infinity where w_k = 0
};

/// Natural log of the dual objective and its gradient.
LogDualValue log_dual_objective(const DualProgram& d, const Eigen::VectorXd& w);

/// Infinity norm of A w - e1.
double equality_residual(const DualProgram& d, const Eigen::VectorXd& w);

/// Infinity norm of the log-dual gradient projected onto the null space of the
/// equality system restricted to the coordinates with w_k > boundary_eps.
double projected_stationarity(const DualProgram& d, const Eigen::VectorXd& w, double boundary_eps);

/// Orthonormal basis of the null space of `a` (columns), computed with a full SVD.
Eigen::MatrixXd null_space_basis(const Eigen::MatrixXd& a, double relative_tol = 1e-11);

}  // namespace gpsel

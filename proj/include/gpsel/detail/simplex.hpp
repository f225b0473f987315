#pragma once

#include <Eigen/Dense>

namespace gpsel::detail {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status{LpStatus::Infeasible};
    Eigen::VectorXd x;
    double objective{0.0};
};

// maximize c'x subject to A x = b, x >= 0.
// Dense two-phase tableau simplex with Bland's rule; meant for the tiny
// feasibility problems that arise from GP duals, not for general LP work.
LpResult maximize_standard_form(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                                double tol = 1e-9);

}  // namespace gpsel::detail

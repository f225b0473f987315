#include "gpsel/detail/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace gpsel::detail {

namespace {

class Tableau {
public:
    Tableau(Eigen::MatrixXd body, Eigen::VectorXd rhs, std::vector<Eigen::Index> basis)
        : t_(std::move(body)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

    Eigen::Index rows() const { return t_.rows(); }
    Eigen::Index cols() const { return t_.cols(); }
    const std::vector<Eigen::Index>& basis() const { return basis_; }
    double entry(Eigen::Index r, Eigen::Index c) const { return t_(r, c); }
    double rhs(Eigen::Index r) const { return rhs_(r); }

    void set_cost(const Eigen::VectorXd& cost) {
        cost_ = cost;
        reduced_ = cost;
        for (Eigen::Index r = 0; r < rows(); ++r) reduced_ -= cost(basis_[static_cast<std::size_t>(r)]) * t_.row(r).transpose();
    }

    double value() const {
        double v = 0.0;
        for (Eigen::Index r = 0; r < rows(); ++r) v += cost_(basis_[static_cast<std::size_t>(r)]) * rhs_(r);
        return v;
    }

    void pivot(Eigen::Index r, Eigen::Index e) {
        const double p = t_(r, e);
        t_.row(r) /= p;
        rhs_(r) /= p;
        for (Eigen::Index i = 0; i < rows(); ++i) {
            if (i == r) continue;
            const double f = t_(i, e);
            if (f != 0.0) {
                t_.row(i) -= f * t_.row(r);
                rhs_(i) -= f * rhs_(r);
            }
        }
        if (reduced_.size() == cols()) reduced_ -= reduced_(e) * t_.row(r).transpose();
        basis_[static_cast<std::size_t>(r)] = e;
    }

    // Runs Bland-rule iterations over the columns [0, allowed). Returns false when unbounded.
    bool optimize(Eigen::Index allowed, double tol) {
        const int max_pivots = 50000;
        for (int it = 0; it < max_pivots; ++it) {
            Eigen::Index enter = -1;
            for (Eigen::Index j = 0; j < allowed; ++j) {
                if (reduced_(j) > tol) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            Eigen::Index leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (Eigen::Index r = 0; r < rows(); ++r) {
                const double coef = t_(r, enter);
                if (coef > tol) {
                    const double ratio = rhs_(r) / coef;
                    if (ratio < best - 1e-12 ||
                        (std::abs(ratio - best) <= 1e-12 && leave >= 0 &&
                         basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)])) {
                        best = ratio;
                        leave = r;
                    }
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
        return true;
    }

private:
    Eigen::MatrixXd t_;
    Eigen::VectorXd rhs_;
    std::vector<Eigen::Index> basis_;
    Eigen::VectorXd cost_;
    Eigen::VectorXd reduced_;
};

}  // namespace

LpResult maximize_standard_form(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                                double tol) {
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();

    Eigen::MatrixXd body = Eigen::MatrixXd::Zero(m, n + m);
    Eigen::VectorXd rhs = b;
    body.leftCols(n) = a;
    for (Eigen::Index r = 0; r < m; ++r) {
        if (rhs(r) < 0.0) {
            body.row(r) *= -1.0;
            rhs(r) *= -1.0;
        }
        body(r, n + r) = 1.0;
    }
    std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
    for (Eigen::Index r = 0; r < m; ++r) basis[static_cast<std::size_t>(r)] = n + r;

    Tableau tab(std::move(body), std::move(rhs), std::move(basis));

    // Phase 1: maximize minus the sum of artificials.
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
    phase1.tail(m).setConstant(-1.0);
    tab.set_cost(phase1);
    tab.optimize(n + m, tol);

    const double scale = 1.0 + b.lpNorm<Eigen::Infinity>();
    LpResult result;
    if (-tab.value() > tol * scale) {
        result.status = LpStatus::Infeasible;
        return result;
    }

    // Drive zero-level artificials out of the basis where possible; rows where
    // this fails are linearly dependent and stay harmless at level zero.
    for (Eigen::Index r = 0; r < tab.rows(); ++r) {
        if (tab.basis()[static_cast<std::size_t>(r)] < n) continue;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (std::abs(tab.entry(r, j)) > tol) {
                tab.pivot(r, j);
                break;
            }
        }
    }

    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
    phase2.head(n) = c;
    tab.set_cost(phase2);
    if (!tab.optimize(n, tol)) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    result.status = LpStatus::Optimal;
    result.x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index r = 0; r < tab.rows(); ++r) {
        const Eigen::Index j = tab.basis()[static_cast<std::size_t>(r)];
        if (j < n) result.x(j) = std::max(0.0, tab.rhs(r));
    }
    result.objective = c.dot(result.x);
    return result;
}

}  // namespace gpsel::detail

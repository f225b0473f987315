#include "gpsel/dual.hpp"

#include <cmath>
#include <limits>

namespace gpsel {

Eigen::MatrixXd DualProgram::equality_matrix() const {
    const auto n = static_cast<Eigen::Index>(num_variables());
    const auto t = static_cast<Eigen::Index>(num_terms());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 1, t);
    if (num_blocks() > 0) {
        for (std::size_t k = block_start[0]; k < block_start[1]; ++k) a(0, static_cast<Eigen::Index>(k)) = 1.0;
    }
    a.bottomRows(n) = exponents.transpose();
    return a;
}

Eigen::VectorXd DualProgram::equality_rhs() const {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(num_variables()) + 1);
    b(0) = 1.0;
    return b;
}

std::string DualProgram::weight_name(std::size_t k) const {
    const std::size_t block = block_of[k];
    const std::size_t term = k - block_start[block] + 1;
    if (block < 10 && term < 10) return "w" + std::to_string(block) + std::to_string(term);
    return "w" + std::to_string(block) + "_" + std::to_string(term);
}

DualProgram build_dual(const StandardGp& s) {
    require_valid(s);
    const std::size_t n = s.num_variables();
    const std::size_t total = s.num_terms();

    DualProgram d;
    d.coefficients.resize(static_cast<Eigen::Index>(total));
    d.exponents.resize(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(n));
    d.block_of.reserve(total);
    d.block_start.reserve(s.constraints.size() + 2);

    std::size_t k = 0;
    auto append_block = [&](const Posynomial& p, std::size_t block) {
        d.block_start.push_back(k);
        for (const auto& term : p.terms) {
            const auto row = static_cast<Eigen::Index>(k);
            d.coefficients(row) = term.coefficient;
            for (std::size_t j = 0; j < n; ++j) d.exponents(row, static_cast<Eigen::Index>(j)) = term.exponents[j];
            d.block_of.push_back(block);
            ++k;
        }
    };
    append_block(s.objective, 0);
    for (std::size_t i = 0; i < s.constraints.size(); ++i) append_block(s.constraints[i], i + 1);
    d.block_start.push_back(k);
    return d;
}

long degree_of_difficulty(const StandardGp& s) {
    return static_cast<long>(s.num_terms()) - static_cast<long>(s.num_variables()) - 1;
}

Eigen::VectorXd block_sums(const DualProgram& d, const Eigen::VectorXd& w) {
    const std::size_t m = d.num_blocks() == 0 ? 0 : d.num_blocks() - 1;
    Eigen::VectorXd lambdas = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    for (std::size_t b = 1; b < d.num_blocks(); ++b) {
        double sum = 0.0;
        for (std::size_t k = d.block_start[b]; k < d.block_start[b + 1]; ++k) sum += w(static_cast<Eigen::Index>(k));
        lambdas(static_cast<Eigen::Index>(b - 1)) = sum;
    }
    return lambdas;
}

namespace {

void check_weights(const DualProgram& d, const Eigen::VectorXd& w) {
    if (static_cast<std::size_t>(w.size()) != d.num_terms()) {
        throw DomainError("expected " + std::to_string(d.num_terms()) + " dual weights, got " +
                          std::to_string(w.size()));
    }
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        if (!(w(k) >= 0.0) || !std::isfinite(w(k))) {
            throw DomainError("dual weight " + d.weight_name(static_cast<std::size_t>(k)) +
                              " must be finite and nonnegative");
        }
    }
}

// t * ln(t) with the continuous extension 0 at t = 0.
double xlogx(double t) { return t > 0.0 ? t * std::log(t) : 0.0; }

}  // namespace

LogDualValue log_dual_objective(const DualProgram& d, const Eigen::VectorXd& w) {
    check_weights(d, w);
    const Eigen::VectorXd lambdas = block_sums(d, w);
    constexpr double inf = std::numeric_limits<double>::infinity();

    LogDualValue out;
    out.gradient.resize(w.size());
    double value = 0.0;
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        const double wk = w(k);
        const double log_c = std::log(d.coefficients(k));
        const std::size_t block = d.block_of[static_cast<std::size_t>(k)];
        if (wk > 0.0) value += wk * log_c - xlogx(wk);
        if (block == 0) {
            out.gradient(k) = wk > 0.0 ? log_c - std::log(wk) - 1.0 : inf;
        } else {
            const double lambda = lambdas(static_cast<Eigen::Index>(block - 1));
            out.gradient(k) = wk > 0.0 ? log_c - std::log(wk) + std::log(lambda) : inf;
        }
    }
    for (Eigen::Index i = 0; i < lambdas.size(); ++i) value += xlogx(lambdas(i));
    out.value = value;
    return out;
}

double dual_objective(const DualProgram& d, const Eigen::VectorXd& w) {
    return std::exp(log_dual_objective(d, w).value);
}

double equality_residual(const DualProgram& d, const Eigen::VectorXd& w) {
    if (static_cast<std::size_t>(w.size()) != d.num_terms()) {
        throw DomainError("weight vector has wrong length");
    }
    return (d.equality_matrix() * w - d.equality_rhs()).lpNorm<Eigen::Infinity>();
}

Eigen::MatrixXd null_space_basis(const Eigen::MatrixXd& a, double relative_tol) {
    const Eigen::Index cols = a.cols();
    if (a.rows() == 0 || cols == 0) return Eigen::MatrixXd::Identity(cols, cols);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = relative_tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) ++rank;
    }
    return svd.matrixV().rightCols(cols - rank);
}

double projected_stationarity(const DualProgram& d, const Eigen::VectorXd& w, double boundary_eps) {
    std::vector<Eigen::Index> interior;
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        if (w(k) > boundary_eps) interior.push_back(k);
    }
    if (interior.empty()) return 0.0;
    const Eigen::MatrixXd a = d.equality_matrix();
    const Eigen::VectorXd full_grad = log_dual_objective(d, w).gradient;

    const auto count = static_cast<Eigen::Index>(interior.size());
    Eigen::MatrixXd a_sub(a.rows(), count);
    Eigen::VectorXd g_sub(count);
    for (Eigen::Index c = 0; c < count; ++c) {
        a_sub.col(c) = a.col(interior[static_cast<std::size_t>(c)]);
        g_sub(c) = full_grad(interior[static_cast<std::size_t>(c)]);
    }
    const Eigen::MatrixXd basis = null_space_basis(a_sub);
    if (basis.cols() == 0) return 0.0;
    return (basis * (basis.transpose() * g_sub)).lpNorm<Eigen::Infinity>();
}

}  // namespace gpsel

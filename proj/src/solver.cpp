#include "gpsel/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "gpsel/detail/simplex.hpp"

namespace gpsel {

void check_settings(const SolverSettings& cfg) {
    if (!(cfg.feasibility_tol > 0.0) || !(cfg.stationarity_tol > 0.0) || !(cfg.boundary_eps > 0.0) ||
        cfg.max_iterations <= 0) {
        throw DomainError("solver tolerances and iteration budget must be positive");
    }
}

std::string_view to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::IterationLimit: return "iteration_limit";
        case SolveStatus::NumericalError: return "numerical_error";
    }
    return "unknown";
}

std::string_view to_string(DualStatus s) {
    switch (s) {
        case DualStatus::Optimal: return "optimal";
        case DualStatus::Infeasible: return "infeasible";
        case DualStatus::Unbounded: return "unbounded";
        case DualStatus::IterationLimit: return "iteration_limit";
    }
    return "unknown";
}

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kBarrierStart = 1.0;
constexpr double kBarrierEnd = 1e-13;
constexpr double kBarrierShrink = 0.1;
constexpr double kCenteringTol = 1e-12;  // Newton decrement ending a barrier stage
constexpr double kBlowUp = 1e12;      // weights beyond this mean the dual is unbounded
constexpr double kDropBlock = 1e-8;   // block sums below this are treated as inactive after the barrier
constexpr double kLostBlock = 1e-11;  // block sum collapsing during the polish

// The coordinates currently allowed to move, with the equality system and
// null-space basis restricted to them.
struct Subspace {
    std::vector<Index> coords;
    MatrixXd a;      // (1+n) x |coords|
    MatrixXd basis;  // |coords| x d, orthonormal null-space basis of a

    Subspace(const MatrixXd& full_a, std::vector<Index> cs) : coords(std::move(cs)) {
        a.resize(full_a.rows(), static_cast<Index>(coords.size()));
        for (std::size_t c = 0; c < coords.size(); ++c) a.col(static_cast<Index>(c)) = full_a.col(coords[c]);
        basis = null_space_basis(a);
    }

    VectorXd gather(const VectorXd& w) const {
        VectorXd out(static_cast<Index>(coords.size()));
        for (std::size_t c = 0; c < coords.size(); ++c) out(static_cast<Index>(c)) = w(coords[c]);
        return out;
    }

    VectorXd scatter(const VectorXd& sub, Index full_size) const {
        VectorXd out = VectorXd::Zero(full_size);
        for (std::size_t c = 0; c < coords.size(); ++c) out(coords[c]) = sub(static_cast<Index>(c));
        return out;
    }
};

// Hessian of the log-dual restricted to the subspace coordinates:
// -1/w_k on the diagonal plus 1/lambda_i over every pair inside constraint block i.
MatrixXd log_dual_hessian(const DualProgram& d, const Subspace& sub, const VectorXd& w_full) {
    const VectorXd lambdas = block_sums(d, w_full);
    const auto size = static_cast<Index>(sub.coords.size());
    MatrixXd h = MatrixXd::Zero(size, size);
    for (Index r = 0; r < size; ++r) {
        const Index kr = sub.coords[static_cast<std::size_t>(r)];
        h(r, r) -= 1.0 / w_full(kr);
        const std::size_t br = d.block_of[static_cast<std::size_t>(kr)];
        if (br == 0) continue;
        const double inv_lambda = 1.0 / lambdas(static_cast<Index>(br - 1));
        for (Index c = 0; c < size; ++c) {
            const Index kc = sub.coords[static_cast<std::size_t>(c)];
            if (d.block_of[static_cast<std::size_t>(kc)] == br) h(r, c) += inv_lambda;
        }
    }
    return h;
}

// Solves (-hz) dz = gz for a negative (semi)definite hz, regularizing when needed.
VectorXd newton_direction(const MatrixXd& hz, const VectorXd& gz) {
    const MatrixXd neg = -hz;
    const double scale = std::max(1.0, neg.diagonal().cwiseAbs().maxCoeff());
    double reg = 0.0;
    for (int attempt = 0; attempt < 12; ++attempt) {
        MatrixXd m = neg;
        m.diagonal().array() += reg;
        Eigen::LDLT<MatrixXd> ldlt(m);
        if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
            VectorXd dz = ldlt.solve(gz);
            if (dz.allFinite() && gz.dot(dz) >= 0.0) return dz;
        }
        reg = reg == 0.0 ? 1e-14 * scale : reg * 100.0;
    }
    return gz;  // steepest ascent as a last resort
}

double max_step_to_boundary(const VectorXd& w, const VectorXd& dw) {
    double alpha = std::numeric_limits<double>::infinity();
    for (Index k = 0; k < w.size(); ++k) {
        if (dw(k) < 0.0) alpha = std::min(alpha, -w(k) / dw(k));
    }
    return alpha;
}

struct FeasibleStart {
    bool feasible{false};
    std::vector<bool> positive;  // coordinate can be positive on the feasible set
    VectorXd point;              // strictly positive on every such coordinate
};

// Finds which weights can be positive and a relative-interior starting point by
// repeatedly maximizing sum_{k in U} min(w_k, 1) over {A w = e1, w >= 0}.
FeasibleStart find_feasible_start(const MatrixXd& a, const VectorXd& b) {
    const Index rows = a.rows();
    const Index t = a.cols();
    FeasibleStart out;
    out.positive.assign(static_cast<std::size_t>(t), false);
    std::vector<Index> unknown(static_cast<std::size_t>(t));
    for (Index k = 0; k < t; ++k) unknown[static_cast<std::size_t>(k)] = k;
    std::vector<VectorXd> witnesses;

    while (!unknown.empty()) {
        const auto u = static_cast<Index>(unknown.size());
        // Columns: w (t) | v (u) | s (u) | r (u).
        MatrixXd lp = MatrixXd::Zero(rows + 2 * u, t + 3 * u);
        VectorXd rhs = VectorXd::Zero(rows + 2 * u);
        VectorXd cost = VectorXd::Zero(t + 3 * u);
        lp.topLeftCorner(rows, t) = a;
        rhs.head(rows) = b;
        for (Index i = 0; i < u; ++i) {
            const Index k = unknown[static_cast<std::size_t>(i)];
            lp(rows + i, t + i) = 1.0;        // v
            lp(rows + i, k) = -1.0;           // - w
            lp(rows + i, t + u + i) = 1.0;    // + s = 0
            lp(rows + u + i, t + i) = 1.0;    // v
            lp(rows + u + i, t + 2 * u + i) = 1.0;  // + r = 1
            rhs(rows + u + i) = 1.0;
            cost(t + i) = 1.0;
        }
        const auto res = detail::maximize_standard_form(lp, rhs, cost);
        if (res.status != detail::LpStatus::Optimal) {
            if (witnesses.empty()) return out;
            break;
        }
        std::vector<Index> remaining;
        bool progress = false;
        for (Index i = 0; i < u; ++i) {
            const Index k = unknown[static_cast<std::size_t>(i)];
            if (res.x(t + i) > 1e-9) {
                out.positive[static_cast<std::size_t>(k)] = true;
                progress = true;
            } else {
                remaining.push_back(k);
            }
        }
        witnesses.push_back(res.x.head(t));
        if (!progress) break;
        unknown = std::move(remaining);
    }

    out.feasible = true;
    out.point = VectorXd::Zero(t);
    for (const auto& wv : witnesses) out.point += wv;
    out.point /= static_cast<double>(witnesses.size());
    for (Index k = 0; k < t; ++k) {
        if (!out.positive[static_cast<std::size_t>(k)]) out.point(k) = 0.0;
    }
    return out;
}

// Moves the subspace coordinates onto {A_sub w = b} with a minimum-norm correction.
VectorXd project_onto_affine(const Subspace& sub, const VectorXd& w_sub, const VectorXd& b) {
    const VectorXd r = b - sub.a * w_sub;
    if (r.lpNorm<Eigen::Infinity>() == 0.0) return w_sub;
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(sub.a);
    return w_sub + cod.solve(r);
}

enum class StageOutcome { Converged, Unbounded, Budget, Stalled, BlockLost };

struct NewtonState {
    VectorXd w;  // full length
    int iterations{0};
    std::size_t lost_block{0};
};

// Maximizes g(w) + mu * sum ln w_k over the subspace (mu = 0 gives the plain polish).
StageOutcome newton_stage(const DualProgram& d, const Subspace& sub, NewtonState& st, double mu, double tol,
                          int budget, bool watch_blocks) {
    const Index full = static_cast<Index>(d.num_terms());
    const MatrixXd& basis = sub.basis;
    if (basis.cols() == 0) return StageOutcome::Converged;

    auto objective = [&](const VectorXd& w_full) {
        double v = log_dual_objective(d, w_full).value;
        if (mu > 0.0) {
            for (Index k : sub.coords) v += mu * std::log(w_full(k));
        }
        return v;
    };
    auto projected_gradient = [&](const VectorXd& w_full) {
        VectorXd g = sub.gather(log_dual_objective(d, w_full).gradient);
        if (mu > 0.0) g.array() += mu / sub.gather(w_full).array();
        return (basis.transpose() * g).norm();
    };

    for (int it = 0; it < 200; ++it) {
        if (st.iterations >= budget) return StageOutcome::Budget;
        ++st.iterations;

        const VectorXd w_sub = sub.gather(st.w);
        VectorXd grad = sub.gather(log_dual_objective(d, st.w).gradient);
        MatrixXd hess = log_dual_hessian(d, sub, st.w);
        if (mu > 0.0) {
            grad.array() += mu / w_sub.array();
            hess.diagonal().array() -= mu / w_sub.array().square();
        }
        const VectorXd gz = basis.transpose() * grad;
        if (mu == 0.0 && (basis * gz).lpNorm<Eigen::Infinity>() <= tol) return StageOutcome::Converged;

        const MatrixXd hz = basis.transpose() * hess * basis;
        const VectorXd dz = newton_direction(hz, gz);
        const double decrement = gz.dot(dz);
        if (mu > 0.0 && decrement < kCenteringTol) return StageOutcome::Converged;

        const VectorXd dw_sub = basis * dz;
        double alpha = std::min(1.0, 0.99 * max_step_to_boundary(w_sub, dw_sub));
        const double f0 = objective(st.w);
        // Below this the Armijo test compares rounding noise; fall back to the gradient norm.
        const bool in_noise = decrement < 1e-10 * (1.0 + std::abs(f0));
        const double g0 = in_noise ? gz.norm() : 0.0;
        bool accepted = false;
        VectorXd trial;
        for (int ls = 0; ls < 60; ++ls) {
            trial = sub.scatter(w_sub + alpha * dw_sub, full);
            bool positive = true;
            for (Index k : sub.coords) positive = positive && trial(k) > 0.0;
            if (positive) {
                const double f1 = objective(trial);
                if (std::isfinite(f1) && f1 >= f0 + 1e-4 * alpha * decrement) {
                    accepted = true;
                    break;
                }
                if (in_noise && std::isfinite(f1) && projected_gradient(trial) < (1.0 - 1e-4 * alpha) * g0) {
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            // No ascent possible at working precision; the caller checks stationarity.
            return mu > 0.0 ? StageOutcome::Converged : StageOutcome::Stalled;
        }
        st.w = trial;
        if (st.w.lpNorm<Eigen::Infinity>() > kBlowUp) return StageOutcome::Unbounded;

        if (watch_blocks) {
            const VectorXd lambdas = block_sums(d, st.w);
            for (Index i = 0; i < lambdas.size(); ++i) {
                bool in_sub = false;
                for (Index k : sub.coords) in_sub = in_sub || d.block_of[static_cast<std::size_t>(k)] == static_cast<std::size_t>(i + 1);
                if (in_sub && lambdas(i) < kLostBlock) {
                    st.lost_block = static_cast<std::size_t>(i + 1);
                    return StageOutcome::BlockLost;
                }
            }
        }
    }
    return mu > 0.0 ? StageOutcome::Converged : StageOutcome::Stalled;
}

// Primal point implied by the equality multipliers of the dual optimum:
// grad g = A^T nu on the active coordinates, y_j = -nu_j.
VectorXd multiplier_point(const DualProgram& d, const Subspace& sub, const VectorXd& w_full) {
    const VectorXd grad = sub.gather(log_dual_objective(d, w_full).gradient);
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(sub.a.transpose());
    const VectorXd nu = cod.solve(grad);
    return -nu.tail(static_cast<Index>(d.num_variables()));
}

double block_value_at(const DualProgram& d, std::size_t block, const VectorXd& y) {
    double sum = 0.0;
    for (std::size_t k = d.block_start[block]; k < d.block_start[block + 1]; ++k) {
        const auto row = static_cast<Index>(k);
        sum += d.coefficients(row) * std::exp(d.exponents.row(row).dot(y));
    }
    return sum;
}

struct PolishResult {
    bool ok{false};
    VectorXd w;
};

// Drops inactive constraint blocks and runs barrier-free Newton on g itself,
// adjusting the active set until the remaining blocks stay positive and the
// dropped ones are satisfied by the multiplier point.
PolishResult polish(const DualProgram& d, const MatrixXd& full_a, const VectorXd& b,
                    const std::vector<Index>& movable, const VectorXd& barrier_w, const SolverSettings& cfg,
                    NewtonState& budget_state) {
    const std::size_t blocks = d.num_blocks();
    std::vector<bool> dropped(blocks, false);
    const VectorXd lambdas = block_sums(d, barrier_w);
    for (std::size_t i = 1; i < blocks; ++i) dropped[i] = lambdas(static_cast<Index>(i - 1)) <= kDropBlock;

    for (std::size_t round = 0; round < 2 * blocks + 2; ++round) {
        std::vector<Index> coords;
        for (Index k : movable) {
            if (!dropped[d.block_of[static_cast<std::size_t>(k)]]) coords.push_back(k);
        }
        Subspace sub(full_a, coords);
        VectorXd w_sub = project_onto_affine(sub, sub.gather(barrier_w), b);
        if ((w_sub.array() <= 0.0).any()) return {};
        if ((sub.a * w_sub - b).lpNorm<Eigen::Infinity>() > 1e-9) return {};

        NewtonState st{sub.scatter(w_sub, static_cast<Index>(d.num_terms())), budget_state.iterations, 0};
        const auto outcome =
            newton_stage(d, sub, st, 0.0, 0.1 * cfg.stationarity_tol, cfg.max_iterations, /*watch_blocks=*/true);
        budget_state.iterations = st.iterations;
        if (outcome == StageOutcome::BlockLost) {
            dropped[st.lost_block] = true;
            continue;
        }
        if (outcome != StageOutcome::Converged && outcome != StageOutcome::Stalled) return {};

        // A dropped block must be satisfied at the implied primal point, else it is active.
        const VectorXd y = multiplier_point(d, sub, st.w);
        bool readded = false;
        for (std::size_t i = 1; i < blocks; ++i) {
            if (dropped[i] && block_value_at(d, i, y) > 1.0 + 1e-7) {
                dropped[i] = false;
                readded = true;
            }
        }
        if (readded) continue;
        return {true, st.w};
    }
    return {};
}

DualSolveResult finish(const DualProgram& d, VectorXd w, DualSolveResult out, const SolverSettings& cfg) {
    for (Index k = 0; k < w.size(); ++k) w(k) = std::max(0.0, w(k));
    out.solution.weights = w;
    out.solution.lambdas = block_sums(d, w);
    out.solution.objective_value = dual_objective(d, w);
    out.equality_residual = equality_residual(d, w);
    out.stationarity = projected_stationarity(d, w, cfg.boundary_eps);
    if (out.status == DualStatus::Optimal &&
        (out.equality_residual > cfg.feasibility_tol || out.stationarity > cfg.stationarity_tol)) {
        out.status = DualStatus::IterationLimit;
        if (out.message.empty()) out.message = "dual maximizer did not reach the requested tolerances";
    }
    return out;
}

}  // namespace

DualSolveResult solve_dual(const DualProgram& d, const SolverSettings& cfg) {
    check_settings(cfg);
    const MatrixXd a = d.equality_matrix();
    const VectorXd b = d.equality_rhs();
    const auto t = static_cast<Index>(d.num_terms());

    DualSolveResult out;
    out.forced_zero.assign(d.num_terms(), false);

    // Zero degree of difficulty with independent columns: the dual point is unique.
    if (null_space_basis(a).cols() == 0) {
        Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(a);
        const VectorXd w = cod.solve(b);
        const double residual = (a * w - b).lpNorm<Eigen::Infinity>();
        if (residual > 1e-9 || (w.array() < -cfg.boundary_eps).any()) {
            out.status = DualStatus::Infeasible;
            out.message = "normality and orthogonality admit no nonnegative solution";
            return out;
        }
        for (Index k = 0; k < t; ++k) out.forced_zero[static_cast<std::size_t>(k)] = w(k) <= cfg.boundary_eps;
        out.status = DualStatus::Optimal;
        return finish(d, w, std::move(out), cfg);
    }

    const FeasibleStart start = find_feasible_start(a, b);
    if (!start.feasible) {
        out.status = DualStatus::Infeasible;
        out.message = "normality and orthogonality admit no nonnegative solution";
        return out;
    }
    std::vector<Index> movable;
    for (Index k = 0; k < t; ++k) {
        out.forced_zero[static_cast<std::size_t>(k)] = !start.positive[static_cast<std::size_t>(k)];
        if (start.positive[static_cast<std::size_t>(k)]) movable.push_back(k);
    }

    Subspace sub(a, movable);
    VectorXd w_sub = project_onto_affine(sub, sub.gather(start.point), b);
    if ((w_sub.array() <= 0.0).any()) w_sub = sub.gather(start.point);
    NewtonState st{sub.scatter(w_sub, t), 0, 0};

    if (sub.basis.cols() == 0) {
        out.status = DualStatus::Optimal;
        return finish(d, st.w, std::move(out), cfg);
    }

    for (double mu = kBarrierStart; mu >= kBarrierEnd * 0.999; mu *= kBarrierShrink) {
        const auto outcome = newton_stage(d, sub, st, mu, 0.0, cfg.max_iterations, false);
        if (outcome == StageOutcome::Unbounded) {
            out.status = DualStatus::Unbounded;
            out.iterations = st.iterations;
            out.message = "dual objective grows without bound along a feasible ray";
            out.solution.weights = st.w;
            return out;
        }
        if (outcome == StageOutcome::Budget) {
            out.status = DualStatus::IterationLimit;
            out.iterations = st.iterations;
            out.message = "iteration budget exhausted in the barrier phase";
            return finish(d, st.w, std::move(out), cfg);
        }
    }

    const PolishResult polished = polish(d, a, b, movable, st.w, cfg, st);
    out.iterations = st.iterations;
    out.status = DualStatus::Optimal;
    if (polished.ok) return finish(d, polished.w, std::move(out), cfg);
    out.message = "active-set polish failed; returning the barrier iterate";
    return finish(d, st.w, std::move(out), cfg);
}

namespace {

struct Recovery {
    std::vector<double> x;
    double residual{0.0};
};

Recovery recover(const StandardGp& s, const DualSolution& ds, double boundary_eps) {
    const DualProgram d = build_dual(s);
    if (static_cast<std::size_t>(ds.weights.size()) != d.num_terms()) {
        throw DomainError("dual solution does not match the program");
    }
    const auto n = static_cast<Index>(d.num_variables());
    const VectorXd lambdas = block_sums(d, ds.weights);
    // ln Z from the weights, so tiny or huge optimal values do not underflow here.
    const double log_z = log_dual_objective(d, ds.weights).value;
    if (!std::isfinite(log_z)) throw RecoveryError("dual objective value is not finite and positive");

    std::vector<Index> rows;
    std::vector<double> rhs;
    for (std::size_t k = 0; k < d.num_terms(); ++k) {
        const auto row = static_cast<Index>(k);
        const double wk = ds.weights(row);
        if (wk <= boundary_eps) continue;
        const std::size_t block = d.block_of[k];
        if (block == 0) {
            rows.push_back(row);
            rhs.push_back(std::log(wk) + log_z - std::log(d.coefficients(row)));
        } else {
            const double lambda = lambdas(static_cast<Index>(block - 1));
            if (lambda <= boundary_eps) continue;
            rows.push_back(row);
            rhs.push_back(std::log(wk / lambda) - std::log(d.coefficients(row)));
        }
    }

    MatrixXd m(static_cast<Index>(rows.size()), n);
    VectorXd r(static_cast<Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        m.row(static_cast<Index>(i)) = d.exponents.row(rows[i]);
        r(static_cast<Index>(i)) = rhs[i];
    }
    VectorXd y = VectorXd::Zero(n);
    if (n > 0 && m.rows() > 0) y = Eigen::CompleteOrthogonalDecomposition<MatrixXd>(m).solve(r);

    Recovery out;
    out.residual = m.rows() > 0 ? (m * y - r).lpNorm<Eigen::Infinity>() : 0.0;
    out.x.resize(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) out.x[static_cast<std::size_t>(j)] = std::exp(y(j));
    return out;
}

}  // namespace

std::vector<double> recover_primal(const StandardGp& s, const DualSolution& ds, double boundary_eps,
                                   double consistency_tol) {
    Recovery rec = recover(s, ds, boundary_eps);
    if (!(rec.residual <= consistency_tol)) {
        throw RecoveryError("primal recovery system is inconsistent (residual " + std::to_string(rec.residual) +
                            "); the dual weights are not optimal");
    }
    return std::move(rec.x);
}

SolveReport solve(const StandardGp& s, const SolverSettings& cfg) {
    require_valid(s);
    check_settings(cfg);
    const DualProgram d = build_dual(s);
    const DualSolveResult dual = solve_dual(d, cfg);

    SolveReport rep;
    rep.dual = dual.solution;
    rep.iterations = dual.iterations;
    rep.residuals.equality = dual.equality_residual;
    rep.residuals.stationarity = dual.stationarity;
    rep.message = dual.message;

    switch (dual.status) {
        case DualStatus::Infeasible:
            rep.status = SolveStatus::Unbounded;
            rep.message = "dual infeasible: the primal infimum is not attained (objective unbounded below in log space)";
            return rep;
        case DualStatus::Unbounded:
            rep.status = SolveStatus::Infeasible;
            rep.message = "dual unbounded: the primal constraints are inconsistent";
            return rep;
        case DualStatus::IterationLimit:
            rep.status = SolveStatus::IterationLimit;
            return rep;
        case DualStatus::Optimal:
            break;
    }

    bool canonical = true;
    for (std::size_t k = 0; k < d.num_terms(); ++k) {
        if (!dual.forced_zero[k]) continue;
        const std::size_t block = d.block_of[k];
        if (block == 0 || dual.solution.lambdas(static_cast<Index>(block - 1)) > cfg.boundary_eps) canonical = false;
    }

    Recovery rec;
    try {
        rec = recover(s, dual.solution, cfg.boundary_eps);
    } catch (const RecoveryError& e) {
        rep.status = SolveStatus::NumericalError;
        rep.message = e.what();
        return rep;
    }
    rep.residuals.recovery = rec.residual;
    rep.primal_x = rec.x;
    const bool representable = std::all_of(rec.x.begin(), rec.x.end(), [](double v) { return v > 0.0 && std::isfinite(v); });
    if (!representable) {
        rep.status = SolveStatus::NumericalError;
        rep.message = "the optimal point lies outside the double precision range";
        return rep;
    }
    rep.objective_value = evaluate(s.objective, rep.primal_x);
    if (!(rep.objective_value > 0.0) || !std::isfinite(rep.objective_value)) {
        rep.status = SolveStatus::NumericalError;
        rep.message = "the optimal value lies outside the double precision range";
        return rep;
    }
    double infeasibility = 0.0;
    for (const auto& c : s.constraints) infeasibility = std::max(infeasibility, evaluate(c, rep.primal_x) - 1.0);
    rep.residuals.primal_infeasibility = infeasibility;
    rep.duality_gap = std::abs(rep.objective_value - dual.solution.objective_value) / rep.objective_value;

    if (rec.residual <= 1e-6 && rep.duality_gap <= kMaxRelativeGap && infeasibility <= kPrimalFeasibilityTol) {
        rep.status = SolveStatus::Optimal;
        rep.message.clear();
        return rep;
    }
    if (!canonical) {
        rep.status = SolveStatus::Unbounded;
        rep.message = "the primal infimum is approached only at the boundary and is not attained";
        return rep;
    }
    rep.status = SolveStatus::NumericalError;
    rep.message = "primal recovery failed the gap or feasibility check";
    return rep;
}

}  // namespace gpsel

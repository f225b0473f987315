#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gpsel/dual.hpp"
#include "gpsel/posynomial.hpp"

namespace gpsel {

struct SolverSettings {
    double feasibility_tol{1e-10};   // infinity norm of A w - e1
    double stationarity_tol{1e-8};   // projected log-dual gradient, interior coordinates only
    double boundary_eps{1e-12};      // weights at or below this count as zero
    int max_iterations{10000};       // Newton iterations across all phases
};

/// Throws DomainError unless every tolerance and the iteration budget are positive.
void check_settings(const SolverSettings& cfg);

/// Outcome of the dual maximization, stated in terms of the dual program.
enum class DualStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct DualSolveResult {
    DualStatus status{DualStatus::IterationLimit};
    DualSolution solution;  // best iterate; meaningful for Optimal and IterationLimit
    double equality_residual{0.0};
    double stationarity{0.0};
    int iterations{0};
    // Weights that vanish on every dual-feasible point. A program with such
    // weights is not canonical and its primal infimum may not be attained.
    std::vector<bool> forced_zero;
    std::string message;
};

DualSolveResult solve_dual(const DualProgram& d, const SolverSettings& cfg = {});

class RecoveryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Primal point from near-optimal dual weights via the log-linear system
///   objective terms:          a_0t . y = ln(w_0t Z) - ln C_0t
///   active constraint terms:  a_it . y = ln(w_it / lambda_i) - ln C_it
/// solved in the least-squares (minimum-norm) sense; x = exp(y).
/// Throws RecoveryError when the system is inconsistent beyond `consistency_tol`.
std::vector<double> recover_primal(const StandardGp& s, const DualSolution& ds, double boundary_eps = 1e-12,
                                   double consistency_tol = 1e-6);

/// Outcome of a full solve, stated in terms of the primal program.
enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit, NumericalError };

std::string_view to_string(SolveStatus s);
std::string_view to_string(DualStatus s);

struct KktResiduals {
    double equality{0.0};              // dual equality residual
    double stationarity{0.0};          // projected dual gradient
    double primal_infeasibility{0.0};  // max_i (f_i(x) - 1)^+
    double recovery{0.0};              // log-linear recovery residual

    bool operator==(const KktResiduals&) const = default;
};

struct SolveReport {
    SolveStatus status{SolveStatus::NumericalError};
    std::vector<double> primal_x;
    DualSolution dual;
    double objective_value{0.0};  // Z = f_0(primal_x)
    double duality_gap{0.0};      // |f_0(x) - dual value| / f_0(x)
    KktResiduals residuals;
    int iterations{0};
    std::string message;
};

inline constexpr double kMaxRelativeGap = 1e-6;
inline constexpr double kPrimalFeasibilityTol = 1e-8;

/// build_dual -> solve_dual -> recover_primal -> gap and feasibility checks.
SolveReport solve(const StandardGp& s, const SolverSettings& cfg = {});

}  // namespace gpsel

#include "gpsel/oracle.hpp"

#include <cmath>
#include <limits>

namespace gpsel {

namespace {

struct FlatTerms {
    std::vector<double> log_coef;
    std::vector<double> exps;  // term-major, n per term
};

FlatTerms flatten(const Posynomial& p) {
    FlatTerms f;
    for (const auto& t : p.terms) {
        f.log_coef.push_back(std::log(t.coefficient));
        f.exps.insert(f.exps.end(), t.exponents.begin(), t.exponents.end());
    }
    return f;
}

double eval_log_point(const FlatTerms& f, const std::vector<double>& y) {
    const std::size_t n = y.size();
    double sum = 0.0;
    for (std::size_t t = 0; t < f.log_coef.size(); ++t) {
        double e = f.log_coef[t];
        for (std::size_t j = 0; j < n; ++j) e += f.exps[t * n + j] * y[j];
        sum += std::exp(e);
    }
    return sum;
}

}  // namespace

OracleResult brute_force_oracle(const StandardGp& s, double box_log_halfwidth, int grid_points_per_dim,
                                int refinement_passes) {
    require_valid(s);
    const std::size_t n = s.num_variables();
    if (n > kOracleMaxVariables) throw DomainError("grid oracle supports at most 4 variables");
    if (!(box_log_halfwidth > 0.0) || grid_points_per_dim < 2 || refinement_passes < 0) {
        throw DomainError("grid oracle needs a positive half-width and at least two points per dimension");
    }

    const FlatTerms objective = flatten(s.objective);
    std::vector<FlatTerms> constraints;
    for (const auto& c : s.constraints) constraints.push_back(flatten(c));

    OracleResult out;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_y;
    std::vector<double> center(n, 0.0);
    double halfwidth = box_log_halfwidth;
    const auto g = static_cast<std::size_t>(grid_points_per_dim);

    for (int pass = 0; pass <= refinement_passes; ++pass) {
        const double step = 2.0 * halfwidth / static_cast<double>(g - 1);
        std::vector<std::size_t> idx(n, 0);
        std::vector<double> y(n);
        while (true) {
            for (std::size_t j = 0; j < n; ++j) y[j] = center[j] - halfwidth + step * static_cast<double>(idx[j]);
            ++out.evaluations;
            bool feasible = true;
            for (const auto& c : constraints) {
                if (eval_log_point(c, y) > 1.0 + 1e-9) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) {
                const double v = eval_log_point(objective, y);
                if (v < best) {
                    best = v;
                    best_y = y;
                }
            }
            std::size_t j = 0;
            while (j < n && ++idx[j] == g) idx[j++] = 0;
            if (j == n) break;
        }
        if (best_y.empty()) return out;
        center = best_y;
        halfwidth = 2.0 * step;
    }

    out.feasible = true;
    out.value = best;
    out.x.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.x[j] = std::exp(best_y[j]);
    return out;
}

}  // namespace gpsel

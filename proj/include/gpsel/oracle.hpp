#pragma once

#include <cstddef>
#include <vector>

#include "gpsel/posynomial.hpp"

namespace gpsel {

struct OracleResult {
    bool feasible{false};  // false: no grid point satisfied the constraints
    std::vector<double> x;
    double value{0.0};
    std::size_t evaluations{0};
};

inline constexpr std::size_t kOracleMaxVariables = 4;

/// Exhaustive primal search over y = ln x in [-L, L]^n on a regular grid,
/// followed by `refinement_passes` finer grids spanning +-2 cells around the
/// incumbent. A point is feasible when every constraint is <= 1 + 1e-9.
/// Independent of the dual machinery; intended for verification only.
OracleResult brute_force_oracle(const StandardGp& s, double box_log_halfwidth, int grid_points_per_dim,
                                int refinement_passes = 2);

}  // namespace gpsel

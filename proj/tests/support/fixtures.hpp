#pragma once

#include <string>

#include "gpsel/posynomial.hpp"

namespace gpsel::test {

inline std::string problem_path(const std::string& name) { return std::string(GPSEL_PROBLEMS_DIR) + "/" + name + ".json"; }

/// min c x1^p + 3 x2^-3 + x1 x2  s.t.  a x1 + x2 <= 1
inline GpProblem example1(double c, double p, double a) {
    GpProblem g;
    g.variables = make_variables(2);
    g.objective.terms = {{c, {p, 0}}, {3, {0, -3}}, {1, {1, 1}}};
    g.constraints = {{Posynomial{{{a, {1, 0}}, {1, {0, 1}}}}, 1.0}};
    return g;
}

/// min c x1 + 10 x2 + 4 x3 + 2 x4
/// s.t. a x1^p x4^-2 + x2^2 x4^-2 <= 1,  100 / (x1 x2 x3) <= 1
inline GpProblem example2(double c, double p, double a) {
    GpProblem g;
    g.variables = make_variables(4);
    g.objective.terms = {{c, {1, 0, 0, 0}}, {10, {0, 1, 0, 0}}, {4, {0, 0, 1, 0}}, {2, {0, 0, 0, 1}}};
    g.constraints = {{Posynomial{{{a, {p, 0, 0, -2}}, {1, {0, 2, 0, -2}}}}, 1.0},
                     {Posynomial{{{100, {-1, -1, -1, 0}}}}, 1.0}};
    return g;
}

// Reported optimal dual weights, in term order.
inline constexpr double kExample1Weights[] = {0.4387805, 0.5463127, 0.01490681, 0.4238737, 1.624031};
inline constexpr double kExample2Weights[] = {0.3333372, 0.2777762, 0.3333285, 0.05555811,
                                              0.2903339e-05, 0.02777615, 0.3333285};

}  // namespace gpsel::test

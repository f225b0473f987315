#include "random_gp.hpp"

#include <algorithm>
#include <cmath>

namespace gpsel::test {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

GpProblem random_gp(std::mt19937_64& rng, const RandomGpSpec& spec) {
    std::uniform_real_distribution<double> coef(spec.coef_lo, spec.coef_hi);
    std::uniform_real_distribution<double> expo(spec.exp_lo, spec.exp_hi);
    std::uniform_real_distribution<double> logx(-1.0, 1.0);
    std::uniform_real_distribution<double> slack(1.05, 2.0);

    const std::size_t n = pick(rng, 1, spec.max_variables);
    const std::size_t total = pick(rng, std::min(n + 1, spec.max_terms), spec.max_terms);
    const std::size_t m = pick(rng, 0, std::min(spec.max_constraints, total - 1));

    // Split the terms: at least one per posynomial, the rest spread at random.
    std::vector<std::size_t> counts(m + 1, 1);
    for (std::size_t extra = total - (m + 1); extra > 0; --extra) ++counts[pick(rng, 0, m)];

    auto random_posynomial = [&](std::size_t terms) {
        Posynomial p;
        for (std::size_t t = 0; t < terms; ++t) {
            Monomial mono{coef(rng), {}};
            for (std::size_t j = 0; j < n; ++j) mono.exponents.push_back(expo(rng));
            p.terms.push_back(std::move(mono));
        }
        return p;
    };

    std::vector<double> x0(n);
    for (auto& v : x0) v = std::exp(logx(rng));

    GpProblem g;
    g.variables = make_variables(n);
    g.objective = random_posynomial(counts[0]);
    for (std::size_t i = 1; i <= m; ++i) {
        Posynomial body = random_posynomial(counts[i]);
        const double bound = evaluate(body, x0) * slack(rng);
        g.constraints.push_back({std::move(body), bound});
    }
    return g;
}

std::vector<double> random_point(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> x(n);
    for (auto& v : x) v = u(rng);
    return x;
}

}  // namespace gpsel::test

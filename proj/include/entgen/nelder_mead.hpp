// nelder_mead.hpp — derivative-free simplex minimizer

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace entgen::optim {

struct NelderMeadOptions {
    int max_iter = 200;
    double ftol = 1e-12;        // stop once max f - min f over the simplex falls below this
    double initial_step = 0.5;  // edge length of the starting simplex along each axis
};

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

// Standard coefficients (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
template <class F>
NelderMeadResult nelder_mead(F&& f, const std::vector<double>& x0, const NelderMeadOptions& opts = {}) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += opts.initial_step;
    for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    NelderMeadResult res;
    int it = 0;
    for (; it < opts.max_iter; ++it) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
        if (fv[worst] - fv[best] <= opts.ftol) {
            res.converged = true;
            break;
        }
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i)
            if (i != worst)
                for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d] / static_cast<double>(n);

        auto along = [&](double coef, std::vector<double>& out) {
            for (std::size_t d = 0; d < n; ++d) out[d] = centroid[d] + coef * (simplex[worst][d] - centroid[d]);
        };

        along(-1.0, trial);
        const double fr = eval(trial);
        if (fr < fv[best]) {
            along(-2.0, trial2);
            const double fe = eval(trial2);
            if (fe < fr) {
                simplex[worst] = trial2;
                fv[worst] = fe;
            } else {
                simplex[worst] = trial;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second]) {
            simplex[worst] = trial;
            fv[worst] = fr;
            continue;
        }
        // contraction: outside if the reflected point improved on the worst, inside otherwise
        const bool outside = fr < fv[worst];
        along(outside ? -0.5 : 0.5, trial2);
        const double fc = eval(trial2);
        if (fc < (outside ? fr : fv[worst])) {
            simplex[worst] = trial2;
            fv[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t d = 0; d < n; ++d) simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
            fv[i] = eval(simplex[i]);
        }
    }
    const std::size_t best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    res.x = simplex[best];
    res.fx = fv[best];
    res.iterations = it;
    res.evaluations = evals;
    return res;
}

} // namespace entgen::optim

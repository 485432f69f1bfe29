#pragma once

#include <limits>
#include <utility>
#include <vector>

namespace uavjam {

struct DinkelbachOptions {
    double tol = 1e-6;
    int max_iter = 30;
};

template <class Point>
struct DinkelbachResult {
    Point x;
    std::vector<double> lambdas; // lambda_0 = N(x0)/D(x0), then one entry per parametric solve
    double residual = std::numeric_limits<double>::infinity(); // N(x_k) - lambda_{k-1} D(x_k) of the last solve
    int iterations = 0;
    bool converged = false;
    bool warning = false; // an inner solve failed to improve the parametric objective
};

/// Dinkelbach iteration for max N(x)/D(x) with D > 0.
/// Problem must provide numerator(x), denominator(x), and maximize_parametric(lambda, start)
/// returning a point whose N - lambda*D is no worse than at `start`.
template <class Problem, class Point>
DinkelbachResult<Point> dinkelbach(const Problem& problem, Point x0, const DinkelbachOptions& opt) {
    DinkelbachResult<Point> res;
    res.x = std::move(x0);
    double lambda = problem.numerator(res.x) / problem.denominator(res.x);
    res.lambdas.push_back(lambda);
    for (int k = 0; k < opt.max_iter; ++k) {
        Point y = problem.maximize_parametric(lambda, res.x);
        const double n = problem.numerator(y);
        const double d = problem.denominator(y);
        const double f = n - lambda * d;
        ++res.iterations;
        if (!(f > 0.0)) {
            // parametric optimum is the incumbent itself
            res.warning = f < 0.0;
            res.residual = 0.0;
            res.converged = true;
            break;
        }
        res.x = std::move(y);
        res.residual = f;
        lambda = n / d;
        res.lambdas.push_back(lambda);
        if (f < opt.tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

} // namespace uavjam

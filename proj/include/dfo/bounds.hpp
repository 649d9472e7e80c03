#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dfo/problems.hpp"
#include "dfo/sampling.hpp"

namespace dfo {

/// Scheme constant kappa in the gradient error bounds
///   quadratic model: ||g - grad f|| <= (1/6) M h^2 kappa,
///   linear model:    ||g - grad f|| <= (1/2) L h  kappa.
/// CB: sqrt(n), RB: n, CMPB: sqrt(n+1), RMPB: sqrt(n).
double kappa(BasisKind kind, ModelOrder model, std::size_t n);

struct ErrorBoundInput {
    double lipschitz = 0.0;  // M (quadratic) or L (linear)
    double h = 0.0;
    std::size_t n = 0;
    BasisKind kind = BasisKind::CoordinateBasis;
    ModelOrder model = ModelOrder::Quadratic;
};

double gradient_bound(const ErrorBoundInput& input);

struct OrderFit {
    double slope = 0.0;
    std::size_t used = 0;
    std::vector<std::size_t> excluded;  // indices with nonpositive error
};

/// Least-squares slope of log(error) against log(h).  Needs at least
/// three usable pairs; nonpositive errors are excluded and reported.
OrderFit observed_order(std::span<const std::pair<double, double>> pairs);

/// Sampled lower estimate of the Hessian Lipschitz constant:
/// max ||H(a) - H(b)|| / ||a - b|| over random pairs in a ball around x.
/// Requires the objective's analytic Hessian; deterministic per seed.
double estimate_lipschitz(const Objective& objective,
                          std::span<const double> x, double radius,
                          std::size_t trials, std::uint64_t seed = 1);

}  // namespace dfo

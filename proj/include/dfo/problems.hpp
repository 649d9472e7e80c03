#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace dfo {

/// A test objective: evaluator, standard start, and analytic derivatives
/// where the collection provides them.  Objectives are immutable
/// descriptors; wrap one in a CountingObjective to track evaluations.
struct Objective {
    std::string name;
    std::size_t n = 0;
    std::function<double(std::span<const double>)> evaluate;
    std::function<std::vector<double>(std::span<const double>)> gradient;
    std::function<std::vector<double>(std::span<const double>)> diag_hessian;
    // Row-major n x n Hessian; only set where a closed form is on hand.
    std::function<std::vector<double>(std::span<const double>)> hessian;
    std::vector<double> start;
};

/// Rosenbrock's function, n = 2:
///   f(y) = (1 - y1)^2 + 100 (y2 - y1^2)^2
/// with analytic gradient, Hessian, and Hessian diagonal.
Objective rosenbrock();

/// The registered objectives, keyed by name:
/// rosenbrock, freudenstein_roth, beale, helical_valley, powell_singular,
/// woods, trigonometric, brown_almost_linear, broyden_tridiagonal.
const std::map<std::string, Objective>& registry();

/// Throws std::out_of_range with the offending name.
const Objective& lookup(const std::string& name);

/// Per-run evaluation counter around an objective.
class CountingObjective {
public:
    explicit CountingObjective(const Objective& objective)
        : objective_(&objective) {}

    double operator()(std::span<const double> x) {
        ++count_;
        return objective_->evaluate(x);
    }

    std::uint64_t count() const { return count_; }
    void reset() { count_ = 0; }
    const Objective& objective() const { return *objective_; }

private:
    const Objective* objective_;
    std::uint64_t count_ = 0;
};

}  // namespace dfo

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dfo/bases.hpp"

namespace dfo {

enum class ModelOrder { Linear, Quadratic };

std::string_view to_string(ModelOrder model);
ModelOrder parse_model_order(std::string_view name);  // "linear"/"quadratic"

/// How to place interpolation points around x: basis kind, dimension,
/// sampling radius h (points x + h u_j), and for quadratic models the
/// second radius h' = eta h.
struct SamplingScheme {
    BasisKind kind = BasisKind::CoordinateBasis;
    std::size_t n = 0;
    double h = 1e-3;
    double eta = -1.0;
    ModelOrder model = ModelOrder::Quadratic;

    std::size_t direction_count() const { return dfo::direction_count(kind, n); }

    // Interpolation points: m for linear, 2m for quadratic.
    std::size_t point_count() const {
        return model == ModelOrder::Quadratic ? 2 * direction_count()
                                              : direction_count();
    }

    /// Throws std::invalid_argument on h = 0 (or |h| < 1e-300), n < 2,
    /// or eta in {0, 1} for quadratic models.
    void validate() const;
};

/// Function values at the interpolation points.  f0 = f(x); f holds the
/// f_j at x + h u_j; fprime the f_j' at x + eta h u_j (empty for linear
/// models).  Callers evaluate the points from sample_points() themselves
/// and fill this in; the library never calls f here.
struct SampleSet {
    double f0 = 0.0;
    std::vector<double> f;
    std::vector<double> fprime;
};

/// Right-hand sides after block elimination: y = h U^T g and
/// z = (1/2) h^2 W^T d.  For minimal positive bases the (n+1)th
/// components are split off into y_extra / z_extra.
struct DifferenceVectors {
    std::vector<double> y;
    std::vector<double> z;
    std::optional<double> y_extra;
    std::optional<double> z_extra;
};

/// Points at which the caller must evaluate f, in the fixed order
/// [x_1..x_m] then [x_1'..x_m'] (primed block absent for linear models).
std::vector<std::vector<double>> sample_points(std::span<const double> x,
                                               const SamplingScheme& scheme);

/// Streaming variant: visits the same points in the same order through a
/// single reused buffer, so total extra storage stays O(n).  The visitor
/// receives the 0-based position in the sample_points() ordering.
void visit_sample_points(
    std::span<const double> x, const SamplingScheme& scheme,
    const std::function<void(std::size_t, std::span<const double>)>& visit);

/// Eliminates the block system into y and z:
///   y = (eta^2 df - df') / (eta (eta - 1)),
///   z = (eta df - df')   / (eta (1 - eta)),
/// which at eta = -1 reduce to the half-difference / half-sum forms
///   y_j = (f_j - f_j') / 2,   z_j = (f_j + f_j' - 2 f(x)) / 2,
/// used verbatim in that case.  Quadratic models only; throws
/// std::invalid_argument when fprime is missing or lengths mismatch.
DifferenceVectors difference_vectors(const SampleSet& samples,
                                     const SamplingScheme& scheme);

}  // namespace dfo

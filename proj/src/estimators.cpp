#include "dfo/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dfo {

namespace {

double sum_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

void require_extras(const DifferenceVectors& diffs,
                    const SamplingScheme& scheme) {
    if (is_minimal_positive(scheme.kind) &&
        (!diffs.y_extra.has_value() || !diffs.z_extra.has_value())) {
        throw std::invalid_argument(
            "minimal positive basis needs the (n+1)th difference components");
    }
}

void check_lengths(const DifferenceVectors& diffs,
                   const SamplingScheme& scheme) {
    if (diffs.y.size() != scheme.n || diffs.z.size() != scheme.n) {
        throw std::invalid_argument("difference vectors have wrong length");
    }
}

}  // namespace

std::vector<double> grad_quadratic(const DifferenceVectors& diffs,
                                   const BasisConstants& consts,
                                   const SamplingScheme& scheme) {
    scheme.validate();
    if (scheme.model != ModelOrder::Quadratic) {
        throw std::invalid_argument("grad_quadratic: quadratic scheme required");
    }
    check_lengths(diffs, scheme);
    require_extras(diffs, scheme);
    const std::size_t n = scheme.n;
    const double dn = static_cast<double>(n);
    const double h = scheme.h;
    const std::vector<double>& y = diffs.y;
    std::vector<double> g(n);
    switch (scheme.kind) {
        case BasisKind::CoordinateBasis:
            for (std::size_t i = 0; i < n; ++i) g[i] = y[i] / h;
            break;
        case BasisKind::RegularBasis: {
            const double coef = 1.0 / (consts.alpha * h);
            const double shift =
                (1.0 / dn) * (std::sqrt(dn + 1.0) - 1.0) * sum_of(y);
            for (std::size_t i = 0; i < n; ++i) g[i] = coef * (y[i] + shift);
            break;
        }
        case BasisKind::CoordinateMinimalPositiveBasis: {
            const double inv_h = 1.0 / h;
            const double shift =
                (1.0 / (dn + 1.0)) * (sum_of(y) + *diffs.y_extra);
            for (std::size_t i = 0; i < n; ++i) g[i] = inv_h * (y[i] - shift);
            break;
        }
        case BasisKind::RegularMinimalPositiveBasis: {
            const double coef = 1.0 / (consts.alpha * h);
            const double shift = consts.gamma * sum_of(y) +
                                 *diffs.y_extra / std::sqrt(dn + 1.0);
            for (std::size_t i = 0; i < n; ++i) g[i] = coef * (y[i] - shift);
            break;
        }
    }
    return g;
}

std::vector<double> diag_quadratic(const DifferenceVectors& diffs,
                                   const BasisConstants& consts,
                                   const SamplingScheme& scheme) {
    scheme.validate();
    if (scheme.model != ModelOrder::Quadratic) {
        throw std::invalid_argument("diag_quadratic: quadratic scheme required");
    }
    check_lengths(diffs, scheme);
    require_extras(diffs, scheme);
    const std::size_t n = scheme.n;
    const double dn = static_cast<double>(n);
    const double h = scheme.h;
    const std::vector<double>& z = diffs.z;
    std::vector<double> d(n);
    switch (scheme.kind) {
        case BasisKind::CoordinateBasis:
            for (std::size_t i = 0; i < n; ++i) d[i] = 2.0 * z[i] / (h * h);
            break;
        case BasisKind::RegularBasis: {
            const double coef = 2.0 / (consts.mu * (h * h));
            const double shift = (1.0 / dn) * (1.0 - consts.mu) * sum_of(z);
            for (std::size_t i = 0; i < n; ++i) d[i] = coef * (z[i] - shift);
            break;
        }
        case BasisKind::CoordinateMinimalPositiveBasis: {
            const double coef = 2.0 / (h * h);
            const double a = (1.0 / (dn + 1.0)) * sum_of(z);
            const double b = (1.0 / (dn + 1.0)) * *diffs.z_extra;
            for (std::size_t i = 0; i < n; ++i) d[i] = coef * (z[i] - a + b);
            break;
        }
        case BasisKind::RegularMinimalPositiveBasis: {
            const double coef = 2.0 / (consts.mu * (h * h));
            const double shift =
                (1.0 / (1.0 + consts.sigma * dn)) *
                ((consts.omega - consts.sigma) * sum_of(z) +
                 *diffs.z_extra / (consts.mu * dn));
            for (std::size_t i = 0; i < n; ++i) d[i] = coef * (z[i] + shift);
            break;
        }
    }
    return d;
}

std::vector<double> grad_linear(const SampleSet& samples,
                                const BasisConstants& consts,
                                const SamplingScheme& scheme) {
    if (scheme.model != ModelOrder::Linear) {
        throw std::invalid_argument("grad_linear: linear scheme required");
    }
    scheme.validate();
    const std::size_t n = scheme.n;
    const std::size_t m = scheme.direction_count();
    if (samples.f.size() != m) {
        throw std::invalid_argument("grad_linear: f has wrong length");
    }
    const double dn = static_cast<double>(n);
    const double h = scheme.h;
    std::vector<double> g(n);
    switch (scheme.kind) {
        case BasisKind::CoordinateBasis:
            for (std::size_t i = 0; i < n; ++i) {
                g[i] = (samples.f[i] - samples.f0) / h;
            }
            break;
        case BasisKind::RegularBasis: {
            const double coef = 1.0 / (consts.alpha * h);
            double dfsum = 0.0;
            for (std::size_t i = 0; i < n; ++i) dfsum += samples.f[i] - samples.f0;
            const double shift = consts.gamma * std::sqrt(dn + 1.0) * dfsum;
            for (std::size_t i = 0; i < n; ++i) {
                g[i] = coef * (samples.f[i] - samples.f0 + shift);
            }
            break;
        }
        case BasisKind::CoordinateMinimalPositiveBasis: {
            const double inv_h = 1.0 / h;
            const double shift = (1.0 / (dn + 1.0)) * sum_of(samples.f);
            for (std::size_t i = 0; i < n; ++i) {
                g[i] = inv_h * (samples.f[i] - shift);
            }
            break;
        }
        case BasisKind::RegularMinimalPositiveBasis: {
            const double coef = 1.0 / (consts.alpha * h);
            double head = 0.0;
            for (std::size_t i = 0; i < n; ++i) head += samples.f[i];
            const double shift =
                consts.gamma * head + samples.f[n] / std::sqrt(dn + 1.0);
            for (std::size_t i = 0; i < n; ++i) {
                g[i] = coef * (samples.f[i] - shift);
            }
            break;
        }
    }
    return g;
}

namespace {

void apply_closed_forms(const SampleSet& samples, const SamplingScheme& scheme,
                        const EstimateOptions& options,
                        DerivativeEstimate& est) {
    const BasisConstants consts = basis_constants(scheme.n);
    if (scheme.model == ModelOrder::Quadratic) {
        const DifferenceVectors diffs = difference_vectors(samples, scheme);
        est.g = grad_quadratic(diffs, consts, scheme);
        if (options.cmpb_diag_central &&
            scheme.kind == BasisKind::CoordinateMinimalPositiveBasis) {
            // Central-difference d from the coordinate part of the frame.
            std::vector<double> d(scheme.n);
            const double h = scheme.h;
            for (std::size_t i = 0; i < scheme.n; ++i) {
                d[i] = 2.0 * diffs.z[i] / (h * h);
            }
            est.d = std::move(d);
        } else {
            est.d = diag_quadratic(diffs, consts, scheme);
        }
    } else {
        est.g = grad_linear(samples, consts, scheme);
    }
}

}  // namespace

namespace {

[[noreturn]] void rethrow_with_point(const std::exception& e,
                                     std::span<const double> point,
                                     const std::string& label) {
    std::string msg = "objective evaluation failed at " + label + " (";
    const std::size_t shown = std::min<std::size_t>(point.size(), 8);
    for (std::size_t i = 0; i < shown; ++i) {
        if (i > 0) msg += ", ";
        msg += std::to_string(point[i]);
    }
    if (shown < point.size()) msg += ", ...";
    msg += "): ";
    msg += e.what();
    throw std::runtime_error(msg);
}

}  // namespace

DerivativeEstimate estimate(const Evaluator& f, std::span<const double> x,
                            const SamplingScheme& scheme,
                            const EstimateOptions& options) {
    scheme.validate();
    const std::size_t m = scheme.direction_count();
    const bool quadratic = scheme.model == ModelOrder::Quadratic;
    const bool needs_f0 =
        quadratic || scheme.kind == BasisKind::CoordinateBasis ||
        scheme.kind == BasisKind::RegularBasis;

    DerivativeEstimate est;
    est.scheme = scheme;

    SampleSet samples;
    if (needs_f0) {
        if (options.known_f0.has_value()) {
            samples.f0 = *options.known_f0;
        } else {
            try {
                samples.f0 = f(x);
            } catch (const std::exception& e) {
                rethrow_with_point(e, x, "the center point");
            }
            est.evals_used += 1;
        }
    }

    samples.f.resize(m);
    if (quadratic) samples.fprime.resize(m);
    visit_sample_points(
        x, scheme, [&](std::size_t j, std::span<const double> point) {
            double value = 0.0;
            try {
                value = f(point);
            } catch (const std::exception& e) {
                rethrow_with_point(e, point,
                                   "sample point " + std::to_string(j + 1));
            }
            if (j < m) samples.f[j] = value;
            else samples.fprime[j - m] = value;
            est.evals_used += 1;
        });

    apply_closed_forms(samples, scheme, options, est);
    return est;
}

DerivativeEstimate estimate_from_samples(const SampleSet& samples,
                                         const SamplingScheme& scheme,
                                         const EstimateOptions& options) {
    scheme.validate();
    DerivativeEstimate est;
    est.scheme = scheme;
    if (scheme.model == ModelOrder::Linear && !samples.fprime.empty()) {
        SampleSet trimmed;
        trimmed.f0 = samples.f0;
        trimmed.f = samples.f;
        est.ignored_primed_block = true;
        est.evals_used = trimmed.f.size();
        apply_closed_forms(trimmed, scheme, options, est);
        return est;
    }
    est.evals_used = samples.f.size() + samples.fprime.size();
    apply_closed_forms(samples, scheme, options, est);
    return est;
}

}  // namespace dfo

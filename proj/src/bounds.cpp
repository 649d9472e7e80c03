#include "dfo/bounds.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "dfo/oracle.hpp"

namespace dfo {

double kappa(BasisKind kind, ModelOrder model, std::size_t n) {
    (void)model;  // same constants tabulated for both model orders
    const double dn = static_cast<double>(n);
    switch (kind) {
        case BasisKind::CoordinateBasis: return std::sqrt(dn);
        case BasisKind::RegularBasis: return dn;
        case BasisKind::CoordinateMinimalPositiveBasis: return std::sqrt(dn + 1.0);
        case BasisKind::RegularMinimalPositiveBasis: return std::sqrt(dn);
    }
    throw std::logic_error("unknown BasisKind");
}

double gradient_bound(const ErrorBoundInput& input) {
    const double k = kappa(input.kind, input.model, input.n);
    if (input.model == ModelOrder::Quadratic) {
        return (1.0 / 6.0) * input.lipschitz * input.h * input.h * k;
    }
    return 0.5 * input.lipschitz * input.h * k;
}

OrderFit observed_order(std::span<const std::pair<double, double>> pairs) {
    OrderFit fit;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [h, err] = pairs[i];
        if (h <= 0.0) {
            throw std::invalid_argument("observed_order: h must be positive");
        }
        if (!(err > 0.0)) {
            fit.excluded.push_back(i);
            continue;
        }
        lx.push_back(std::log(h));
        ly.push_back(std::log(err));
    }
    if (lx.size() < 3) {
        throw std::invalid_argument(
            "observed_order: need at least three usable (h, error) pairs");
    }
    const double m = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    fit.used = lx.size();
    return fit;
}

double estimate_lipschitz(const Objective& objective,
                          std::span<const double> x, double radius,
                          std::size_t trials, std::uint64_t seed) {
    if (!objective.hessian) {
        throw std::invalid_argument(
            "estimate_lipschitz: objective has no analytic Hessian");
    }
    if (!(radius > 0.0) || trials == 0) {
        throw std::invalid_argument(
            "estimate_lipschitz: need positive radius and trials");
    }
    const std::size_t n = objective.n;
    std::mt19937_64 rng(seed);
    auto uniform = [&rng](double lo, double hi) {
        const double u =
            static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
        return lo + (hi - lo) * u;
    };
    auto sample_point = [&](std::vector<double>& p) {
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = x[i] + uniform(-radius, radius);
        }
    };
    std::vector<double> a(n), b(n);
    Matrix ha(n, n), hb(n, n);
    double best = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        sample_point(a);
        sample_point(b);
        double dist_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = a[i] - b[i];
            dist_sq += d * d;
        }
        if (dist_sq == 0.0) continue;
        const std::vector<double> haf = objective.hessian(a);
        const std::vector<double> hbf = objective.hessian(b);
        Matrix diff(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                diff(i, j) = haf[i * n + j] - hbf[i * n + j];
            }
        }
        best = std::max(best, spectral_norm(diff) / std::sqrt(dist_sq));
    }
    return best;
}

}  // namespace dfo

#include "dfo/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace dfo {

std::string_view to_string(ModelOrder model) {
    return model == ModelOrder::Linear ? "linear" : "quadratic";
}

ModelOrder parse_model_order(std::string_view name) {
    if (name == "linear") return ModelOrder::Linear;
    if (name == "quadratic") return ModelOrder::Quadratic;
    throw std::invalid_argument("unknown model order: " + std::string(name));
}

void SamplingScheme::validate() const {
    if (n < 2) throw std::invalid_argument("scheme: n must be at least 2");
    if (!(std::abs(h) >= 1e-300)) {
        throw std::invalid_argument(
            "scheme: sampling radius h must be nonzero (|h| >= 1e-300)");
    }
    if (model == ModelOrder::Quadratic && (eta == 0.0 || eta == 1.0)) {
        throw std::invalid_argument(
            "scheme: quadratic model needs eta outside {0, 1}");
    }
}

void visit_sample_points(
    std::span<const double> x, const SamplingScheme& scheme,
    const std::function<void(std::size_t, std::span<const double>)>& visit) {
    scheme.validate();
    if (x.size() != scheme.n) {
        throw std::invalid_argument("sample_points: point dimension mismatch");
    }
    const BasisConstants consts = basis_constants(scheme.n);
    const std::size_t m = scheme.direction_count();
    const bool primed = scheme.model == ModelOrder::Quadratic;

    std::vector<double> u(scheme.n), point(scheme.n);
    const double hp = scheme.eta * scheme.h;
    std::size_t position = 0;
    for (int block = 0; block < (primed ? 2 : 1); ++block) {
        const double radius = block == 0 ? scheme.h : hp;
        for (std::size_t j = 1; j <= m; ++j) {
            direction(scheme.kind, consts, j, u);
            for (std::size_t i = 0; i < scheme.n; ++i) {
                point[i] = x[i] + radius * u[i];
            }
            visit(position++, point);
        }
    }
}

std::vector<std::vector<double>> sample_points(std::span<const double> x,
                                               const SamplingScheme& scheme) {
    std::vector<std::vector<double>> points(scheme.point_count());
    visit_sample_points(x, scheme,
                        [&points](std::size_t pos, std::span<const double> p) {
                            points[pos].assign(p.begin(), p.end());
                        });
    return points;
}

DifferenceVectors difference_vectors(const SampleSet& samples,
                                     const SamplingScheme& scheme) {
    scheme.validate();
    if (scheme.model != ModelOrder::Quadratic) {
        throw std::invalid_argument(
            "difference_vectors: quadratic model required");
    }
    const std::size_t m = scheme.direction_count();
    if (samples.f.size() != m) {
        throw std::invalid_argument("difference_vectors: f has wrong length");
    }
    if (samples.fprime.size() != m) {
        throw std::invalid_argument(
            "difference_vectors: fprime missing or wrong length");
    }

    const double f0 = samples.f0;
    const double eta = scheme.eta;
    const std::size_t n = scheme.n;

    DifferenceVectors out;
    out.y.resize(n);
    out.z.resize(n);
    double y_last = 0.0, z_last = 0.0;
    if (eta == -1.0) {
        for (std::size_t j = 0; j < m; ++j) {
            const double y = 0.5 * (samples.f[j] - samples.fprime[j]);
            const double z = 0.5 * (samples.f[j] + samples.fprime[j] - 2.0 * f0);
            if (j < n) {
                out.y[j] = y;
                out.z[j] = z;
            } else {
                y_last = y;
                z_last = z;
            }
        }
    } else {
        const double ydown = eta * (eta - 1.0);
        const double zdown = eta * (1.0 - eta);
        for (std::size_t j = 0; j < m; ++j) {
            const double df = samples.f[j] - f0;
            const double dfp = samples.fprime[j] - f0;
            const double y = (eta * eta * df - dfp) / ydown;
            const double z = (eta * df - dfp) / zdown;
            if (j < n) {
                out.y[j] = y;
                out.z[j] = z;
            } else {
                y_last = y;
                z_last = z;
            }
        }
    }
    if (is_minimal_positive(scheme.kind)) {
        out.y_extra = y_last;
        out.z_extra = z_last;
    }
    return out;
}

}  // namespace dfo

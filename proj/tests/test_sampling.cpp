#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dfo/estimators.hpp"
#include "dfo/oracle.hpp"
#include "dfo/sampling.hpp"
#include "test_support.hpp"

using namespace dfo;
using dfo::test::evaluate_samples;
using dfo::test::Rng;

TEST_CASE("sample_points: coordinate basis, eta = -1") {
    SamplingScheme scheme{BasisKind::CoordinateBasis, 2, 1.0, -1.0,
                          ModelOrder::Quadratic};
    const std::vector<double> x{0.0, 0.0};
    const auto pts = sample_points(x, scheme);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0] == std::vector<double>{1.0, 0.0});
    CHECK(pts[1] == std::vector<double>{0.0, 1.0});
    CHECK(pts[2] == std::vector<double>{-1.0, 0.0});
    CHECK(pts[3] == std::vector<double>{0.0, -1.0});
}

TEST_CASE("sample_points: RMPB third point moves along -(1/sqrt(2)) e") {
    SamplingScheme scheme{BasisKind::RegularMinimalPositiveBasis, 2, 1e-3, -1.0,
                          ModelOrder::Quadratic};
    const std::vector<double> x{1.1, 1.1 * 1.1 + 1e-5};
    const auto pts = sample_points(x, scheme);
    REQUIRE(pts.size() == 6);
    const double step = 1e-3 * (-1.0 / std::sqrt(2.0));
    CHECK(pts[2][0] == doctest::Approx(x[0] + step).epsilon(1e-15));
    CHECK(pts[2][1] == doctest::Approx(x[1] + step).epsilon(1e-15));
}

TEST_CASE("sample_points: all RMPB points sit at distance |h|") {
    SamplingScheme scheme{BasisKind::RegularMinimalPositiveBasis, 2, 1.0, -1.0,
                          ModelOrder::Quadratic};
    const std::vector<double> x{0.0, 0.0};
    for (const auto& p : sample_points(x, scheme)) {
        CHECK(std::abs(dfo::test::norm2(p) - 1.0) < 1e-12);
    }
}

TEST_CASE("sample_points: linear model omits the primed block") {
    SamplingScheme scheme{BasisKind::CoordinateMinimalPositiveBasis, 3, 0.5,
                          -1.0, ModelOrder::Linear};
    const std::vector<double> x{1.0, 2.0, 3.0};
    CHECK(sample_points(x, scheme).size() == 4);
}

TEST_CASE("visit_sample_points streams the same points in the same order") {
    SamplingScheme scheme{BasisKind::RegularMinimalPositiveBasis, 4, 0.3, 0.5,
                          ModelOrder::Quadratic};
    const std::vector<double> x{0.1, -0.2, 0.3, -0.4};
    const auto materialized = sample_points(x, scheme);
    std::size_t seen = 0;
    visit_sample_points(x, scheme,
                        [&](std::size_t pos, std::span<const double> p) {
                            REQUIRE(pos < materialized.size());
                            for (std::size_t i = 0; i < p.size(); ++i) {
                                CHECK(p[i] == materialized[pos][i]);
                            }
                            ++seen;
                        });
    CHECK(seen == materialized.size());
}

TEST_CASE("scheme validation") {
    SamplingScheme scheme{BasisKind::CoordinateBasis, 2, 0.0, -1.0,
                          ModelOrder::Quadratic};
    CHECK_THROWS_AS(scheme.validate(), std::invalid_argument);
    scheme.h = 1e-301;
    CHECK_THROWS_AS(scheme.validate(), std::invalid_argument);
    scheme.h = 1e-3;
    scheme.eta = 1.0;
    CHECK_THROWS_AS(scheme.validate(), std::invalid_argument);
    scheme.eta = 0.0;
    CHECK_THROWS_AS(scheme.validate(), std::invalid_argument);
    scheme.eta = -1.0;
    CHECK_NOTHROW(scheme.validate());
    scheme.model = ModelOrder::Linear;
    scheme.eta = 1.0;  // eta is unused by linear models
    CHECK_NOTHROW(scheme.validate());
}

TEST_CASE("difference_vectors: constant function gives y = z = 0") {
    SamplingScheme scheme{BasisKind::RegularMinimalPositiveBasis, 3, 0.1, -1.0,
                          ModelOrder::Quadratic};
    const std::vector<double> x{0.3, -0.2, 0.9};
    const auto samples = evaluate_samples(
        [](std::span<const double>) { return 4.25; }, x, scheme);
    const auto diffs = difference_vectors(samples, scheme);
    for (double v : diffs.y) CHECK(v == 0.0);
    for (double v : diffs.z) CHECK(v == 0.0);
    REQUIRE(diffs.y_extra.has_value());
    REQUIRE(diffs.z_extra.has_value());
    CHECK(*diffs.y_extra == 0.0);
    CHECK(*diffs.z_extra == 0.0);
}

TEST_CASE("difference_vectors: linear function, eta = -1, z vanishes") {
    SamplingScheme scheme{BasisKind::RegularBasis, 4, 0.25, -1.0,
                          ModelOrder::Quadratic};
    const std::vector<double> x{1.0, -1.0, 0.5, 2.0};
    const auto f = [](std::span<const double> p) {
        return 3.0 * p[0] - 2.0 * p[1] + 0.5 * p[2] + p[3] + 7.0;
    };
    const auto samples = evaluate_samples(f, x, scheme);
    const auto diffs = difference_vectors(samples, scheme);
    for (double v : diffs.z) CHECK(std::abs(v) < 1e-13);
}

TEST_CASE("difference_vectors: general eta matches the eta=-1 special case") {
    // Well-scaled inputs: both algebraically identical routes must agree
    // to machine precision.
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
        SamplingScheme scheme{trial % 2 ? BasisKind::RegularBasis
                                        : BasisKind::CoordinateMinimalPositiveBasis,
                              n, 1.0, -1.0, ModelOrder::Quadratic};
        const auto fobj = dfo::test::SmoothFunction::random(n, rng, 0.5);
        const auto x = rng.vector(n, -1.0, 1.0);
        const auto samples = evaluate_samples(fobj, x, scheme);
        const auto fast = difference_vectors(samples, scheme);

        // General-eta route evaluated manually at eta = -1.  The two
        // routes are algebraically identical; they may differ by a few
        // roundings of the inputs, so the tolerance is input-scaled.
        const std::size_t m = scheme.direction_count();
        for (std::size_t j = 0; j < m; ++j) {
            const double df = samples.f[j] - samples.f0;
            const double dfp = samples.fprime[j] - samples.f0;
            const double y = (1.0 * df - dfp) / 2.0;
            const double z = (-df - dfp) / -2.0;
            const double got_y = j < n ? fast.y[j] : *fast.y_extra;
            const double got_z = j < n ? fast.z[j] : *fast.z_extra;
            const double scale = std::max(
                {std::abs(samples.f[j]), std::abs(samples.fprime[j]),
                 std::abs(samples.f0), std::abs(y), std::abs(z)});
            CHECK(std::abs(got_y - y) <= 1e-15 * scale);
            CHECK(std::abs(got_z - z) <= 1e-15 * scale);
        }
    }
}

TEST_CASE("difference_vectors: contract violations") {
    SamplingScheme scheme{BasisKind::CoordinateBasis, 2, 0.1, -1.0,
                          ModelOrder::Quadratic};
    SampleSet samples;
    samples.f0 = 1.0;
    samples.f = {1.0, 1.0};
    CHECK_THROWS_AS(difference_vectors(samples, scheme), std::invalid_argument);
    scheme.model = ModelOrder::Linear;
    samples.fprime = {1.0, 1.0};
    CHECK_THROWS_AS(difference_vectors(samples, scheme), std::invalid_argument);
}

TEST_CASE("interpolation conditions: the model reproduces square-scheme samples") {
    Rng rng(11);
    for (const BasisKind kind :
         {BasisKind::CoordinateBasis, BasisKind::RegularBasis}) {
        const std::size_t n = 5;
        SamplingScheme scheme{kind, n, 0.05, -1.0, ModelOrder::Quadratic};
        const auto fobj = dfo::test::SmoothFunction::random(n, rng);
        const auto x = rng.vector(n, -1.0, 1.0);
        const auto samples = evaluate_samples(fobj, x, scheme);
        const auto diffs = difference_vectors(samples, scheme);
        const BasisConstants consts = basis_constants(n);
        const auto g = grad_quadratic(diffs, consts, scheme);
        const auto d = diag_quadratic(diffs, consts, scheme);

        // m(y) = f(x) + (y-x)^T g + 1/2 (y-x)^T D (y-x) at every sample.
        const auto pts = sample_points(x, scheme);
        for (std::size_t p = 0; p < pts.size(); ++p) {
            double model = samples.f0;
            for (std::size_t i = 0; i < n; ++i) {
                const double dx = pts[p][i] - x[i];
                model += dx * g[i] + 0.5 * dx * dx * d[i];
            }
            const double sampled =
                p < n ? samples.f[p] : samples.fprime[p - n];
            CHECK(dfo::test::rel_err(model, sampled) < 1e-8);
        }
    }
}

TEST_CASE("minimal-positive-basis residual matches the oracle's residual") {
    Rng rng(13);
    for (const BasisKind kind : {BasisKind::CoordinateMinimalPositiveBasis,
                                 BasisKind::RegularMinimalPositiveBasis}) {
        const std::size_t n = 4;
        SamplingScheme scheme{kind, n, 0.05, -1.0, ModelOrder::Quadratic};
        const auto fobj = dfo::test::SmoothFunction::random(n, rng);
        const auto x = rng.vector(n, -1.0, 1.0);
        const auto samples = evaluate_samples(fobj, x, scheme);
        const auto diffs = difference_vectors(samples, scheme);
        const BasisConstants consts = basis_constants(n);
        const auto g = grad_quadratic(diffs, consts, scheme);
        const auto d = diag_quadratic(diffs, consts, scheme);

        const AssembledSystem sys = assemble(scheme);
        const auto [g_oracle, d_oracle] = solve_quadratic(sys, samples);
        const double r_closed = system_residual(sys, samples, g, d);
        const double r_oracle = system_residual(sys, samples, g_oracle, d_oracle);
        CHECK(std::abs(r_closed - r_oracle) < 1e-10);
    }
}

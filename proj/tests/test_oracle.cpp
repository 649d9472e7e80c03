#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dfo/oracle.hpp"
#include "test_support.hpp"

using namespace dfo;
using dfo::test::evaluate_samples;
using dfo::test::rel_vec_err;
using dfo::test::Rng;

TEST_CASE("assemble: coordinate basis gives U = W = I") {
    SamplingScheme scheme{BasisKind::CoordinateBasis, 3, 0.1, -1.0,
                          ModelOrder::Quadratic};
    const AssembledSystem sys = assemble(scheme);
    REQUIRE(sys.u.rows() == 3);
    REQUIRE(sys.u.cols() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(sys.u(i, j) == (i == j ? 1.0 : 0.0));
            CHECK(sys.w(i, j) == (i == j ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("assemble: RMPB W+ last column is (1/n) e") {
    SamplingScheme scheme{BasisKind::RegularMinimalPositiveBasis, 2, 0.1, -1.0,
                          ModelOrder::Quadratic};
    const AssembledSystem sys = assemble(scheme);
    REQUIRE(sys.w.cols() == 3);
    CHECK(sys.w(0, 2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(sys.w(1, 2) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("assemble: regular-basis W equals mu (I + omega e e^T)") {
    for (std::size_t n : {2ul, 7ul}) {
        const BasisConstants c = basis_constants(n);
        SamplingScheme scheme{BasisKind::RegularBasis, n, 0.1, -1.0,
                              ModelOrder::Quadratic};
        const AssembledSystem sys = assemble(scheme);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double want =
                    c.mu * ((i == j ? 1.0 : 0.0) + c.omega);
                CHECK(std::abs(sys.w(i, j) - want) < 1e-12);
            }
        }
    }
}

TEST_CASE("CMPB structure: U+ U+^T = I + e e^T with the known inverse") {
    for (std::size_t n : {2ul, 10ul, 100ul}) {
        SamplingScheme scheme{BasisKind::CoordinateMinimalPositiveBasis, n, 0.1,
                              -1.0, ModelOrder::Quadratic};
        const AssembledSystem sys = assemble(scheme);
        const Matrix prod = sys.u.multiply(sys.u.transposed());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(std::abs(prod(i, j) - ((i == j ? 1.0 : 0.0) + 1.0)) <
                      1e-12);
            }
        }
        // (I + e e^T)(I - e e^T/(n+1)) = I.
        const double dn = static_cast<double>(n);
        Matrix inv(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                inv(i, j) = (i == j ? 1.0 : 0.0) - 1.0 / (dn + 1.0);
            }
        }
        const Matrix eye = prod.multiply(inv);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(std::abs(eye(i, j) - (i == j ? 1.0 : 0.0)) < 1e-12);
            }
        }
    }
}

TEST_CASE("RMPB structure: W+ W+^T = mu^2 (I + sigma e e^T)") {
    for (std::size_t n : {2ul, 5ul, 60ul}) {
        const BasisConstants c = basis_constants(n);
        SamplingScheme scheme{BasisKind::RegularMinimalPositiveBasis, n, 0.1,
                              -1.0, ModelOrder::Quadratic};
        const AssembledSystem sys = assemble(scheme);
        const Matrix prod = sys.w.multiply(sys.w.transposed());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double want =
                    c.mu * c.mu * ((i == j ? 1.0 : 0.0) + c.sigma);
                CHECK(std::abs(prod(i, j) - want) < 1e-12);
            }
        }
    }
}

TEST_CASE("solve_quadratic: exact on a separable quadratic with CB") {
    const std::size_t n = 3;
    const std::vector<double> a{1.0, 4.0, 9.0};
    const std::vector<double> x{0.5, -0.25, 1.0};
    auto f = [&a](std::span<const double> p) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) s += 0.5 * a[i] * p[i] * p[i];
        return s;
    };
    SamplingScheme scheme{BasisKind::CoordinateBasis, n, 0.25, -1.0,
                          ModelOrder::Quadratic};
    const auto samples = evaluate_samples(f, x, scheme);
    const auto [g, d] = solve_quadratic(assemble(scheme), samples);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(g[i] == doctest::Approx(a[i] * x[i]).epsilon(1e-12));
        CHECK(d[i] == doctest::Approx(a[i]).epsilon(1e-12));
    }
}

TEST_CASE("solve_linear: CB reduces to forward differences") {
    const std::size_t n = 3;
    Rng rng(23);
    const auto fobj = dfo::test::SmoothFunction::random(n, rng);
    const auto x = rng.vector(n, -1.0, 1.0);
    SamplingScheme scheme{BasisKind::CoordinateBasis, n, 0.02, -1.0,
                          ModelOrder::Linear};
    const auto samples = evaluate_samples(fobj, x, scheme);
    const auto g = solve_linear(assemble(scheme), samples);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(g[i] ==
              doctest::Approx((samples.f[i] - samples.f0) / 0.02).epsilon(1e-12));
    }
}

TEST_CASE("solve_dense rejects singular systems with a condition estimate") {
    Matrix a(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 2.0;
    a(1, 1) = 4.0;
    CHECK_THROWS_AS(solve_dense(a, {1.0, 2.0}), std::runtime_error);
}

TEST_CASE("symmetric eigenvalues and spectral norm on a known matrix") {
    Matrix a(2, 2);
    a(0, 0) = 2.0;
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    a(1, 1) = 2.0;
    const auto eig = symmetric_eigenvalues(a);
    CHECK(eig[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(spectral_norm(a) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("least squares: tall system reproduces a known solution") {
    // Rows (1,0), (0,1), (1,1) against b = A x* for x* = (2, -1).
    Matrix a(3, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 1.0;
    a(2, 0) = 1.0;
    a(2, 1) = 1.0;
    const std::vector<double> b{2.0, -1.0, 1.0};
    const auto x = solve_least_squares(a, b);
    CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

#include "dfo/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dfo {

namespace {

std::vector<double> filled(std::size_t n, double value) {
    return std::vector<double>(n, value);
}

Objective make_freudenstein_roth() {
    Objective o;
    o.name = "freudenstein_roth";
    o.n = 2;
    o.start = {0.5, -2.0};
    o.evaluate = [](std::span<const double> x) {
        const double r1 = -13.0 + x[0] + ((5.0 - x[1]) * x[1] - 2.0) * x[1];
        const double r2 = -29.0 + x[0] + ((x[1] + 1.0) * x[1] - 14.0) * x[1];
        return r1 * r1 + r2 * r2;
    };
    o.gradient = [](std::span<const double> x) {
        const double r1 = -13.0 + x[0] + ((5.0 - x[1]) * x[1] - 2.0) * x[1];
        const double r2 = -29.0 + x[0] + ((x[1] + 1.0) * x[1] - 14.0) * x[1];
        const double d1 = 10.0 * x[1] - 3.0 * x[1] * x[1] - 2.0;
        const double d2 = 3.0 * x[1] * x[1] + 2.0 * x[1] - 14.0;
        return std::vector<double>{2.0 * (r1 + r2),
                                   2.0 * (r1 * d1 + r2 * d2)};
    };
    return o;
}

Objective make_beale() {
    Objective o;
    o.name = "beale";
    o.n = 2;
    o.start = {1.0, 1.0};
    static constexpr double kTargets[3] = {1.5, 2.25, 2.625};
    o.evaluate = [](std::span<const double> x) {
        double s = 0.0;
        double xpow = 1.0;
        for (int i = 1; i <= 3; ++i) {
            xpow *= x[1];
            const double r = kTargets[i - 1] - x[0] * (1.0 - xpow);
            s += r * r;
        }
        return s;
    };
    o.gradient = [](std::span<const double> x) {
        double g1 = 0.0, g2 = 0.0;
        for (int i = 1; i <= 3; ++i) {
            const double xpow = std::pow(x[1], i);
            const double r = kTargets[i - 1] - x[0] * (1.0 - xpow);
            g1 += r * (-(1.0 - xpow));
            g2 += r * (i * x[0] * std::pow(x[1], i - 1));
        }
        return std::vector<double>{2.0 * g1, 2.0 * g2};
    };
    return o;
}

Objective make_helical_valley() {
    Objective o;
    o.name = "helical_valley";
    o.n = 3;
    o.start = {-1.0, 0.0, 0.0};
    // theta = atan2(x2, x1)/(2 pi); undefined on the x3 axis.
    auto theta = [](double x1, double x2) {
        return std::atan2(x2, x1) / (2.0 * std::numbers::pi);
    };
    o.evaluate = [theta](std::span<const double> x) {
        const double r1 = 10.0 * (x[2] - 10.0 * theta(x[0], x[1]));
        const double r2 =
            10.0 * (std::sqrt(x[0] * x[0] + x[1] * x[1]) - 1.0);
        const double r3 = x[2];
        return r1 * r1 + r2 * r2 + r3 * r3;
    };
    o.gradient = [theta](std::span<const double> x) {
        const double rho2 = x[0] * x[0] + x[1] * x[1];
        const double rho = std::sqrt(rho2);
        const double twopi = 2.0 * std::numbers::pi;
        const double r1 = 10.0 * (x[2] - 10.0 * theta(x[0], x[1]));
        const double r2 = 10.0 * (rho - 1.0);
        const double r3 = x[2];
        const double dth_dx1 = -x[1] / (twopi * rho2);
        const double dth_dx2 = x[0] / (twopi * rho2);
        std::vector<double> g(3);
        g[0] = 2.0 * (r1 * (-100.0 * dth_dx1) + r2 * (10.0 * x[0] / rho));
        g[1] = 2.0 * (r1 * (-100.0 * dth_dx2) + r2 * (10.0 * x[1] / rho));
        g[2] = 2.0 * (r1 * 10.0 + r3);
        return g;
    };
    return o;
}

Objective make_powell_singular() {
    Objective o;
    o.name = "powell_singular";
    o.n = 4;
    o.start = {3.0, -1.0, 0.0, 1.0};
    o.evaluate = [](std::span<const double> x) {
        const double r1 = x[0] + 10.0 * x[1];
        const double r2 = std::sqrt(5.0) * (x[2] - x[3]);
        const double r3 = (x[1] - 2.0 * x[2]) * (x[1] - 2.0 * x[2]);
        const double r4 =
            std::sqrt(10.0) * (x[0] - x[3]) * (x[0] - x[3]);
        return r1 * r1 + r2 * r2 + r3 * r3 + r4 * r4;
    };
    o.gradient = [](std::span<const double> x) {
        const double r1 = x[0] + 10.0 * x[1];
        const double r2 = std::sqrt(5.0) * (x[2] - x[3]);
        const double t3 = x[1] - 2.0 * x[2];
        const double r3 = t3 * t3;
        const double t4 = x[0] - x[3];
        const double r4 = std::sqrt(10.0) * t4 * t4;
        std::vector<double> g(4);
        g[0] = 2.0 * (r1 + r4 * (2.0 * std::sqrt(10.0) * t4));
        g[1] = 2.0 * (r1 * 10.0 + r3 * (2.0 * t3));
        g[2] = 2.0 * (r2 * std::sqrt(5.0) + r3 * (-4.0 * t3));
        g[3] = 2.0 * (r2 * (-std::sqrt(5.0)) + r4 * (-2.0 * std::sqrt(10.0) * t4));
        return g;
    };
    return o;
}

Objective make_woods() {
    Objective o;
    o.name = "woods";
    o.n = 4;
    o.start = {-3.0, -1.0, -3.0, -1.0};
    o.evaluate = [](std::span<const double> x) {
        const double a = x[1] - x[0] * x[0];
        const double b = 1.0 - x[0];
        const double c = x[3] - x[2] * x[2];
        const double d = 1.0 - x[2];
        const double e = x[1] + x[3] - 2.0;
        const double f = x[1] - x[3];
        return 100.0 * a * a + b * b + 90.0 * c * c + d * d +
               10.0 * e * e + 0.1 * f * f;
    };
    o.gradient = [](std::span<const double> x) {
        const double a = x[1] - x[0] * x[0];
        const double c = x[3] - x[2] * x[2];
        const double e = x[1] + x[3] - 2.0;
        const double f = x[1] - x[3];
        std::vector<double> g(4);
        g[0] = -400.0 * x[0] * a - 2.0 * (1.0 - x[0]);
        g[1] = 200.0 * a + 20.0 * e + 0.2 * f;
        g[2] = -360.0 * x[2] * c - 2.0 * (1.0 - x[2]);
        g[3] = 180.0 * c + 20.0 * e - 0.2 * f;
        return g;
    };
    return o;
}

Objective make_trigonometric(std::size_t n) {
    Objective o;
    o.name = "trigonometric";
    o.n = n;
    o.start = filled(n, 1.0 / static_cast<double>(n));
    o.evaluate = [n](std::span<const double> x) {
        double cos_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) cos_sum += std::cos(x[j]);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double di = static_cast<double>(i + 1);
            const double r = static_cast<double>(n) - cos_sum +
                             di * (1.0 - std::cos(x[i])) - std::sin(x[i]);
            s += r * r;
        }
        return s;
    };
    o.gradient = [n](std::span<const double> x) {
        double cos_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) cos_sum += std::cos(x[j]);
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double di = static_cast<double>(i + 1);
            r[i] = static_cast<double>(n) - cos_sum +
                   di * (1.0 - std::cos(x[i])) - std::sin(x[i]);
        }
        double rsum = 0.0;
        for (double v : r) rsum += v;
        std::vector<double> g(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double dj = static_cast<double>(j + 1);
            // d r_i / d x_j = sin x_j for i != j; the i = j residual adds
            // (1 + j) sin x_j - cos x_j on top of that sin x_j.
            const double common = std::sin(x[j]) * rsum;
            const double extra = r[j] * (dj * std::sin(x[j]) - std::cos(x[j]));
            g[j] = 2.0 * (common + extra);
        }
        return g;
    };
    return o;
}

Objective make_brown_almost_linear(std::size_t n) {
    Objective o;
    o.name = "brown_almost_linear";
    o.n = n;
    o.start = filled(n, 0.5);
    o.evaluate = [n](std::span<const double> x) {
        double xsum = 0.0;
        double xprod = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            xsum += x[j];
            xprod *= x[j];
        }
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double r = x[i] + xsum - (static_cast<double>(n) + 1.0);
            s += r * r;
        }
        const double rn = xprod - 1.0;
        return s + rn * rn;
    };
    o.gradient = [n](std::span<const double> x) {
        double xsum = 0.0;
        double xprod = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            xsum += x[j];
            xprod *= x[j];
        }
        std::vector<double> r(n);
        double rsum_head = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            r[i] = x[i] + xsum - (static_cast<double>(n) + 1.0);
            rsum_head += r[i];
        }
        r[n - 1] = xprod - 1.0;
        std::vector<double> g(n);
        for (std::size_t j = 0; j < n; ++j) {
            double head = rsum_head;  // each head residual has dr/dx_j = 1
            if (j + 1 < n) head += r[j];  // plus the extra x_i term when i = j
            double prod_wo_j = 1.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) prod_wo_j *= x[k];
            }
            g[j] = 2.0 * (head + r[n - 1] * prod_wo_j);
        }
        return g;
    };
    return o;
}

Objective make_broyden_tridiagonal(std::size_t n) {
    Objective o;
    o.name = "broyden_tridiagonal";
    o.n = n;
    o.start = filled(n, -1.0);
    auto residuals = [n](std::span<const double> x) {
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double left = i > 0 ? x[i - 1] : 0.0;
            const double right = i + 1 < n ? x[i + 1] : 0.0;
            r[i] = (3.0 - 2.0 * x[i]) * x[i] - left - 2.0 * right + 1.0;
        }
        return r;
    };
    o.evaluate = [residuals](std::span<const double> x) {
        double s = 0.0;
        for (double v : residuals(x)) s += v * v;
        return s;
    };
    o.gradient = [residuals, n](std::span<const double> x) {
        const std::vector<double> r = residuals(x);
        std::vector<double> g(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            g[i] += r[i] * (3.0 - 4.0 * x[i]);
            if (i > 0) g[i - 1] += r[i] * (-1.0);
            if (i + 1 < n) g[i + 1] += r[i] * (-2.0);
        }
        for (double& v : g) v *= 2.0;
        return g;
    };
    return o;
}

}  // namespace

Objective rosenbrock() {
    Objective o;
    o.name = "rosenbrock";
    o.n = 2;
    o.start = {-1.2, 1.0};
    o.evaluate = [](std::span<const double> y) {
        const double a = 1.0 - y[0];
        const double b = y[1] - y[0] * y[0];
        return a * a + 100.0 * (b * b);
    };
    o.gradient = [](std::span<const double> y) {
        return std::vector<double>{
            -2.0 * (1.0 - y[0]) - 400.0 * y[0] * (y[1] - y[0] * y[0]),
            200.0 * (y[1] - y[0] * y[0])};
    };
    o.diag_hessian = [](std::span<const double> y) {
        return std::vector<double>{2.0 - 400.0 * y[1] + 1200.0 * y[0] * y[0],
                                   200.0};
    };
    o.hessian = [](std::span<const double> y) {
        return std::vector<double>{2.0 - 400.0 * y[1] + 1200.0 * y[0] * y[0],
                                   -400.0 * y[0], -400.0 * y[0], 200.0};
    };
    return o;
}

const std::map<std::string, Objective>& registry() {
    static const std::map<std::string, Objective> objectives = [] {
        std::map<std::string, Objective> m;
        auto add = [&m](Objective o) { m.emplace(o.name, std::move(o)); };
        add(rosenbrock());
        add(make_freudenstein_roth());
        add(make_beale());
        add(make_helical_valley());
        add(make_powell_singular());
        add(make_woods());
        add(make_trigonometric(2));
        add(make_brown_almost_linear(2));
        add(make_broyden_tridiagonal(20));
        return m;
    }();
    return objectives;
}

const Objective& lookup(const std::string& name) {
    const auto& reg = registry();
    const auto it = reg.find(name);
    if (it == reg.end()) {
        throw std::out_of_range("unknown problem: " + name);
    }
    return it->second;
}

}  // namespace dfo

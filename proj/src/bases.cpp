#include "dfo/bases.hpp"

#include <cmath>
#include <stdexcept>

namespace dfo {

bool is_minimal_positive(BasisKind kind) {
    return kind == BasisKind::CoordinateMinimalPositiveBasis ||
           kind == BasisKind::RegularMinimalPositiveBasis;
}

bool is_regular(BasisKind kind) {
    return kind == BasisKind::RegularBasis ||
           kind == BasisKind::RegularMinimalPositiveBasis;
}

std::size_t direction_count(BasisKind kind, std::size_t n) {
    return is_minimal_positive(kind) ? n + 1 : n;
}

std::string_view to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::CoordinateBasis: return "cb";
        case BasisKind::RegularBasis: return "rb";
        case BasisKind::CoordinateMinimalPositiveBasis: return "cmpb";
        case BasisKind::RegularMinimalPositiveBasis: return "rmpb";
    }
    throw std::logic_error("unknown BasisKind");
}

BasisKind parse_basis_kind(std::string_view name) {
    if (name == "cb") return BasisKind::CoordinateBasis;
    if (name == "rb") return BasisKind::RegularBasis;
    if (name == "cmpb") return BasisKind::CoordinateMinimalPositiveBasis;
    if (name == "rmpb") return BasisKind::RegularMinimalPositiveBasis;
    throw std::invalid_argument("unknown basis kind: " + std::string(name));
}

BasisConstants basis_constants(std::size_t n) {
    if (n < 2) {
        throw std::domain_error(
            "basis_constants: n must be at least 2 (positive-basis geometry "
            "degenerates below that)");
    }
    const double dn = static_cast<double>(n);
    BasisConstants c;
    c.n = n;
    c.alpha = std::sqrt((dn + 1.0) / dn);
    c.gamma = (1.0 / dn) * (1.0 - std::sqrt(1.0 / (dn + 1.0)));
    const double one_minus_2g = 1.0 - 2.0 * c.gamma;
    c.mu = c.alpha * c.alpha * one_minus_2g;
    c.omega = c.gamma * c.gamma / one_minus_2g;
    c.sigma = 2.0 * c.omega + c.omega * c.omega * dn +
              1.0 / (c.mu * c.mu * dn * dn);
    return c;
}

void direction(BasisKind kind, const BasisConstants& consts, std::size_t j,
               std::span<double> out) {
    const std::size_t n = consts.n;
    if (out.size() != n) {
        throw std::invalid_argument("direction: output span has wrong length");
    }
    const std::size_t m = direction_count(kind, n);
    if (j < 1 || j > m) {
        throw std::out_of_range("direction: index j out of range");
    }
    switch (kind) {
        case BasisKind::CoordinateBasis:
        case BasisKind::CoordinateMinimalPositiveBasis:
            if (j <= n) {
                for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
                out[j - 1] = 1.0;
            } else {
                for (std::size_t i = 0; i < n; ++i) out[i] = -1.0;
            }
            break;
        case BasisKind::RegularBasis:
        case BasisKind::RegularMinimalPositiveBasis:
            if (j <= n) {
                const double off = consts.alpha * (-consts.gamma);
                for (std::size_t i = 0; i < n; ++i) out[i] = off;
                out[j - 1] = consts.alpha * (1.0 - consts.gamma);
            } else {
                const double v = -1.0 / std::sqrt(static_cast<double>(n));
                for (std::size_t i = 0; i < n; ++i) out[i] = v;
            }
            break;
    }
}

std::vector<double> direction(BasisKind kind, const BasisConstants& consts,
                              std::size_t j) {
    std::vector<double> out(consts.n);
    direction(kind, consts, j, out);
    return out;
}

std::vector<double> apply_regular_inverse(const BasisConstants& consts,
                                          std::span<const double> y) {
    const std::size_t n = consts.n;
    if (y.size() != n) {
        throw std::invalid_argument("apply_regular_inverse: length mismatch");
    }
    const double dn = static_cast<double>(n);
    double sum = 0.0;
    for (double v : y) sum += v;
    const double shift = (1.0 / dn) * (std::sqrt(dn + 1.0) - 1.0) * sum;
    std::vector<double> out(n);
    const double inv_alpha = 1.0 / consts.alpha;
    for (std::size_t i = 0; i < n; ++i) out[i] = inv_alpha * (y[i] + shift);
    return out;
}

namespace {

double rel_dev(double lhs, double rhs) {
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

}  // namespace

double verify_appendix_identities(std::size_t n) {
    const BasisConstants c = basis_constants(n);
    const double dn = static_cast<double>(n);
    const double rt = std::sqrt(dn + 1.0);
    const double a2 = c.alpha * c.alpha;
    const double g2 = c.gamma * c.gamma;
    const double on = c.omega * dn;

    double dev = 0.0;
    auto check = [&](double lhs, double rhs) {
        dev = std::max(dev, rel_dev(lhs, rhs));
    };

    // gamma/(1 - n gamma) = gamma sqrt(n+1) = (1/n)(sqrt(n+1) - 1)
    check(c.gamma / (1.0 - dn * c.gamma), c.gamma * rt);
    check(c.gamma * rt, (1.0 / dn) * (rt - 1.0));
    // gamma^2 = (1/n^2)((n+2)/(n+1) - 2/sqrt(n+1))
    check(g2, (1.0 / (dn * dn)) * ((dn + 2.0) / (dn + 1.0) - 2.0 / rt));
    // alpha^2 gamma^2, both closed forms
    check(a2 * g2, (dn + 2.0 - 2.0 * rt) / (dn * dn * dn));
    check(a2 * g2, (rt - 1.0) * (rt - 1.0) / (dn * dn * dn));
    // 1 - 2 gamma = ((n-2) sqrt(n+1) + 2)/(n sqrt(n+1))
    check(1.0 - 2.0 * c.gamma, ((dn - 2.0) * rt + 2.0) / (dn * rt));
    // mu = (1/n^2)((n-2)(n+1) + 2 sqrt(n+1))
    check(c.mu, ((dn - 2.0) * (dn + 1.0) + 2.0 * rt) / (dn * dn));
    // omega n = (n+2 - 2 sqrt(n+1)) / ((n-2)(n+1) + 2 sqrt(n+1))
    const double den = (dn - 2.0) * (dn + 1.0) + 2.0 * rt;
    check(on, (dn + 2.0 - 2.0 * rt) / den);
    // 1 + omega n = n^2 / ((n-2)(n+1) + 2 sqrt(n+1))
    check(1.0 + on, dn * dn / den);
    // omega n / (1 + omega n) = (1/n^2)(n+2 - 2 sqrt(n+1))
    check(on / (1.0 + on), (dn + 2.0 - 2.0 * rt) / (dn * dn));
    // 1 - mu = omega n / (1 + omega n)
    check(1.0 - c.mu, on / (1.0 + on));
    return dev;
}

}  // namespace dfo

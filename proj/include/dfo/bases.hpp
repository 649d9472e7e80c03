#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dfo {

// The four direction families used to build interpolation points.
// CB/RB span R^n with n directions; CMPB/RMPB are minimal positive
// bases with n+1 directions.
enum class BasisKind {
    CoordinateBasis,
    RegularBasis,
    CoordinateMinimalPositiveBasis,
    RegularMinimalPositiveBasis,
};

bool is_minimal_positive(BasisKind kind);
bool is_regular(BasisKind kind);

// n for CB/RB, n+1 for CMPB/RMPB.
std::size_t direction_count(BasisKind kind, std::size_t n);

std::string_view to_string(BasisKind kind);
BasisKind parse_basis_kind(std::string_view name);  // "cb"/"rb"/"cmpb"/"rmpb"

/// Scalars attached to the regular basis of dimension n:
///   alpha = sqrt((n+1)/n)
///   gamma = (1/n)(1 - 1/sqrt(n+1))
///   mu    = alpha^2 (1 - 2 gamma)
///   omega = gamma^2 / (1 - 2 gamma)
///   sigma = 2 omega + omega^2 n + 1/(mu^2 n^2)
/// 1 - 2 gamma > 0 for all n >= 2, so mu and omega are well defined.
struct BasisConstants {
    std::size_t n = 0;
    double alpha = 0.0;
    double gamma = 0.0;
    double mu = 0.0;
    double omega = 0.0;
    double sigma = 0.0;
};

/// Throws std::domain_error for n < 2.
BasisConstants basis_constants(std::size_t n);

/// Writes direction j (1-based) of the basis into out (length n).
/// CB: e_j.  CMPB: e_j for j <= n, -e for j = n+1.
/// RB/RMPB: alpha (e_j - gamma e) for j <= n, -(1/sqrt(n)) e for j = n+1.
/// O(n) time, O(1) auxiliary storage.  Throws std::out_of_range on bad j.
void direction(BasisKind kind, const BasisConstants& consts, std::size_t j,
               std::span<double> out);

std::vector<double> direction(BasisKind kind, const BasisConstants& consts,
                              std::size_t j);

/// Applies V^{-1} = (1/alpha)(I + (1/n)(sqrt(n+1)-1) e e^T) in O(n).
std::vector<double> apply_regular_inverse(const BasisConstants& consts,
                                          std::span<const double> y);

/// Evaluates both sides of every constant identity from the appendix
/// (gamma/(1-n gamma), gamma^2, alpha^2 gamma^2 in both forms, 1-2gamma,
/// mu, omega n, 1+omega n, omega n/(1+omega n), 1-mu) and returns the
/// maximum relative deviation.
double verify_appendix_identities(std::size_t n);

}  // namespace dfo

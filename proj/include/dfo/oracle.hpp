#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dfo/sampling.hpp"

namespace dfo {

/// Dense row-major matrix, sized for reference computations only.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    Matrix transposed() const;
    Matrix multiply(const Matrix& other) const;
    std::vector<double> multiply(std::span<const double> v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Gaussian elimination with partial pivoting.  Throws
/// std::runtime_error (with a crude condition estimate in the message)
/// when a pivot ratio exceeds 1e12 or vanishes.
std::vector<double> solve_dense(Matrix a, std::vector<double> b);

/// Minimum-residual solution of A x = b through the normal equations.
std::vector<double> solve_least_squares(const Matrix& a,
                                        std::span<const double> b);

/// Eigenvalues (ascending) of a symmetric matrix, cyclic Jacobi.
std::vector<double> symmetric_eigenvalues(Matrix a);

/// Spectral norm of a general matrix: sqrt(lambda_max(A^T A)).
double spectral_norm(const Matrix& a);

/// Fully assembled interpolation system: direction matrix U (n x m,
/// holding U, V, U_+, or V_+), the Hadamard-square matrix W with
/// w_j = u_j o u_j, and the scheme radii.
struct AssembledSystem {
    Matrix u;
    Matrix w;
    double h = 0.0;
    double eta = 0.0;
    SamplingScheme scheme;
};

AssembledSystem assemble(const SamplingScheme& scheme);

/// Eliminates the block system into y = h U^T g and z = (1/2) h^2 W^T d
/// (the general-eta formulas) and solves both by generic dense least
/// squares — normal equations, exact solve when square, no
/// Sherman-Morrison shortcut anywhere.  This is the reference route the
/// O(n) closed forms are checked against.
std::pair<std::vector<double>, std::vector<double>> solve_quadratic(
    const AssembledSystem& sys, const SampleSet& samples);

/// Least-squares solution of df = h U^T g for linear models.
std::vector<double> solve_linear(const AssembledSystem& sys,
                                 const SampleSet& samples);

/// Residual 2-norm of the eliminated systems at the given (g, d):
/// sqrt(||h U^T g - y||^2 + ||(1/2) h^2 W^T d - z||^2).
double system_residual(const AssembledSystem& sys, const SampleSet& samples,
                       std::span<const double> g, std::span<const double> d);

}  // namespace dfo

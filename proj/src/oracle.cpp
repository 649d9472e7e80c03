#include "dfo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dfo {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

Matrix Matrix::multiply(const Matrix& other) const {
    if (cols_ != other.rows_) {
        throw std::invalid_argument("Matrix::multiply: dimension mismatch");
    }
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                out(i, j) += aik * other(k, j);
            }
        }
    }
    return out;
}

std::vector<double> Matrix::multiply(std::span<const double> v) const {
    if (cols_ != v.size()) {
        throw std::invalid_argument("Matrix::multiply: vector length mismatch");
    }
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

std::vector<double> solve_dense(Matrix a, std::vector<double> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) {
        throw std::invalid_argument("solve_dense: square system required");
    }
    double max_pivot = 0.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
            std::swap(b[col], b[pivot]);
        }
        const double p = a(col, col);
        max_pivot = std::max(max_pivot, std::abs(p));
        if (p == 0.0 || max_pivot / std::abs(p) > 1e12) {
            throw std::runtime_error(
                "solve_dense: singular or ill-conditioned system "
                "(pivot-ratio condition estimate " +
                std::to_string(p == 0.0 ? std::numeric_limits<double>::infinity()
                                        : max_pivot / std::abs(p)) +
                ")");
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(r, col) / p;
            if (factor == 0.0) continue;
            a(r, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) {
                a(r, j) -= factor * a(col, j);
            }
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

std::vector<double> solve_least_squares(const Matrix& a,
                                        std::span<const double> b) {
    if (a.rows() != b.size()) {
        throw std::invalid_argument("solve_least_squares: rhs length mismatch");
    }
    if (a.rows() == a.cols()) {
        return solve_dense(a, std::vector<double>(b.begin(), b.end()));
    }
    // Normal equations: (A^T A) x = A^T b.
    const Matrix at = a.transposed();
    Matrix ata = at.multiply(a);
    std::vector<double> atb = at.multiply(b);
    return solve_dense(std::move(ata), std::move(atb));
}

std::vector<double> symmetric_eigenvalues(Matrix a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) {
        throw std::invalid_argument("symmetric_eigenvalues: square required");
    }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        }
        if (off < 1e-26 * static_cast<double>(n * n)) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

double spectral_norm(const Matrix& a) {
    const Matrix ata = a.transposed().multiply(a);
    const std::vector<double> eig = symmetric_eigenvalues(ata);
    return std::sqrt(std::max(0.0, eig.back()));
}

AssembledSystem assemble(const SamplingScheme& scheme) {
    scheme.validate();
    const std::size_t n = scheme.n;
    const std::size_t m = scheme.direction_count();
    const BasisConstants consts = basis_constants(n);
    AssembledSystem sys;
    sys.u = Matrix(n, m);
    sys.w = Matrix(n, m);
    sys.h = scheme.h;
    sys.eta = scheme.eta;
    sys.scheme = scheme;
    std::vector<double> col(n);
    for (std::size_t j = 1; j <= m; ++j) {
        direction(scheme.kind, consts, j, col);
        for (std::size_t i = 0; i < n; ++i) {
            sys.u(i, j - 1) = col[i];
            sys.w(i, j - 1) = col[i] * col[i];
        }
    }
    return sys;
}

namespace {

std::vector<double> deltas(const SampleSet& samples, std::size_t m, bool primed) {
    const std::vector<double>& src = primed ? samples.fprime : samples.f;
    if (src.size() != m) {
        throw std::invalid_argument("oracle: sample block has wrong length");
    }
    std::vector<double> d(m);
    for (std::size_t j = 0; j < m; ++j) d[j] = src[j] - samples.f0;
    return d;
}

// Right-hand sides of the eliminated systems, general-eta formulas.
std::pair<std::vector<double>, std::vector<double>> eliminate(
    const AssembledSystem& sys, const SampleSet& samples) {
    const std::size_t m = sys.u.cols();
    const double eta = sys.eta;
    const std::vector<double> df = deltas(samples, m, false);
    const std::vector<double> dfp = deltas(samples, m, true);
    std::vector<double> y(m), z(m);
    for (std::size_t j = 0; j < m; ++j) {
        y[j] = (eta * eta * df[j] - dfp[j]) / (eta * (eta - 1.0));
        z[j] = (eta * df[j] - dfp[j]) / (eta * (1.0 - eta));
    }
    return {std::move(y), std::move(z)};
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> solve_quadratic(
    const AssembledSystem& sys, const SampleSet& samples) {
    const std::size_t n = sys.u.rows();
    const std::size_t m = sys.u.cols();
    const double h = sys.h;
    const auto [y, z] = eliminate(sys, samples);

    Matrix a_g(m, n), a_d(m, n);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            a_g(r, c) = h * sys.u(c, r);
            a_d(r, c) = 0.5 * h * h * sys.w(c, r);
        }
    }
    return {solve_least_squares(a_g, y), solve_least_squares(a_d, z)};
}

std::vector<double> solve_linear(const AssembledSystem& sys,
                                 const SampleSet& samples) {
    const std::size_t n = sys.u.rows();
    const std::size_t m = sys.u.cols();
    const std::vector<double> df = deltas(samples, m, false);
    Matrix a(m, n);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) a(r, c) = sys.h * sys.u(c, r);
    }
    return solve_least_squares(a, df);
}

double system_residual(const AssembledSystem& sys, const SampleSet& samples,
                       std::span<const double> g, std::span<const double> d) {
    const std::size_t n = sys.u.rows();
    const std::size_t m = sys.u.cols();
    const double h = sys.h;
    const auto [y, z] = eliminate(sys, samples);
    double sq = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        double ug = 0.0, wd = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            ug += sys.u(c, r) * g[c];
            wd += sys.w(c, r) * d[c];
        }
        const double rg = h * ug - y[r];
        const double rd = 0.5 * h * h * wd - z[r];
        sq += rg * rg + rd * rd;
    }
    return std::sqrt(sq);
}

}  // namespace dfo

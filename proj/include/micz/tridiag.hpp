#pragma once

// Symmetric tridiagonal eigensolver: bisection on Sturm sign counts for the
// eigenvalues, inverse iteration for the eigenvectors.

#include <cstddef>
#include <vector>

#include "micz/coeffs.hpp"

namespace micz {

using SymTridiagonal = Tridiagonal<double>;

/// Dense row-major matrix of doubles.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r * c), 0.0) {}

    double& operator()(int i, int j) { return data[static_cast<std::size_t>(i * cols + j)]; }
    double operator()(int i, int j) const { return data[static_cast<std::size_t>(i * cols + j)]; }

    std::vector<double> column(int j) const;
    void set_column(int j, const std::vector<double>& v);

    static Matrix identity(int n);
};

struct EigenSystem {
    std::vector<double> values; // ascending
    Matrix vectors;             // column k belongs to values[k]
};

/// Number of eigenvalues strictly less than x.
int sturm_count(const SymTridiagonal& m, double x);

/// max_i |d_i| + |e_{i-1}| + |e_i|
double gerschgorin_norm(const SymTridiagonal& m);

/// All eigenvalues, ascending, by bisection until the bracket is narrower than
/// rel_tol relative or cannot be split further (rel_tol = 0: adjacent doubles).
std::vector<double> tridiagonal_eigenvalues(const SymTridiagonal& m, double rel_tol = 0.0);

/// Unit eigenvector for the (computed) eigenvalue mu by inverse iteration.
/// Throws ConvergenceFailure when the residual target is not met within
/// max_iter iterations.
std::vector<double> inverse_iteration(const SymTridiagonal& m, double mu, int max_iter = 100);

/// Full eigensystem. Eigenvectors are orthonormalised and sign-fixed so the
/// first entry with magnitude above 1e-12 is positive.
EigenSystem eigen_sym_tridiagonal(const SymTridiagonal& m, double rel_tol = 0.0);

/// Flips v so that its first significant entry is positive.
void fix_sign(std::vector<double>& v);

std::vector<double> multiply(const SymTridiagonal& m, const std::vector<double>& v);

} // namespace micz

#pragma once

// Closed-form coefficient kernels of the spherical representation:
// A_lambda, B_lambda, B~_lambda and the tridiagonal M9 matrix.
//
// The focal distance a and the charge Z only ever appear as the product aZ,
// so the kernels take it as one parameter. aZ = 0 is the spherical limit.

#include <vector>

#include "micz/exact.hpp"
#include "micz/sector.hpp"

namespace micz {

/// Symmetric tridiagonal matrix, rows indexed by lambda ascending.
template <typename T>
struct Tridiagonal {
    std::vector<T> diag;
    std::vector<T> offdiag; // offdiag[i] couples rows i and i+1

    std::size_t size() const noexcept { return diag.size(); }
};

using ExactTridiagonal = Tridiagonal<RadicalScalar>;

RadicalScalar coef_B(const Sector& s, HalfInt lambda);
double coef_B_float(const Sector& s, HalfInt lambda);

/// A_lambda = aZ (J-L)(L+J+6) / (4 (lambda+3)(lambda+4)) - lambda (lambda+7)
Rational coef_A(const Sector& s, HalfInt lambda, const Rational& aZ);
double coef_A(const Sector& s, HalfInt lambda, double aZ);

/// B~_lambda = 2 aZ B_lambda / (2n + Q + 8)
RadicalScalar coef_Btilde(const Sector& s, HalfInt lambda, const Rational& aZ);
double coef_Btilde(const Sector& s, HalfInt lambda, double aZ);

/// Diagonal of M9 in the spherical basis:
/// -(J-L)(L+J+6)(2n+Q+8) / (8 (lambda+3)(lambda+4))
Rational m9_diagonal(const Sector& s, HalfInt lambda);

/// N x N closed-form M9 matrix; offdiag[i] = B at lambda_{i+1}.
ExactTridiagonal m9_spherical_matrix(const Sector& s);

} // namespace micz

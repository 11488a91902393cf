#pragma once

// Spherical <-> parabolic transformation W, its Clebsch-Gordan form, its
// three-term recurrence, and M9 rebuilt from W by brute force.

#include <vector>

#include "micz/coeffs.hpp"
#include "micz/exact.hpp"
#include "micz/sector.hpp"

namespace micz {

/// Dense N x N exact matrix, row-major.
struct ExactMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<RadicalScalar> data;

    ExactMatrix() = default;
    ExactMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r * c)) {}

    RadicalScalar& at(int i, int j) { return data[static_cast<std::size_t>(i * cols + j)]; }
    const RadicalScalar& at(int i, int j) const { return data[static_cast<std::size_t>(i * cols + j)]; }

    friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;
};

/// Rows indexed by lambda ascending, columns by n_p ascending.
struct WMatrix {
    Sector sector;
    ExactMatrix entries;

    int size() const noexcept { return entries.rows; }
    const RadicalScalar& at(int row, int np) const { return entries.at(row, np); }
};

/// SU(2) Clebsch-Gordan arguments C^{c,gamma}_{a,alpha; b,beta}.
struct CGArgs {
    HalfInt a, alpha, b, beta, c, gamma;
};

/// Closed form of W_{lambda; n_p}: sign, factorial prefactors and the
/// terminating 3F2 at unit argument summed exactly.
RadicalScalar w_coefficient(const Sector& s, HalfInt lambda, int np);

/// Exact Clebsch-Gordan coefficient (Condon-Shortley phase, Racah sum).
/// Returns zero when a selection rule fails.
RadicalScalar clebsch_gordan(const CGArgs& args);

/// The CG arguments that reproduce W_{lambda; n_p} up to the sign
/// (-1)^{n+Q/2-lambda-n_p}.
CGArgs w_cg_args(const Sector& s, HalfInt lambda, int np);

/// W_{lambda; n_p} evaluated through clebsch_gordan().
RadicalScalar w_via_cg(const Sector& s, HalfInt lambda, int np);

/// All N^2 entries, computed in parallel; exact orthogonality is checked
/// before returning (OrthogonalityViolation otherwise).
WMatrix w_matrix(const Sector& s);

/// Single-threaded reference for w_matrix().
WMatrix w_matrix_serial(const Sector& s);

/// Exact W^T W - I. Zero for a correct W.
std::vector<RadicalSum> orthogonality_defect(const WMatrix& w);

/// Residual of the three-term recurrence in lambda for fixed n_p:
///   [n_p - (n+Q/2-J)/2 + M9_diag(lambda)/2] W_{lambda}
///     + (B_lambda W_{lambda-1} + B_{lambda+1} W_{lambda+1}) / 2
/// with out-of-range W taken as zero.
RadicalSum w_recurrence_residual(const Sector& s, const WMatrix& w, int row, int np);

/// (M9)_{lambda' lambda} = sum_{n_p} (n+Q/2-J-2n_p) W_{lambda' n_p} W_{lambda n_p}
ExactMatrix m9_matrix_bruteforce(const Sector& s, const WMatrix& w);
ExactMatrix m9_matrix_bruteforce(const Sector& s);

/// Expands a tridiagonal matrix into a dense one.
ExactMatrix to_dense(const ExactTridiagonal& m);

} // namespace micz

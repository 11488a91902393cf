#pragma once

// Prolate-spheroidal eigenproblem in the spherical basis.
//
// K^(a) is the symmetric tridiagonal matrix with diagonal A_lambda(aZ) and
// off-diagonal -B~_lambda(aZ), lambda ascending. Its eigenvalues are the
// separation constants K_{n_k}(a), labelled n_k = 0, 1, ... in ascending
// order; its eigenvectors are the expansion coefficients T_{lambda; n_k}(a).
// For a > 0 the matrix is irreducible, so the spectrum is simple and the
// ascending labelling is continuous in a.

#include <span>
#include <vector>

#include "micz/coeffs.hpp"
#include "micz/sector.hpp"
#include "micz/tridiag.hpp"

namespace micz {

SymTridiagonal build_k_matrix(const Sector& s, double a, double Z);

/// K^ with aZ exact; diagonal entries are rational, off-diagonals radical.
ExactTridiagonal build_k_matrix_exact(const Sector& s, const Rational& aZ);

/// Exact trace sum_lambda A_lambda(aZ).
Rational k_matrix_trace(const Sector& s, const Rational& aZ);

struct SpheroidalSpectrum {
    Sector sector;
    double a = 0.0;
    double Z = 0.0;
    std::vector<double> K; // ascending
    Matrix T;              // column n_k; first significant entry positive
};

/// Full spectrum at focal distance a > 0 (DomainError otherwise).
SpheroidalSpectrum separation_constants(const Sector& s, double a, double Z);

/// max |K^ T - T diag(K)| / gerschgorin_norm(K^).
double eigen_residual(const SpheroidalSpectrum& spec);

/// max |T^T T - I|.
double orthonormality_defect(const Matrix& T);

/// Largest sign-aligned difference between the continuant columns and the
/// inverse-iteration columns at focal distance a.
double continuant_deviation(const Sector& s, double a, double Z);

/// Leading principal minors det|K^_(k) - K| for k = 0..N (order k; order 0
/// is 1), by the continuant recurrence. Unscaled.
std::vector<double> leading_continuants(const SymTridiagonal& kmat, double K);

/// T column for eigenvalue K from continuants alone. Components are ratios of
/// leading minors (forward recurrence) below a twist index and of trailing
/// minors (backward recurrence) above it, divided by products of B~. The
/// twist index minimises |det(K^-K)| / (p_r q_{r+1}). Recurrences run on
/// ratios of consecutive minors so nothing overflows.
/// Throws DegenerateShift when a needed minor ratio vanishes or is not finite,
/// and DomainError when some interior B~ is zero (a = 0).
std::vector<double> t_by_continuant(const Sector& s, double a, double Z, int nk, double K);

struct BranchPoint {
    double a = 0.0;
    double K = 0.0;
    double K_over_a = 0.0;
};

struct BranchSweep {
    Sector sector;
    double Z = 0.0;
    std::vector<double> a_grid;
    std::vector<std::vector<BranchPoint>> branches; // branches[n_k][grid index]
    double min_overlap = 1.0; // smallest |<v_i(a_k), v_i(a_{k+1})>| over the sweep
};

/// Ascending grid of `points` values in [a_min, a_max], linear or logarithmic.
std::vector<double> make_grid(double a_min, double a_max, int points, bool log_spaced);

/// Spectra at every grid point (computed in parallel), then branches matched
/// between neighbours by maximal eigenvector overlap. Throws
/// BranchMatchAmbiguous if the best overlap falls below 0.9 or the matching
/// is not a permutation.
BranchSweep sweep_branches(const Sector& s, double Z, std::span<const double> a_grid);

/// Single-threaded reference for sweep_branches().
BranchSweep sweep_branches_serial(const Sector& s, double Z, std::span<const double> a_grid);

struct SphericalLimitBranch {
    int nk = 0;
    HalfInt lambda;               // n + Q/2 - n_k
    double K = 0.0;               // K_{n_k}(a_small)
    double limit = 0.0;           // -lambda (lambda + 7)
    double slope = 0.0;           // dK/da at a = 0: Z (J-L)(L+J+6) / (4 (lambda+3)(lambda+4))
    double deviation = 0.0;       // |K - limit|
    double deviation_second = 0.0; // |K - limit - a slope|
    double t_deviation = 0.0;     // max |T column - e_lambda|
};

struct SphericalLimitReport {
    double a = 0.0;
    double tol_K = 0.0;
    double tol_T = 0.0;
    std::vector<SphericalLimitBranch> branches;
    bool passed = false; // every deviation_second <= tol_K and t_deviation <= tol_T
};

SphericalLimitReport check_spherical_limit(const Sector& s, double Z, double a_small = 1e-8, double tol_K = 1e-12,
                                           double tol_T = 1e-6);

struct ParabolicLimitBranch {
    int nk = 0;
    double K_over_a = 0.0;
    double expected = 0.0;   // sorted member of {2Z (n+Q/2-L-2k) / (2n+Q+8)}
    int matched_np = 0;      // W column matched by eigenvalue: -sqrt(-2E) m9(n_p) ~ K/a
    int labelled_np = 0;        // n - (L+J-Q)/2 - n_k
    double t_deviation = 0.0; // max |T column -/+ W column|
};

struct ParabolicLimitReport {
    double a = 0.0;
    double tol = 0.0;
    std::vector<ParabolicLimitBranch> branches;
    double max_set_deviation = 0.0;
    double max_t_deviation = 0.0;
    bool passed = false;
};

ParabolicLimitReport check_parabolic_limit(const Sector& s, double Z, double a_large = 1e6, double tol = 1e-4);

/// Throws Error(LimitMismatch) listing the failing branches.
void require(const SphericalLimitReport& r);
void require(const ParabolicLimitReport& r);

} // namespace micz

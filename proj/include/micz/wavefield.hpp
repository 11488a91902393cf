#pragma once

// Radial-angular wavefunctions in the spherical, parabolic and prolate
// spheroidal bases, the orthogonal polynomials they are built from, Gauss
// rules, and the numeric oracles (overlap quadrature, ODE residuals).
//
// Coordinates: r > 0, c = cos(theta), u = r(1+c), v = r(1-c). All
// wavefunctions are normalised under the measure r^8 (1-c^2)^3 dr dc.

#include <optional>
#include <span>
#include <vector>

#include "micz/sector.hpp"
#include "micz/spheroidal.hpp"
#include "micz/tridiag.hpp"

namespace micz {

struct PolyValue {
    double value = 0.0;
    double derivative = 0.0;
};

/// Generalised Laguerre L_k^(s)(x) and d/dx.
PolyValue laguerre_gen(int k, double s, double x);

/// Jacobi P_k^(p,q)(x) and d/dx. Requires p, q > -1.
PolyValue jacobi_gen(int k, double p, double q, double x);

enum class RuleKind { Laguerre, Legendre };

struct QuadratureRule {
    RuleKind kind = RuleKind::Legendre;
    double order = 0.0; // Laguerre weight x^order e^-x; unused for Legendre
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss rule from the Jacobi matrix: nodes by bisection plus a Newton
/// polish, weights from the Christoffel function.
QuadratureRule gauss_rule(RuleKind kind, int n_q, double order = 0.0);

struct RadialAngularPoint {
    double r = 0.0;
    double c = 0.0;
    double u = 0.0;
    double v = 0.0;
    std::optional<double> xi;
    std::optional<double> eta;
};

/// Derived coordinates; xi, eta use foci at the origin and at z = a.
RadialAngularPoint make_point(double r, double c, std::optional<double> a = std::nullopt);

double spherical_norm(const Sector& s, HalfInt lambda);
double parabolic_norm(const Sector& s, int np);

double psi_spherical(const Sector& s, HalfInt lambda, double r, double c);
double psi_parabolic(const Sector& s, int np, double u, double v);

/// sum_lambda T_{lambda; n_k}(a) psi_spherical(lambda).
double psi_spheroidal(const Sector& s, int nk, double a, double Z, double r, double c);
double psi_spheroidal(const SpheroidalSpectrum& spec, int nk, double r, double c);

/// Overlap <psi_spherical(lambda), psi_parabolic(n_p)> on an n_q x n_q
/// tensor rule (Laguerre order 8 in x = alpha r, Legendre in c).
double w_overlap_quadrature(const Sector& s, HalfInt lambda, int np, int n_q);

/// All overlaps, rows lambda ascending, columns n_p. Radial node rows are
/// summed in parallel into per-row partials and reduced in fixed order, so
/// the result does not depend on the thread count.
Matrix w_overlap_matrix(const Sector& s, int n_q);
Matrix w_overlap_matrix_serial(const Sector& s, int n_q);

struct ConvergedOverlap {
    Matrix values;
    int nodes = 0;           // rule size of the accepted result
    double last_change = 0.0; // max entry change over the final doubling
};

/// Doubles n_q from n_start until successive matrices differ by less than
/// tol (ConvergenceFailure past max_nodes).
ConvergedOverlap w_overlap_converged(const Sector& s, int n_start = 48, double tol = 1e-10, int max_nodes = 384);

/// Gram matrices of the spherical and parabolic bases by the same rules.
Matrix spherical_gram(const Sector& s, int n_q);
Matrix parabolic_gram(const Sector& s, int n_q);

/// <psi_spheroidal(n_k), psi_spheroidal(n_k)> by quadrature.
double spheroidal_norm(const Sector& s, int nk, double a, double Z, int n_q);

enum class OdeKind { Radial, Angular, ParabolicU, ParabolicV };

/// Max over points of |sum of terms| / sum of |terms| for the separated
/// equation of the given kind, evaluated with analytic derivatives.
/// `index` is lambda for Radial/Angular and n_p for the parabolic kinds.
/// Throws DomainError for a point outside the open domain.
double ode_residual(const Sector& s, OdeKind kind, HalfInt index, std::span<const double> points);

/// Fixed interior sample points used by ode_residual_all().
std::span<const double> default_ode_points(OdeKind kind);

/// Largest residual over every state of the sector and all four equations.
double ode_residual_all(const Sector& s);

} // namespace micz

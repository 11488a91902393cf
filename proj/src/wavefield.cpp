#include "micz/wavefield.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "micz/error.hpp"
#include "micz/parallel.hpp"

namespace micz {

namespace {

BigInt fact(HalfInt x)
{
    if (!x.is_integer() || x.twice() < 0)
        throw Error(ErrorCode::FactorialOfNegative, "factorial argument " + to_string(x));
    return factorial(x.as_int());
}

void check_lambda(const Sector& s, HalfInt lambda)
{
    if (lambda < s.bottom() || lambda > s.top() || !(lambda - s.bottom()).is_integer())
        throw Error(ErrorCode::IndexOutOfRange, "lambda = " + to_string(lambda));
}

void check_np(const Sector& s, int np)
{
    if (np < 0 || np >= s.dimension())
        throw Error(ErrorCode::IndexOutOfRange, "n_p = " + std::to_string(np));
}

double alpha_of(const Sector& s)
{
    return to_float(alpha_scale(s));
}

// Jacobi matrix of the monic recurrence: diagonal a_k, off-diagonal b_k
// (k = 1..n-1), zeroth moment mu0.
struct JacobiMatrix {
    std::vector<double> a;
    std::vector<double> b; // b[0] unused
    double mu0 = 0.0;
};

JacobiMatrix jacobi_matrix(RuleKind kind, int n, double order)
{
    JacobiMatrix jm;
    jm.a.resize(static_cast<std::size_t>(n + 1));
    jm.b.resize(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
        const double dk = k;
        if (kind == RuleKind::Laguerre) {
            jm.a[static_cast<std::size_t>(k)] = 2.0 * dk + order + 1.0;
            jm.b[static_cast<std::size_t>(k)] = std::sqrt(dk * (dk + order));
        } else {
            jm.a[static_cast<std::size_t>(k)] = 0.0;
            jm.b[static_cast<std::size_t>(k)] = k == 0 ? 0.0 : dk / std::sqrt(4.0 * dk * dk - 1.0);
        }
    }
    jm.mu0 = kind == RuleKind::Laguerre ? std::tgamma(order + 1.0) : 2.0;
    return jm;
}

struct OrthonormalEval {
    double pn = 0.0;         // p_n (scaled)
    double dpn = 0.0;        // p_n' (same scale)
    double log_sum = 0.0;    // log sum_{k<n} p_k^2 (unscaled)
};

OrthonormalEval orthonormal_eval(const JacobiMatrix& jm, int n, double x)
{
    constexpr double big = 1e100;
    double p_prev = 0.0;
    double p = 1.0 / std::sqrt(jm.mu0);
    double d_prev = 0.0;
    double d = 0.0;
    double sum = 0.0;
    double log_scale = 0.0; // true value = stored * exp(log_scale)
    for (int k = 0; k < n; ++k) {
        sum += p * p;
        const double bk1 = jm.b[static_cast<std::size_t>(k + 1)];
        const double bk = jm.b[static_cast<std::size_t>(k)];
        const double ak = jm.a[static_cast<std::size_t>(k)];
        double p_next = ((x - ak) * p - bk * p_prev) / bk1;
        double d_next = (p + (x - ak) * d - bk * d_prev) / bk1;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
        if (std::abs(p) > big || sum > big * big) {
            p /= big;
            p_prev /= big;
            d /= big;
            d_prev /= big;
            sum /= big * big;
            log_scale += std::log(big);
        }
    }
    return {p, d, std::log(sum) + 2.0 * log_scale};
}

// Sum over the tensor rule of left_i(x, c) right_j(x, c) (1-c^2)^3 w_x w_c.
// Each radial node accumulates its own partial matrix; partials are then
// added in node order.
using BasisFn = std::function<void(double x, double c, double* out)>;

Matrix tensor_gram(int n_q, int nl, int nr, const BasisFn& left, const BasisFn& right, bool parallel)
{
    const auto rx = gauss_rule(RuleKind::Laguerre, n_q, 8.0);
    const auto rc = gauss_rule(RuleKind::Legendre, n_q);
    const std::size_t block = static_cast<std::size_t>(nl * nr);
    std::vector<double> partial(static_cast<std::size_t>(n_q) * block, 0.0);

    auto row = [&](std::ptrdiff_t i) {
        const double x = rx.nodes[static_cast<std::size_t>(i)];
        double* acc = partial.data() + static_cast<std::size_t>(i) * block;
        std::vector<double> lv(static_cast<std::size_t>(nl));
        std::vector<double> rv(static_cast<std::size_t>(nr));
        for (int j = 0; j < n_q; ++j) {
            const double c = rc.nodes[static_cast<std::size_t>(j)];
            const double m = 1.0 - c * c;
            const double w = rc.weights[static_cast<std::size_t>(j)] * m * m * m;
            left(x, c, lv.data());
            right(x, c, rv.data());
            for (int p = 0; p < nl; ++p)
                for (int q = 0; q < nr; ++q)
                    acc[p * nr + q] += w * lv[static_cast<std::size_t>(p)] * rv[static_cast<std::size_t>(q)];
        }
    };
    if (parallel)
        parallel_for(n_q, row);
    else
        for (std::ptrdiff_t i = 0; i < n_q; ++i)
            row(i);

    Matrix out(nl, nr);
    for (int i = 0; i < n_q; ++i) {
        const double wx = rx.weights[static_cast<std::size_t>(i)];
        const double* acc = partial.data() + static_cast<std::size_t>(i) * block;
        for (std::size_t k = 0; k < block; ++k)
            out.data[k] += wx * acc[k];
    }
    return out;
}

// psi / (alpha^{9/2} e^{-x/2}) with x = alpha r, split into factors.
struct SphericalFactors {
    double norm;
    int k;          // n + Q/2 - lambda
    double lam;
    int kj;         // lambda - (L+J)/2
};

double spherical_reduced(const Sector& s, const SphericalFactors& f, double x, double c)
{
    const double radial = std::pow(x, f.lam) * laguerre_gen(f.k, 2.0 * f.lam + 7.0, x).value;
    const double angular = std::pow(2.0, -(s.L + s.J + 7) / 2.0) * std::pow(1.0 - c, s.L / 2.0) *
                           std::pow(1.0 + c, s.J / 2.0) * jacobi_gen(f.kj, s.L + 3.0, s.J + 3.0, c).value;
    return f.norm * radial * angular;
}

SphericalFactors spherical_factors(const Sector& s, HalfInt lambda)
{
    return {spherical_norm(s, lambda), (s.top() - lambda).as_int(), lambda.value(), (lambda - s.bottom()).as_int()};
}

// Same for the parabolic function expressed through x = alpha r and c.
double parabolic_reduced(const Sector& s, double norm, int np, double x, double c)
{
    const double yu = 0.5 * x * (1.0 + c);
    const double yv = 0.5 * x * (1.0 - c);
    const int m = (s.top() - s.bottom()).as_int() - np;
    return norm * std::pow(2.0, -3.5) * std::pow(yu, s.J / 2.0) * laguerre_gen(np, s.J + 3.0, yu).value *
           std::pow(yv, s.L / 2.0) * laguerre_gen(m, s.L + 3.0, yv).value;
}

BasisFn spherical_basis(const Sector& s)
{
    std::vector<SphericalFactors> fs;
    for (HalfInt l : lambda_range(s))
        fs.push_back(spherical_factors(s, l));
    return [s, fs](double x, double c, double* out) {
        for (std::size_t i = 0; i < fs.size(); ++i)
            out[i] = spherical_reduced(s, fs[i], x, c);
    };
}

BasisFn parabolic_basis(const Sector& s)
{
    std::vector<double> norms;
    for (int p : np_range(s))
        norms.push_back(parabolic_norm(s, p));
    return [s, norms](double x, double c, double* out) {
        for (std::size_t i = 0; i < norms.size(); ++i)
            out[i] = parabolic_reduced(s, norms[i], static_cast<int>(i), x, c);
    };
}

// f = y^l e^{-y/2} L_k^{(sp)}(y), returned divided by y^l e^{-y/2}:
// value, first and second y-derivatives.
std::array<double, 3> laguerre_factor(double l, int k, double sp, double y)
{
    const double gp = l / y - 0.5;
    const double gpp = gp * gp - l / (y * y);
    const double v = laguerre_gen(k, sp, y).value;
    const double d1 = k >= 1 ? -laguerre_gen(k - 1, sp + 1.0, y).value : 0.0;
    const double d2 = k >= 2 ? laguerre_gen(k - 2, sp + 2.0, y).value : 0.0;
    return {v, v * gp + d1, v * gpp + 2.0 * gp * d1 + d2};
}

double relative_residual(std::initializer_list<double> terms)
{
    double sum = 0.0;
    double mag = 0.0;
    for (double t : terms) {
        sum += t;
        mag += std::abs(t);
    }
    return mag == 0.0 ? 0.0 : std::abs(sum) / mag;
}

} // namespace

PolyValue laguerre_gen(int k, double s, double x)
{
    if (k < 0)
        throw Error(ErrorCode::InvalidArgument, "Laguerre degree must be non-negative");
    if (k == 0)
        return {1.0, 0.0};
    // Value and derivative share the recurrence: L' = -L_{k-1}^{(s+1)}.
    auto value = [](int deg, double sp, double xx) {
        double prev = 1.0;
        double cur = 1.0 + sp - xx;
        if (deg == 0)
            return prev;
        for (int j = 2; j <= deg; ++j) {
            double next = ((2.0 * j - 1.0 + sp - xx) * cur - (j - 1.0 + sp) * prev) / j;
            prev = cur;
            cur = next;
        }
        return cur;
    };
    return {value(k, s, x), -value(k - 1, s + 1.0, x)};
}

PolyValue jacobi_gen(int k, double p, double q, double x)
{
    if (k < 0)
        throw Error(ErrorCode::InvalidArgument, "Jacobi degree must be non-negative");
    if (!(p > -1.0) || !(q > -1.0))
        throw Error(ErrorCode::InvalidArgument, "Jacobi parameters must exceed -1");
    auto value = [](int deg, double a, double b, double xx) {
        double prev = 1.0;
        if (deg == 0)
            return prev;
        double cur = (a + 1.0) + (a + b + 2.0) * (xx - 1.0) / 2.0;
        for (int j = 2; j <= deg; ++j) {
            const double s = 2.0 * j + a + b;
            const double c1 = 2.0 * j * (j + a + b) * (s - 2.0);
            const double c2 = (s - 1.0) * (s * (s - 2.0) * xx + a * a - b * b);
            const double c3 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * s;
            double next = (c2 * cur - c3 * prev) / c1;
            prev = cur;
            cur = next;
        }
        return cur;
    };
    if (k == 0)
        return {1.0, 0.0};
    return {value(k, p, q, x), 0.5 * (k + p + q + 1.0) * value(k - 1, p + 1.0, q + 1.0, x)};
}

QuadratureRule gauss_rule(RuleKind kind, int n_q, double order)
{
    if (n_q < 1)
        throw Error(ErrorCode::InvalidArgument, "rule size must be at least 1");
    if (kind == RuleKind::Laguerre && !(order > -1.0))
        throw Error(ErrorCode::InvalidArgument, "Laguerre order must exceed -1");

    const auto jm = jacobi_matrix(kind, n_q, order);
    SymTridiagonal t;
    t.diag.assign(jm.a.begin(), jm.a.begin() + n_q);
    t.offdiag.assign(jm.b.begin() + 1, jm.b.begin() + n_q);
    auto nodes = tridiagonal_eigenvalues(t);

    QuadratureRule rule;
    rule.kind = kind;
    rule.order = kind == RuleKind::Laguerre ? order : 0.0;
    rule.nodes.resize(static_cast<std::size_t>(n_q));
    rule.weights.resize(static_cast<std::size_t>(n_q));
    for (int i = 0; i < n_q; ++i) {
        double x = nodes[static_cast<std::size_t>(i)];
        for (int it = 0; it < 3; ++it) {
            auto e = orthonormal_eval(jm, n_q, x);
            if (e.dpn == 0.0 || !std::isfinite(e.pn / e.dpn))
                break;
            double step = e.pn / e.dpn;
            if (std::abs(step) > 1e-6 * std::max(1.0, std::abs(x)))
                break;
            x -= step;
        }
        auto e = orthonormal_eval(jm, n_q, x);
        double w = std::exp(-e.log_sum);
        if (!std::isfinite(x) || !std::isfinite(w))
            throw Error(ErrorCode::ConvergenceFailure, "Gauss rule node " + std::to_string(i));
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
    }
    if (kind == RuleKind::Legendre) {
        for (int i = 0; i < n_q / 2; ++i) {
            auto lo = static_cast<std::size_t>(i);
            auto hi = static_cast<std::size_t>(n_q - 1 - i);
            double x = 0.5 * (rule.nodes[hi] - rule.nodes[lo]);
            double w = 0.5 * (rule.weights[hi] + rule.weights[lo]);
            rule.nodes[lo] = -x;
            rule.nodes[hi] = x;
            rule.weights[lo] = w;
            rule.weights[hi] = w;
        }
        if (n_q % 2 == 1)
            rule.nodes[static_cast<std::size_t>(n_q / 2)] = 0.0;
    }
    return rule;
}

RadialAngularPoint make_point(double r, double c, std::optional<double> a)
{
    if (!(r >= 0.0) || !(c >= -1.0 && c <= 1.0))
        throw Error(ErrorCode::DomainError, "need r >= 0 and |c| <= 1");
    RadialAngularPoint p;
    p.r = r;
    p.c = c;
    p.u = r * (1.0 + c);
    p.v = r * (1.0 - c);
    if (a) {
        if (!(*a > 0.0))
            throw Error(ErrorCode::DomainError, "focal distance must be positive");
        const double rho = r * std::sqrt(std::max(0.0, 1.0 - c * c));
        const double z = r * c;
        const double r2 = std::hypot(rho, z - *a);
        p.xi = (r + r2) / *a;
        p.eta = (r - r2) / *a;
    }
    return p;
}

double spherical_norm(const Sector& s, HalfInt lambda)
{
    check_lambda(s, lambda);
    const HalfInt top = s.top();
    const HalfInt h = s.bottom();
    const HalfInt d = s.half_diff();
    Rational sq(fact(top - lambda) * (lambda.twice() + 7) * fact(lambda - h) * fact(lambda + h + 6),
                BigInt(s.scale()) * fact(top + lambda + 7) * fact(lambda + d + 3) * fact(lambda - d + 3));
    sq.canonicalize();
    return to_float(RadicalScalar::sqrt_of(sq));
}

double parabolic_norm(const Sector& s, int np)
{
    check_np(s, np);
    const HalfInt P(np);
    const HalfInt top = s.top();
    Rational sq(fact(P) * fact(top - s.bottom() - P),
                BigInt(s.scale()) * fact(P + s.J + 3) * fact(top - s.half_diff() - P + 3));
    sq.canonicalize();
    return to_float(RadicalScalar::sqrt_of(sq));
}

double psi_spherical(const Sector& s, HalfInt lambda, double r, double c)
{
    if (!(r >= 0.0) || !(c >= -1.0 && c <= 1.0))
        throw Error(ErrorCode::DomainError, "need r >= 0 and |c| <= 1");
    const auto f = spherical_factors(s, lambda);
    const double alpha = alpha_of(s);
    const double x = alpha * r;
    return std::pow(alpha, 4.5) * std::exp(-0.5 * x) * spherical_reduced(s, f, x, c);
}

double psi_parabolic(const Sector& s, int np, double u, double v)
{
    if (!(u >= 0.0) || !(v >= 0.0))
        throw Error(ErrorCode::DomainError, "need u, v >= 0");
    const double norm = parabolic_norm(s, np);
    const double alpha = alpha_of(s);
    const double yu = 0.5 * alpha * u;
    const double yv = 0.5 * alpha * v;
    const int m = (s.top() - s.bottom()).as_int() - np;
    return norm * std::pow(2.0, -3.5) * std::pow(alpha, 4.5) * std::pow(yu, s.J / 2.0) * std::exp(-0.5 * yu) *
           laguerre_gen(np, s.J + 3.0, yu).value * std::pow(yv, s.L / 2.0) * std::exp(-0.5 * yv) *
           laguerre_gen(m, s.L + 3.0, yv).value;
}

double psi_spheroidal(const SpheroidalSpectrum& spec, int nk, double r, double c)
{
    const Sector& s = spec.sector;
    if (nk < 0 || nk >= s.dimension())
        throw Error(ErrorCode::IndexOutOfRange, "n_k = " + std::to_string(nk));
    auto lambdas = lambda_range(s);
    double sum = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        sum += spec.T(static_cast<int>(i), nk) * psi_spherical(s, lambdas[i], r, c);
    return sum;
}

double psi_spheroidal(const Sector& s, int nk, double a, double Z, double r, double c)
{
    return psi_spheroidal(separation_constants(s, a, Z), nk, r, c);
}

double w_overlap_quadrature(const Sector& s, HalfInt lambda, int np, int n_q)
{
    const auto f = spherical_factors(s, lambda);
    const double pn = parabolic_norm(s, np);
    BasisFn left = [&](double x, double c, double* out) { out[0] = spherical_reduced(s, f, x, c); };
    BasisFn right = [&](double x, double c, double* out) { out[0] = parabolic_reduced(s, pn, np, x, c); };
    return tensor_gram(n_q, 1, 1, left, right, false)(0, 0);
}

Matrix w_overlap_matrix(const Sector& s, int n_q)
{
    const int N = s.dimension();
    return tensor_gram(n_q, N, N, spherical_basis(s), parabolic_basis(s), true);
}

Matrix w_overlap_matrix_serial(const Sector& s, int n_q)
{
    const int N = s.dimension();
    return tensor_gram(n_q, N, N, spherical_basis(s), parabolic_basis(s), false);
}

ConvergedOverlap w_overlap_converged(const Sector& s, int n_start, double tol, int max_nodes)
{
    if (n_start < 1)
        throw Error(ErrorCode::InvalidArgument, "rule size must be at least 1");
    Matrix prev = w_overlap_matrix(s, n_start);
    for (int n = 2 * n_start; n <= max_nodes; n *= 2) {
        Matrix cur = w_overlap_matrix(s, n);
        double change = 0.0;
        for (std::size_t k = 0; k < cur.data.size(); ++k)
            change = std::max(change, std::abs(cur.data[k] - prev.data[k]));
        if (change < tol)
            return {std::move(cur), n, change};
        prev = std::move(cur);
    }
    throw Error(ErrorCode::ConvergenceFailure, "overlap quadrature not stable up to " + std::to_string(max_nodes) +
                                                   " nodes");
}

Matrix spherical_gram(const Sector& s, int n_q)
{
    const int N = s.dimension();
    auto b = spherical_basis(s);
    return tensor_gram(n_q, N, N, b, b, true);
}

Matrix parabolic_gram(const Sector& s, int n_q)
{
    const int N = s.dimension();
    auto b = parabolic_basis(s);
    return tensor_gram(n_q, N, N, b, b, true);
}

double spheroidal_norm(const Sector& s, int nk, double a, double Z, int n_q)
{
    if (nk < 0 || nk >= s.dimension())
        throw Error(ErrorCode::IndexOutOfRange, "n_k = " + std::to_string(nk));
    const auto spec = separation_constants(s, a, Z);
    const int N = s.dimension();
    auto sph = spherical_basis(s);
    BasisFn b = [&](double x, double c, double* out) {
        std::vector<double> v(static_cast<std::size_t>(N));
        sph(x, c, v.data());
        double sum = 0.0;
        for (int i = 0; i < N; ++i)
            sum += spec.T(i, nk) * v[static_cast<std::size_t>(i)];
        out[0] = sum;
    };
    return tensor_gram(n_q, 1, 1, b, b, false)(0, 0);
}

double ode_residual(const Sector& s, OdeKind kind, HalfInt index, std::span<const double> points)
{
    const double Z = s.z_float();
    const double E = energy_float(s);
    const double alpha = alpha_of(s);
    const double L = s.L;
    const double J = s.J;
    double worst = 0.0;

    switch (kind) {
    case OdeKind::Radial: {
        check_lambda(s, index);
        const double l = index.value();
        const int k = (s.top() - index).as_int();
        for (double r : points) {
            if (!(r > 0.0) || !std::isfinite(r))
                throw Error(ErrorCode::DomainError, "radial point must be positive");
            auto f = laguerre_factor(l, k, 2.0 * l + 7.0, alpha * r);
            const double R = f[0], dR = alpha * f[1], d2R = alpha * alpha * f[2];
            worst = std::max(worst, relative_residual({-0.5 * d2R, -4.0 / r * dR, l * (l + 7.0) / (2.0 * r * r) * R,
                                                       -Z / r * R, -E * R}));
        }
        break;
    }
    case OdeKind::Angular: {
        check_lambda(s, index);
        const double l = index.value();
        const int k = (index - s.bottom()).as_int();
        const double p = L + 3.0, q = J + 3.0;
        for (double c : points) {
            if (!(c > -1.0 && c < 1.0))
                throw Error(ErrorCode::DomainError, "angular point must satisfy |c| < 1");
            const double a = L / 2.0, b = J / 2.0;
            const double hp = -a / (1.0 - c) + b / (1.0 + c);
            const double hpp = hp * hp - a / ((1.0 - c) * (1.0 - c)) - b / ((1.0 + c) * (1.0 + c));
            const auto P = jacobi_gen(k, p, q, c);
            const double P2 = k >= 1 ? 0.5 * (k + p + q + 1.0) * jacobi_gen(k - 1, p + 1.0, q + 1.0, c).derivative : 0.0;
            // Theta / h with h = (1-c)^{L/2} (1+c)^{J/2}.
            const double T = P.value;
            const double dT = P.value * hp + P.derivative;
            const double d2T = P.value * hpp + 2.0 * hp * P.derivative + P2;
            worst = std::max(worst, relative_residual({-(1.0 - c * c) * d2T, 8.0 * c * dT,
                                                       L * (L + 6.0) / (2.0 * (1.0 - c)) * T,
                                                       J * (J + 6.0) / (2.0 * (1.0 + c)) * T, -l * (l + 7.0) * T}));
        }
        break;
    }
    case OdeKind::ParabolicU:
    case OdeKind::ParabolicV: {
        if (!index.is_integer())
            throw Error(ErrorCode::IndexOutOfRange, "n_p = " + to_string(index));
        const int np = index.as_int();
        check_np(s, np);
        const bool is_u = kind == OdeKind::ParabolicU;
        const double m = is_u ? J : L;
        const int k = is_u ? np : (s.top() - s.bottom()).as_int() - np;
        const double P = m9_parabolic_eigenvalue(s, np).value() * std::sqrt(-2.0 * E) / 2.0;
        const double sign = is_u ? -1.0 : 1.0;
        const double sc = alpha / 2.0;
        for (double w : points) {
            if (!(w > 0.0) || !std::isfinite(w))
                throw Error(ErrorCode::DomainError, "parabolic point must be positive");
            auto f = laguerre_factor(m / 2.0, k, m + 3.0, sc * w);
            const double U = f[0], dU = sc * f[1], d2U = sc * sc * f[2];
            worst = std::max(worst, relative_residual({w * d2U, 4.0 * dU, -m * (m + 6.0) / (4.0 * w) * U, Z / 2.0 * U,
                                                       E * w / 2.0 * U, sign * P * U}));
        }
        break;
    }
    }
    return worst;
}

std::span<const double> default_ode_points(OdeKind kind)
{
    static const std::array<double, 6> radial{0.25, 0.5, 1.0, 2.0, 5.0, 12.0};
    static const std::array<double, 7> angular{-0.9, -0.6, -0.25, 0.0, 0.3, 0.65, 0.9};
    static const std::array<double, 6> parabolic{0.3, 1.0, 2.5, 6.0, 12.0, 25.0};
    switch (kind) {
    case OdeKind::Radial:
        return radial;
    case OdeKind::Angular:
        return angular;
    default:
        return parabolic;
    }
}

double ode_residual_all(const Sector& s)
{
    double worst = 0.0;
    for (HalfInt l : lambda_range(s)) {
        worst = std::max(worst, ode_residual(s, OdeKind::Radial, l, default_ode_points(OdeKind::Radial)));
        worst = std::max(worst, ode_residual(s, OdeKind::Angular, l, default_ode_points(OdeKind::Angular)));
    }
    for (int p : np_range(s)) {
        worst = std::max(worst, ode_residual(s, OdeKind::ParabolicU, HalfInt(p), default_ode_points(OdeKind::ParabolicU)));
        worst = std::max(worst, ode_residual(s, OdeKind::ParabolicV, HalfInt(p), default_ode_points(OdeKind::ParabolicV)));
    }
    return worst;
}

} // namespace micz

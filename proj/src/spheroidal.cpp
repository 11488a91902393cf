#include "micz/spheroidal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "micz/error.hpp"
#include "micz/interbasis.hpp"
#include "micz/parallel.hpp"

namespace micz {

namespace {

double max_abs_diff_up_to_sign(const std::vector<double>& x, const std::vector<double>& y)
{
    double plus = 0.0;
    double minus = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        plus = std::max(plus, std::abs(x[i] - y[i]));
        minus = std::max(minus, std::abs(x[i] + y[i]));
    }
    return std::min(plus, minus);
}

std::vector<SpheroidalSpectrum> spectra_on_grid(const Sector& s, double Z, std::span<const double> grid, bool parallel)
{
    std::vector<SpheroidalSpectrum> out(grid.size());
    auto one = [&](std::ptrdiff_t i) {
        out[static_cast<std::size_t>(i)] = separation_constants(s, grid[static_cast<std::size_t>(i)], Z);
    };
    if (parallel)
        parallel_for(static_cast<std::ptrdiff_t>(grid.size()), one);
    else
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size()); ++i)
            one(i);
    return out;
}

BranchSweep match_branches(const Sector& s, double Z, std::span<const double> grid,
                           const std::vector<SpheroidalSpectrum>& spectra)
{
    const int N = s.dimension();
    BranchSweep sweep;
    sweep.sector = s;
    sweep.Z = Z;
    sweep.a_grid.assign(grid.begin(), grid.end());
    sweep.branches.assign(static_cast<std::size_t>(N), {});

    // perm[i]: column of the current spectrum that carries branch i.
    std::vector<int> perm(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i)
        perm[static_cast<std::size_t>(i)] = i;

    for (std::size_t g = 0; g < spectra.size(); ++g) {
        const auto& sp = spectra[g];
        if (g > 0) {
            const auto& prev = spectra[g - 1];
            std::vector<int> next(static_cast<std::size_t>(N), -1);
            std::vector<bool> taken(static_cast<std::size_t>(N), false);
            for (int i = 0; i < N; ++i) {
                int from = perm[static_cast<std::size_t>(i)];
                int best = -1;
                double best_overlap = -1.0;
                for (int j = 0; j < N; ++j) {
                    double ov = 0.0;
                    for (int r = 0; r < N; ++r)
                        ov += prev.T(r, from) * sp.T(r, j);
                    ov = std::abs(ov);
                    if (ov > best_overlap) {
                        best_overlap = ov;
                        best = j;
                    }
                }
                if (best_overlap < 0.9 || taken[static_cast<std::size_t>(best)]) {
                    std::ostringstream msg;
                    msg << "branch " << i << " between a=" << grid[g - 1] << " and a=" << grid[g]
                        << " (best overlap " << best_overlap << "); refine the grid";
                    throw Error(ErrorCode::BranchMatchAmbiguous, msg.str());
                }
                taken[static_cast<std::size_t>(best)] = true;
                next[static_cast<std::size_t>(i)] = best;
                sweep.min_overlap = std::min(sweep.min_overlap, best_overlap);
            }
            perm = next;
        }
        for (int i = 0; i < N; ++i) {
            double K = sp.K[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
            sweep.branches[static_cast<std::size_t>(i)].push_back(BranchPoint{sp.a, K, K / sp.a});
        }
    }
    return sweep;
}

} // namespace

SymTridiagonal build_k_matrix(const Sector& s, double a, double Z)
{
    if (a < 0.0 || !(Z > 0.0))
        throw Error(ErrorCode::DomainError, "require a >= 0 and Z > 0");
    const double aZ = a * Z;
    SymTridiagonal m;
    auto lambdas = lambda_range(s);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        m.diag.push_back(coef_A(s, lambdas[i], aZ));
        if (i > 0)
            m.offdiag.push_back(-coef_Btilde(s, lambdas[i], aZ));
    }
    return m;
}

ExactTridiagonal build_k_matrix_exact(const Sector& s, const Rational& aZ)
{
    if (sgn(aZ) < 0)
        throw Error(ErrorCode::DomainError, "require aZ >= 0");
    ExactTridiagonal m;
    auto lambdas = lambda_range(s);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        m.diag.emplace_back(coef_A(s, lambdas[i], aZ));
        if (i > 0)
            m.offdiag.push_back(-coef_Btilde(s, lambdas[i], aZ));
    }
    return m;
}

Rational k_matrix_trace(const Sector& s, const Rational& aZ)
{
    Rational t = 0;
    for (HalfInt l : lambda_range(s))
        t += coef_A(s, l, aZ);
    t.canonicalize();
    return t;
}

SpheroidalSpectrum separation_constants(const Sector& s, double a, double Z)
{
    if (!(a > 0.0))
        throw Error(ErrorCode::DomainError, "focal distance a must be positive");
    auto kmat = build_k_matrix(s, a, Z);
    auto eig = eigen_sym_tridiagonal(kmat);
    return SpheroidalSpectrum{s, a, Z, std::move(eig.values), std::move(eig.vectors)};
}

double eigen_residual(const SpheroidalSpectrum& spec)
{
    auto kmat = build_k_matrix(spec.sector, spec.a, spec.Z);
    const int N = spec.sector.dimension();
    double worst = 0.0;
    for (int k = 0; k < N; ++k) {
        auto col = spec.T.column(k);
        auto kt = multiply(kmat, col);
        for (int i = 0; i < N; ++i)
            worst = std::max(worst, std::abs(kt[static_cast<std::size_t>(i)] - spec.K[static_cast<std::size_t>(k)] * col[static_cast<std::size_t>(i)]));
    }
    return worst / std::max(gerschgorin_norm(kmat), std::numeric_limits<double>::min());
}

double orthonormality_defect(const Matrix& T)
{
    double worst = 0.0;
    for (int p = 0; p < T.cols; ++p)
        for (int q = 0; q < T.cols; ++q) {
            double d = 0.0;
            for (int i = 0; i < T.rows; ++i)
                d += T(i, p) * T(i, q);
            worst = std::max(worst, std::abs(d - (p == q ? 1.0 : 0.0)));
        }
    return worst;
}

double continuant_deviation(const Sector& s, double a, double Z)
{
    auto spec = separation_constants(s, a, Z);
    double worst = 0.0;
    for (int k = 0; k < s.dimension(); ++k) {
        auto t = t_by_continuant(s, a, Z, k, spec.K[static_cast<std::size_t>(k)]);
        worst = std::max(worst, max_abs_diff_up_to_sign(t, spec.T.column(k)));
    }
    return worst;
}

std::vector<double> leading_continuants(const SymTridiagonal& kmat, double K)
{
    const std::size_t n = kmat.size();
    std::vector<double> p(n + 1);
    p[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        p[i + 1] = (kmat.diag[i] - K) * p[i];
        if (i > 0)
            p[i + 1] -= kmat.offdiag[i - 1] * kmat.offdiag[i - 1] * p[i - 1];
    }
    return p;
}

std::vector<double> t_by_continuant(const Sector& s, double a, double Z, int nk, double K)
{
    const int N = s.dimension();
    if (nk < 0 || nk >= N)
        throw Error(ErrorCode::IndexOutOfRange, "n_k = " + std::to_string(nk));
    if (N == 1)
        return {1.0};

    auto kmat = build_k_matrix(s, a, Z);
    // B~ at lambda_{i}, i = 1..N-1, positive.
    std::vector<double> bt(static_cast<std::size_t>(N), 0.0);
    for (int i = 1; i < N; ++i) {
        bt[static_cast<std::size_t>(i)] = -kmat.offdiag[static_cast<std::size_t>(i - 1)];
        if (!(bt[static_cast<std::size_t>(i)] > 0.0))
            throw Error(ErrorCode::DomainError, "B~ vanishes on the interior; continuant path needs a > 0");
    }
    auto shift = [&](int i) { return kmat.diag[static_cast<std::size_t>(i)] - K; };
    auto degenerate = [](double x) { return x == 0.0 || !std::isfinite(x); };

    // fwd[i] = p_{i+1} / p_i (leading minors), bwd[i] = q_i / q_{i+1}
    // (trailing minors starting at row i).
    std::vector<double> fwd(static_cast<std::size_t>(N));
    std::vector<double> bwd(static_cast<std::size_t>(N));
    fwd[0] = shift(0);
    for (int i = 1; i < N; ++i) {
        double b = bt[static_cast<std::size_t>(i)];
        fwd[static_cast<std::size_t>(i)] = shift(i) - b * b / fwd[static_cast<std::size_t>(i - 1)];
    }
    bwd[static_cast<std::size_t>(N - 1)] = shift(N - 1);
    for (int i = N - 2; i >= 0; --i) {
        double b = bt[static_cast<std::size_t>(i + 1)];
        bwd[static_cast<std::size_t>(i)] = shift(i) - b * b / bwd[static_cast<std::size_t>(i + 1)];
    }

    int twist = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < N; ++r) {
        double g = shift(r);
        if (r > 0) {
            double b = bt[static_cast<std::size_t>(r)];
            g -= b * b / fwd[static_cast<std::size_t>(r - 1)];
        }
        if (r + 1 < N) {
            double b = bt[static_cast<std::size_t>(r + 1)];
            g -= b * b / bwd[static_cast<std::size_t>(r + 1)];
        }
        if (std::isfinite(g) && std::abs(g) < best) {
            best = std::abs(g);
            twist = r;
        }
    }

    std::vector<double> t(static_cast<std::size_t>(N), 0.0);
    t[static_cast<std::size_t>(twist)] = 1.0;
    for (int i = twist - 1; i >= 0; --i) {
        double ratio = fwd[static_cast<std::size_t>(i)];
        if (degenerate(ratio))
            throw Error(ErrorCode::DegenerateShift, "leading minor ratio vanished at row " + std::to_string(i));
        t[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i + 1)] * bt[static_cast<std::size_t>(i + 1)] / ratio;
    }
    for (int i = twist + 1; i < N; ++i) {
        double ratio = bwd[static_cast<std::size_t>(i)];
        if (degenerate(ratio))
            throw Error(ErrorCode::DegenerateShift, "trailing minor ratio vanished at row " + std::to_string(i));
        t[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i - 1)] * bt[static_cast<std::size_t>(i)] / ratio;
    }

    double norm = 0.0;
    for (double x : t)
        norm += x * x;
    norm = std::sqrt(norm);
    if (degenerate(norm))
        throw Error(ErrorCode::DegenerateShift, "continuant vector not normalisable");
    for (double& x : t)
        x /= norm;
    fix_sign(t);
    return t;
}

std::vector<double> make_grid(double a_min, double a_max, int points, bool log_spaced)
{
    if (points < 2)
        throw Error(ErrorCode::InvalidArgument, "need at least 2 grid points");
    if (!(a_min > 0.0) || !(a_min < a_max))
        throw Error(ErrorCode::InvalidArgument, "need 0 < a_min < a_max");
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        double f = static_cast<double>(i) / (points - 1);
        grid[static_cast<std::size_t>(i)] =
            log_spaced ? std::exp(std::log(a_min) + f * (std::log(a_max) - std::log(a_min))) : a_min + f * (a_max - a_min);
    }
    grid.front() = a_min;
    grid.back() = a_max;
    return grid;
}

BranchSweep sweep_branches(const Sector& s, double Z, std::span<const double> a_grid)
{
    for (std::size_t i = 0; i < a_grid.size(); ++i)
        if (!(a_grid[i] > 0.0) || (i > 0 && !(a_grid[i] > a_grid[i - 1])))
            throw Error(ErrorCode::InvalidArgument, "a grid must be positive and strictly ascending");
    return match_branches(s, Z, a_grid, spectra_on_grid(s, Z, a_grid, true));
}

BranchSweep sweep_branches_serial(const Sector& s, double Z, std::span<const double> a_grid)
{
    for (std::size_t i = 0; i < a_grid.size(); ++i)
        if (!(a_grid[i] > 0.0) || (i > 0 && !(a_grid[i] > a_grid[i - 1])))
            throw Error(ErrorCode::InvalidArgument, "a grid must be positive and strictly ascending");
    return match_branches(s, Z, a_grid, spectra_on_grid(s, Z, a_grid, false));
}

SphericalLimitReport check_spherical_limit(const Sector& s, double Z, double a_small, double tol_K, double tol_T)
{
    if (!(a_small > 0.0))
        throw Error(ErrorCode::DomainError, "a_small must be positive");
    auto sp = separation_constants(s, a_small, Z);
    const int N = s.dimension();

    SphericalLimitReport rep;
    rep.a = a_small;
    rep.tol_K = tol_K;
    rep.tol_T = tol_T;
    rep.passed = true;
    for (int k = 0; k < N; ++k) {
        SphericalLimitBranch b;
        b.nk = k;
        b.lambda = s.top() - k;
        const double lam = b.lambda.value();
        b.K = sp.K[static_cast<std::size_t>(k)];
        b.limit = -lam * (lam + 7.0);
        b.slope = Z * (s.J - s.L) * (s.L + s.J + 6) / (4.0 * (lam + 3.0) * (lam + 4.0));
        b.deviation = std::abs(b.K - b.limit);
        b.deviation_second = std::abs(b.K - b.limit - a_small * b.slope);

        std::vector<double> unit(static_cast<std::size_t>(N), 0.0);
        unit[static_cast<std::size_t>(lambda_index(s, b.lambda))] = 1.0;
        b.t_deviation = max_abs_diff_up_to_sign(sp.T.column(k), unit);

        if (!(b.deviation_second <= tol_K) || !(b.t_deviation <= tol_T))
            rep.passed = false;
        rep.branches.push_back(b);
    }
    return rep;
}

ParabolicLimitReport check_parabolic_limit(const Sector& s, double Z, double a_large, double tol)
{
    if (!(a_large > 0.0))
        throw Error(ErrorCode::DomainError, "a_large must be positive");
    auto sp = separation_constants(s, a_large, Z);
    auto w = w_matrix(s);
    const int N = s.dimension();

    std::vector<double> expected;
    for (int k = 0; k < N; ++k)
        expected.push_back(2.0 * Z * (s.top() - s.L - 2 * k).value() / s.scale());
    std::sort(expected.begin(), expected.end());

    ParabolicLimitReport rep;
    rep.a = a_large;
    rep.tol = tol;
    for (int k = 0; k < N; ++k) {
        ParabolicLimitBranch b;
        b.nk = k;
        b.K_over_a = sp.K[static_cast<std::size_t>(k)] / a_large;
        b.expected = expected[static_cast<std::size_t>(k)];
        // K/a -> -sqrt(-2E) m9(n_p) and m9 decreases with n_p, so ascending
        // K pairs with ascending n_p.
        b.matched_np = k;
        b.labelled_np = N - 1 - k;
        std::vector<double> wcol(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i)
            wcol[static_cast<std::size_t>(i)] = to_float(w.at(i, b.matched_np));
        b.t_deviation = max_abs_diff_up_to_sign(sp.T.column(k), wcol);
        rep.max_set_deviation = std::max(rep.max_set_deviation, std::abs(b.K_over_a - b.expected));
        rep.max_t_deviation = std::max(rep.max_t_deviation, b.t_deviation);
        rep.branches.push_back(b);
    }
    rep.passed = rep.max_set_deviation <= tol && rep.max_t_deviation <= tol;
    return rep;
}

void require(const SphericalLimitReport& r)
{
    if (r.passed)
        return;
    std::ostringstream msg;
    msg << "spherical limit at a=" << r.a << ":";
    for (const auto& b : r.branches)
        if (!(b.deviation_second <= r.tol_K) || !(b.t_deviation <= r.tol_T))
            msg << " [n_k=" << b.nk << " K=" << b.K << " limit=" << b.limit << " dK=" << b.deviation_second
                << " dT=" << b.t_deviation << "]";
    throw Error(ErrorCode::LimitMismatch, msg.str());
}

void require(const ParabolicLimitReport& r)
{
    if (r.passed)
        return;
    std::ostringstream msg;
    msg << "parabolic limit at a=" << r.a << ":";
    for (const auto& b : r.branches)
        if (!(std::abs(b.K_over_a - b.expected) <= r.tol) || !(b.t_deviation <= r.tol))
            msg << " [n_k=" << b.nk << " K/a=" << b.K_over_a << " expected=" << b.expected
                << " dT=" << b.t_deviation << "]";
    throw Error(ErrorCode::LimitMismatch, msg.str());
}

} // namespace micz

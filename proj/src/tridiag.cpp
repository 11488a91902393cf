#include "micz/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "micz/error.hpp"

namespace micz {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double dot(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

void normalize(std::vector<double>& v)
{
    double n = std::sqrt(dot(v, v));
    for (double& x : v)
        x /= n;
}

// LU factorisation with partial pivoting of (T - mu I), LAPACK gttrf layout.
struct ShiftedLU {
    std::vector<double> dl, d, du, du2;
    std::vector<int> ipiv;

    ShiftedLU(const SymTridiagonal& m, double mu, double tiny)
    {
        const std::size_t n = m.size();
        d.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            d[i] = m.diag[i] - mu;
        dl = m.offdiag;
        du = m.offdiag;
        du2.assign(n > 2 ? n - 2 : 0, 0.0);
        ipiv.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            ipiv[i] = static_cast<int>(i);

        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (d[i] != 0.0) {
                    double fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                double fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                double temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                ipiv[i] = static_cast<int>(i + 1);
            }
        }
        // An exactly singular pivot means mu hit an eigenvalue to the last
        // bit; nudge it so the solve amplifies that direction instead.
        for (double& p : d)
            if (std::abs(p) < tiny)
                p = p < 0.0 ? -tiny : tiny;
    }

    void solve(std::vector<double>& b) const
    {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (ipiv[i] == static_cast<int>(i)) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                double temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        if (n > 1)
            b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for (std::size_t k = n - 2; k-- > 0;)
            b[k] = (b[k] - du[k] * b[k + 1] - du2[k] * b[k + 2]) / d[k];
    }
};

std::vector<double> inverse_iteration_impl(const SymTridiagonal& m, double mu, int max_iter,
                                           const std::vector<std::vector<double>>& against)
{
    const std::size_t n = m.size();
    if (n == 1)
        return {1.0};

    const double norm = std::max(gerschgorin_norm(m), std::numeric_limits<double>::min());
    const double tiny = kEps * norm;
    const double target = 1e-13 * norm;
    ShiftedLU lu(m, mu, tiny);

    // Deterministic start vector with mixed signs and magnitudes.
    std::vector<double> v(n);
    std::uint32_t state = 0x9e3779b9u;
    for (double& x : v) {
        state = state * 1664525u + 1013904223u;
        x = 0.5 + static_cast<double>(state >> 8) / static_cast<double>(1u << 24);
        if ((state >> 3) & 1u)
            x = -x;
    }
    normalize(v);

    int converged_steps = 0;
    for (int it = 0; it < max_iter; ++it) {
        lu.solve(v);
        for (const auto& u : against) {
            double c = dot(u, v);
            for (std::size_t i = 0; i < n; ++i)
                v[i] -= c * u[i];
        }
        normalize(v);

        auto tv = multiply(m, v);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            res = std::max(res, std::abs(tv[i] - mu * v[i]));
        if (res <= target) {
            // One extra sweep after the target is reached tightens the
            // direction without changing the residual scale.
            if (++converged_steps >= 2)
                return v;
        }
    }
    if (converged_steps > 0)
        return v;
    throw Error(ErrorCode::ConvergenceFailure, "inverse iteration did not converge for mu = " + std::to_string(mu));
}

} // namespace

std::vector<double> Matrix::column(int j) const
{
    std::vector<double> out(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i)
        out[static_cast<std::size_t>(i)] = (*this)(i, j);
    return out;
}

void Matrix::set_column(int j, const std::vector<double>& v)
{
    for (int i = 0; i < rows; ++i)
        (*this)(i, j) = v[static_cast<std::size_t>(i)];
}

Matrix Matrix::identity(int n)
{
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

std::vector<double> multiply(const SymTridiagonal& m, const std::vector<double>& v)
{
    const std::size_t n = m.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = m.diag[i] * v[i];
        if (i > 0)
            s += m.offdiag[i - 1] * v[i - 1];
        if (i + 1 < n)
            s += m.offdiag[i] * v[i + 1];
        out[i] = s;
    }
    return out;
}

double gerschgorin_norm(const SymTridiagonal& m)
{
    const std::size_t n = m.size();
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = std::abs(m.diag[i]);
        if (i > 0)
            r += std::abs(m.offdiag[i - 1]);
        if (i + 1 < n)
            r += std::abs(m.offdiag[i]);
        norm = std::max(norm, r);
    }
    return norm;
}

int sturm_count(const SymTridiagonal& m, double x)
{
    const std::size_t n = m.size();
    double emax = 1.0;
    for (double e : m.offdiag)
        emax = std::max(emax, e * e);
    const double pivmin = std::numeric_limits<double>::min() * emax;

    int count = 0;
    double q = m.diag[0] - x;
    if (std::abs(q) < pivmin)
        q = -pivmin;
    if (q < 0.0)
        ++count;
    for (std::size_t i = 1; i < n; ++i) {
        q = (m.diag[i] - x) - m.offdiag[i - 1] * m.offdiag[i - 1] / q;
        if (std::abs(q) < pivmin)
            q = -pivmin;
        if (q < 0.0)
            ++count;
    }
    return count;
}

std::vector<double> tridiagonal_eigenvalues(const SymTridiagonal& m, double rel_tol)
{
    const std::size_t n = m.size();
    if (n == 0)
        return {};
    if (m.offdiag.size() + 1 != n)
        throw Error(ErrorCode::InvalidArgument, "off-diagonal length must be N-1");
    if (std::all_of(m.offdiag.begin(), m.offdiag.end(), [](double e) { return e == 0.0; })) {
        std::vector<double> sorted = m.diag;
        std::sort(sorted.begin(), sorted.end());
        return sorted;
    }

    double lo0 = m.diag[0];
    double hi0 = m.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0)
            r += std::abs(m.offdiag[i - 1]);
        if (i + 1 < n)
            r += std::abs(m.offdiag[i]);
        lo0 = std::min(lo0, m.diag[i] - r);
        hi0 = std::max(hi0, m.diag[i] + r);
    }
    const double norm = std::max(gerschgorin_norm(m), std::numeric_limits<double>::min());
    const double margin = 2.0 * kEps * norm;
    lo0 -= margin + kEps * std::abs(lo0);
    hi0 += margin + kEps * std::abs(hi0);
    const double abs_floor = std::numeric_limits<double>::denorm_min();

    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) {
        // invariant: count(lo) <= k < count(hi)
        double lo = k > 0 ? std::max(lo0, values[k - 1]) : lo0;
        double hi = hi0;
        if (sturm_count(m, lo) > static_cast<int>(k))
            lo = lo0;
        for (int it = 0; it < 4096; ++it) {
            double mid = 0.5 * (lo + hi);
            double width = hi - lo;
            if (width <= std::max(rel_tol * std::max(std::abs(lo), std::abs(hi)), abs_floor) || mid == lo ||
                mid == hi)
                break;
            if (sturm_count(m, mid) > static_cast<int>(k))
                hi = mid;
            else
                lo = mid;
        }
        const double mid = 0.5 * (lo + hi);
        values[k] = (mid == lo || mid == hi) ? hi : mid;
    }
    return values;
}

std::vector<double> inverse_iteration(const SymTridiagonal& m, double mu, int max_iter)
{
    auto v = inverse_iteration_impl(m, mu, max_iter, {});
    fix_sign(v);
    return v;
}

void fix_sign(std::vector<double>& v)
{
    for (double x : v) {
        if (std::abs(x) > 1e-12) {
            if (x < 0.0)
                for (double& y : v)
                    y = -y;
            return;
        }
    }
}

EigenSystem eigen_sym_tridiagonal(const SymTridiagonal& m, double rel_tol)
{
    const int n = static_cast<int>(m.size());
    if (n < 1)
        throw Error(ErrorCode::InvalidArgument, "empty matrix");

    EigenSystem out;
    out.values = tridiagonal_eigenvalues(m, rel_tol);
    out.vectors = Matrix(n, n);

    if (std::all_of(m.offdiag.begin(), m.offdiag.end(), [](double e) { return e == 0.0; })) {
        std::vector<int> order(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            order[static_cast<std::size_t>(i)] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](int x, int y) { return m.diag[static_cast<std::size_t>(x)] < m.diag[static_cast<std::size_t>(y)]; });
        for (int k = 0; k < n; ++k)
            out.vectors(order[static_cast<std::size_t>(k)], k) = 1.0;
        return out;
    }

    const double norm = gerschgorin_norm(m);
    const double cluster = 1e-3 * std::max(norm, 1.0);
    std::vector<std::vector<double>> done;
    for (int k = 0; k < n; ++k) {
        std::vector<std::vector<double>> against;
        for (int j = 0; j < k; ++j)
            if (std::abs(out.values[static_cast<std::size_t>(k)] - out.values[static_cast<std::size_t>(j)]) <= cluster)
                against.push_back(done[static_cast<std::size_t>(j)]);
        auto v = inverse_iteration_impl(m, out.values[static_cast<std::size_t>(k)], 100, against);
        fix_sign(v);
        out.vectors.set_column(k, v);
        done.push_back(std::move(v));
    }
    return out;
}

} // namespace micz

#include "micz/interbasis.hpp"

#include <cstdlib>

#include "micz/error.hpp"
#include "micz/parallel.hpp"

namespace micz {

namespace {

// Factorial of a HalfInt argument that must reduce to a non-negative integer
// for every valid sector.
BigInt fact(HalfInt x)
{
    if (!x.is_integer() || x.twice() < 0)
        throw Error(ErrorCode::FactorialOfNegative, "factorial argument " + to_string(x));
    return factorial(x.as_int());
}

Rational fact_ratio(HalfInt num, HalfInt den)
{
    Rational q(fact(num), fact(den));
    q.canonicalize();
    return q;
}

void check_indices(const Sector& s, HalfInt lambda, int np)
{
    if (lambda < s.bottom() || lambda > s.top() || !(lambda - s.bottom()).is_integer())
        throw Error(ErrorCode::IndexOutOfRange, "lambda = " + to_string(lambda));
    if (np < 0 || np >= s.dimension())
        throw Error(ErrorCode::IndexOutOfRange, "n_p = " + std::to_string(np));
}

// 3F2[-(lambda-h), -M+n_p, lambda+h+7; L+4, -M; 1]. The first upper
// parameter truncates the series at k = lambda-h <= M, before the lower
// parameter -M can vanish.
Rational terminating_3f2(const Sector& s, HalfInt lambda, int np)
{
    const int M = s.dimension() - 1;
    const int kmax = (lambda - s.bottom()).as_int();
    const int a1 = -kmax;
    const int a2 = -M + np;
    const int a3 = (lambda + s.bottom()).as_int() + 7;
    const int b1 = s.L + 4;
    const int b2 = -M;

    Rational sum = 0;
    Rational term = 1;
    for (int k = 0; k <= kmax; ++k) {
        sum += term;
        if (k == kmax)
            break;
        term *= Rational((a1 + k) * (a2 + k)) * (a3 + k);
        term /= Rational((b1 + k) * (b2 + k)) * (k + 1);
    }
    sum.canonicalize();
    return sum;
}

WMatrix build_w(const Sector& s, bool parallel)
{
    const int N = s.dimension();
    auto lambdas = lambda_range(s);
    WMatrix w{s, ExactMatrix(N, N)};
    auto fill = [&](std::ptrdiff_t idx) {
        int i = static_cast<int>(idx / N);
        int j = static_cast<int>(idx % N);
        w.entries.at(i, j) = w_coefficient(s, lambdas[static_cast<std::size_t>(i)], j);
    };
    if (parallel)
        parallel_for(static_cast<std::ptrdiff_t>(N) * N, fill);
    else
        for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(N) * N; ++idx)
            fill(idx);

    for (const auto& d : orthogonality_defect(w))
        if (!d.is_zero())
            throw Error(ErrorCode::OrthogonalityViolation,
                        "W^T W != I for sector n=" + std::to_string(s.n) + " Q=" + std::to_string(s.Q) +
                            " L=" + std::to_string(s.L) + " J=" + std::to_string(s.J));
    return w;
}

} // namespace

RadicalScalar w_coefficient(const Sector& s, HalfInt lambda, int np)
{
    check_indices(s, lambda, np);
    const HalfInt top = s.top();
    const HalfInt h = s.bottom();
    const HalfInt d = s.half_diff();
    const HalfInt M = top - h;
    const HalfInt P(np);

    Rational rational_part(fact(M), factorial(s.L + 3));
    if ((lambda - h).as_int() % 2 != 0)
        rational_part = -rational_part;

    Rational radicand = fact_ratio(lambda + h + 6, lambda - h);
    radicand *= Rational(lambda.twice() + 7) * fact(lambda - d + 3);
    radicand /= Rational(fact(top + lambda + 7) * fact(top - lambda) * fact(lambda + d + 3));
    radicand *= fact_ratio(P + s.J + 3, M - P);
    radicand *= fact_ratio(M - P + s.L + 3, P);
    radicand.canonicalize();

    Rational coeff = rational_part * terminating_3f2(s, lambda, np);
    return RadicalScalar(coeff, radicand);
}

RadicalScalar clebsch_gordan(const CGArgs& g)
{
    // All quantities in doubled units.
    const int a = g.a.twice(), al = g.alpha.twice();
    const int b = g.b.twice(), be = g.beta.twice();
    const int c = g.c.twice(), ga = g.gamma.twice();

    if (a < 0 || b < 0 || c < 0)
        return {};
    if (std::abs(al) > a || std::abs(be) > b || std::abs(ga) > c)
        return {};
    if (al + be != ga)
        return {};
    if ((a + al) % 2 != 0 || (b + be) % 2 != 0 || (c + ga) % 2 != 0)
        return {};
    if ((a + b + c) % 2 != 0 || c < std::abs(a - b) || c > a + b)
        return {};

    auto f = [](int twice) { return factorial(twice / 2); };

    // Racah:
    // C = sqrt[(2c+1) (a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!]
    //   * sqrt[(a+alpha)! (a-alpha)! (b+beta)! (b-beta)! (c+gamma)! (c-gamma)!]
    //   * sum_k (-1)^k / [k! (a+b-c-k)! (a-alpha-k)! (b+beta-k)! (c-b+alpha+k)! (c-a-beta+k)!]
    Rational radicand(BigInt(c + 1) * f(a + b - c) * f(a - b + c) * f(-a + b + c), f(a + b + c + 2));
    radicand *= Rational(f(a + al) * f(a - al) * f(b + be) * f(b - be) * f(c + ga) * f(c - ga));
    radicand.canonicalize();

    const int n1 = (a + b - c) / 2;
    const int n2 = (a - al) / 2;
    const int n3 = (b + be) / 2;
    const int m1 = (c - b + al) / 2;
    const int m2 = (c - a - be) / 2;
    const int kmin = std::max({0, -m1, -m2});
    const int kmax = std::min({n1, n2, n3});

    Rational sum = 0;
    for (int k = kmin; k <= kmax; ++k) {
        Rational term(1, factorial(k) * factorial(n1 - k) * factorial(n2 - k) * factorial(n3 - k) *
                             factorial(m1 + k) * factorial(m2 + k));
        if (k % 2 != 0)
            sum -= term;
        else
            sum += term;
    }
    sum.canonicalize();
    return RadicalScalar(sum, radicand);
}

CGArgs w_cg_args(const Sector& s, HalfInt lambda, int np)
{
    const int n = s.n, Q = s.Q, L = s.L, J = s.J;
    const int parity_shift = (L + J - Q) / 2; // integer for valid sectors
    CGArgs g;
    g.a = HalfInt::from_twice((2 * n + 6 + Q + J - L) / 2);
    g.alpha = HalfInt::from_twice(2 * np - n + parity_shift + J + 3);
    g.b = HalfInt::from_twice((2 * n + 6 + Q - J + L) / 2);
    g.beta = HalfInt::from_twice(n - parity_shift - 2 * np + L + 3);
    g.c = lambda + 3;
    g.gamma = s.bottom() + 3;
    return g;
}

RadicalScalar w_via_cg(const Sector& s, HalfInt lambda, int np)
{
    check_indices(s, lambda, np);
    RadicalScalar cg = clebsch_gordan(w_cg_args(s, lambda, np));
    const int phase = (s.top() - lambda).as_int() - np;
    return phase % 2 != 0 ? -cg : cg;
}

WMatrix w_matrix(const Sector& s)
{
    return build_w(s, true);
}

WMatrix w_matrix_serial(const Sector& s)
{
    return build_w(s, false);
}

std::vector<RadicalSum> orthogonality_defect(const WMatrix& w)
{
    const int N = w.size();
    std::vector<RadicalSum> out(static_cast<std::size_t>(N * N));
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q) {
            RadicalSum& acc = out[static_cast<std::size_t>(p * N + q)];
            for (int i = 0; i < N; ++i)
                acc += radical_mul(w.at(i, p), w.at(i, q));
            if (p == q)
                acc -= RadicalScalar(1);
        }
    return out;
}

RadicalSum w_recurrence_residual(const Sector& s, const WMatrix& w, int row, int np)
{
    const int N = w.size();
    auto lambdas = lambda_range(s);
    const HalfInt lambda = lambdas[static_cast<std::size_t>(row)];

    Rational bracket = Rational(np) - (s.top() - s.J).rational() / 2 + m9_diagonal(s, lambda) / 2;
    bracket.canonicalize();

    RadicalSum res;
    res += radical_mul(RadicalScalar(bracket), w.at(row, np));
    const RadicalScalar half(Rational(1, 2));
    if (row > 0)
        res += radical_mul(half, radical_mul(coef_B(s, lambda), w.at(row - 1, np)));
    if (row + 1 < N)
        res += radical_mul(half, radical_mul(coef_B(s, lambdas[static_cast<std::size_t>(row + 1)]),
                                             w.at(row + 1, np)));
    return res;
}

ExactMatrix m9_matrix_bruteforce(const Sector& s, const WMatrix& w)
{
    const int N = w.size();
    ExactMatrix out(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            RadicalSum acc;
            for (int p = 0; p < N; ++p) {
                RadicalScalar eig(m9_parabolic_eigenvalue(s, p).rational());
                acc += radical_mul(eig, radical_mul(w.at(i, p), w.at(j, p)));
            }
            out.at(i, j) = acc.single();
        }
    return out;
}

ExactMatrix m9_matrix_bruteforce(const Sector& s)
{
    return m9_matrix_bruteforce(s, w_matrix(s));
}

ExactMatrix to_dense(const ExactTridiagonal& m)
{
    const int N = static_cast<int>(m.size());
    ExactMatrix out(N, N);
    for (int i = 0; i < N; ++i) {
        out.at(i, i) = m.diag[static_cast<std::size_t>(i)];
        if (i + 1 < N) {
            out.at(i, i + 1) = m.offdiag[static_cast<std::size_t>(i)];
            out.at(i + 1, i) = m.offdiag[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

} // namespace micz

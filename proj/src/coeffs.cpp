#include "micz/coeffs.hpp"

#include "micz/error.hpp"

namespace micz {

namespace {

// (J-L)(L+J+6) / (4 (lambda+3)(lambda+4)), shared by A and the M9 diagonal.
Rational split_term(const Sector& s, HalfInt lambda)
{
    Rational lam = lambda.rational();
    Rational out = Rational((s.J - s.L) * (s.L + s.J + 6)) / (4 * (lam + 3) * (lam + 4));
    out.canonicalize();
    return out;
}

} // namespace

RadicalScalar coef_B(const Sector& s, HalfInt lambda)
{
    lambda_index(s, lambda);
    Rational lam = lambda.rational();
    Rational top = s.top().rational();
    Rational h = s.bottom().rational();
    Rational d = s.half_diff().rational();

    Rational radial = (top - lam + 1) * (top + lam + 7);
    Rational angular = (lam - h) * (lam + 6 + h) * (lam + 3 - d) * (lam + 3 + d) /
                       ((lam + 3) * (lam + 3) * (2 * lam + 7) * (2 * lam + 5));
    Rational product = radial * angular;
    product.canonicalize();
    return RadicalScalar::sqrt_of(product);
}

double coef_B_float(const Sector& s, HalfInt lambda)
{
    return to_float(coef_B(s, lambda));
}

Rational coef_A(const Sector& s, HalfInt lambda, const Rational& aZ)
{
    lambda_index(s, lambda);
    Rational lam = lambda.rational();
    Rational out = aZ * split_term(s, lambda) - lam * (lam + 7);
    out.canonicalize();
    return out;
}

double coef_A(const Sector& s, HalfInt lambda, double aZ)
{
    lambda_index(s, lambda);
    double lam = lambda.value();
    double split = static_cast<double>((s.J - s.L) * (s.L + s.J + 6)) / (4.0 * (lam + 3.0) * (lam + 4.0));
    return aZ * split - lam * (lam + 7.0);
}

RadicalScalar coef_Btilde(const Sector& s, HalfInt lambda, const Rational& aZ)
{
    Rational factor = 2 * aZ / s.scale();
    factor.canonicalize();
    return radical_mul(RadicalScalar(factor), coef_B(s, lambda));
}

double coef_Btilde(const Sector& s, HalfInt lambda, double aZ)
{
    return 2.0 * aZ / s.scale() * coef_B_float(s, lambda);
}

Rational m9_diagonal(const Sector& s, HalfInt lambda)
{
    lambda_index(s, lambda);
    Rational out = -split_term(s, lambda) * s.scale() / 2;
    out.canonicalize();
    return out;
}

ExactTridiagonal m9_spherical_matrix(const Sector& s)
{
    ExactTridiagonal m;
    auto lambdas = lambda_range(s);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        m.diag.emplace_back(m9_diagonal(s, lambdas[i]));
        if (i > 0)
            m.offdiag.push_back(coef_B(s, lambdas[i]));
    }
    return m;
}

} // namespace micz

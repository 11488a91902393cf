#include "support.hpp"

#include <cmath>

#include "micz/interbasis.hpp"
#include "micz/wavefield.hpp"

using namespace micz;

TEST_CASE("laguerre_gen")
{
    CHECK(laguerre_gen(0, 3.5, 2.0).value == 1.0);
    CHECK(laguerre_gen(0, 3.5, 2.0).derivative == 0.0);
    CHECK(laguerre_gen(1, 2.0, 0.5).value == 2.5);
    CHECK(laguerre_gen(1, 2.0, 0.5).derivative == -1.0);
    CHECK(laguerre_gen(2, 0.0, 0.0).value == 1.0);
    CHECK(laguerre_gen(3, 4.0, 0.0).value == doctest::Approx(35.0).epsilon(1e-15));
    // L_2^(1)(x) = (x^2 - 6x + 6)/2
    CHECK(laguerre_gen(2, 1.0, 1.5).value == doctest::Approx((2.25 - 9.0 + 6.0) / 2.0).epsilon(1e-15));
    CHECK_ERROR_CODE(laguerre_gen(-1, 0.0, 1.0), InvalidArgument);
}

TEST_CASE("jacobi_gen")
{
    CHECK(jacobi_gen(0, 3.0, 4.0, 0.2).value == 1.0);
    CHECK(jacobi_gen(1, 0.0, 0.0, 0.3).value == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(jacobi_gen(1, 2.5, 1.0, 1.0).value == doctest::Approx(3.5).epsilon(1e-15));
    // Legendre P_3(x) = (5x^3 - 3x)/2
    CHECK(jacobi_gen(3, 0.0, 0.0, 0.4).value == doctest::Approx((5 * 0.064 - 1.2) / 2).epsilon(1e-14));
    // P_k^(p,q)(1) = binom(k+p, k)
    CHECK(jacobi_gen(4, 3.0, 5.0, 1.0).value == doctest::Approx(35.0).epsilon(1e-14));
    // symmetry P_k^(p,q)(-x) = (-1)^k P_k^(q,p)(x)
    CHECK(jacobi_gen(3, 3.0, 5.0, -0.3).value == doctest::Approx(-jacobi_gen(3, 5.0, 3.0, 0.3).value).epsilon(1e-14));
    CHECK_ERROR_CODE(jacobi_gen(2, -1.0, 0.0, 0.0), InvalidArgument);
}

TEST_CASE("analytic derivatives match finite differences")
{
    const double h = 1e-6;
    for (int k = 0; k <= 6; ++k)
        for (double x : {0.3, 1.7, 6.0}) {
            double fd = (laguerre_gen(k, 7.5, x + h).value - laguerre_gen(k, 7.5, x - h).value) / (2 * h);
            CHECK(laguerre_gen(k, 7.5, x).derivative == doctest::Approx(fd).epsilon(1e-5));
        }
    for (int k = 0; k <= 6; ++k)
        for (double x : {-0.8, 0.1, 0.7}) {
            double fd = (jacobi_gen(k, 4.0, 6.0, x + h).value - jacobi_gen(k, 4.0, 6.0, x - h).value) / (2 * h);
            CHECK(jacobi_gen(k, 4.0, 6.0, x).derivative == doctest::Approx(fd).epsilon(1e-5));
        }
}

TEST_CASE("gauss_rule classical values")
{
    auto leg = gauss_rule(RuleKind::Legendre, 2);
    CHECK(leg.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(leg.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(leg.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(leg.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

    auto lag = gauss_rule(RuleKind::Laguerre, 1, 0.0);
    CHECK(lag.nodes[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lag.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

    auto big = gauss_rule(RuleKind::Legendre, 64);
    double m = 0.0;
    for (int i = 0; i < 64; ++i)
        m += big.weights[static_cast<std::size_t>(i)] * std::pow(big.nodes[static_cast<std::size_t>(i)], 126);
    CHECK(std::abs(m - 2.0 / 127.0) <= 1e-13 * (2.0 / 127.0));

    CHECK_ERROR_CODE(gauss_rule(RuleKind::Legendre, 0), InvalidArgument);
    CHECK_ERROR_CODE(gauss_rule(RuleKind::Laguerre, 4, -1.0), InvalidArgument);
}

TEST_CASE("gauss_rule exactness ladder")
{
    for (int n : {1, 2, 3, 5, 8, 13, 24, 48, 64}) {
        auto leg = gauss_rule(RuleKind::Legendre, n);
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double m = 0.0;
            for (int i = 0; i < n; ++i)
                m += leg.weights[static_cast<std::size_t>(i)] * std::pow(leg.nodes[static_cast<std::size_t>(i)], k);
            double exact = k % 2 == 0 ? 2.0 / (k + 1) : 0.0;
            CHECK(std::abs(m - exact) <= 1e-13 * std::max(exact, 1.0));
        }
        for (double s : {0.0, 2.5, 8.0}) {
            auto lag = gauss_rule(RuleKind::Laguerre, n, s);
            for (double w : lag.weights)
                CHECK(w > 0.0);
            for (int k = 0; k <= 2 * n - 1; ++k) {
                // Relative sums in log space avoid overflow at high degree.
                double m = 0.0;
                const double log_exact = std::lgamma(k + s + 1.0);
                for (int i = 0; i < n; ++i) {
                    double x = lag.nodes[static_cast<std::size_t>(i)];
                    m += std::exp(std::log(lag.weights[static_cast<std::size_t>(i)]) + k * std::log(x) - log_exact);
                }
                CHECK(std::abs(m - 1.0) <= 1e-13 * std::max(1.0, k / 8.0));
            }
        }
    }
}

TEST_CASE("make_point")
{
    auto p = make_point(2.0, 0.25, 1.5);
    CHECK(p.u + p.v == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(p.u == 2.5);
    REQUIRE(p.xi.has_value());
    CHECK(*p.xi >= 1.0);
    CHECK(std::abs(*p.eta) <= 1.0);
    auto q = make_point(1.0, -1.0);
    CHECK(q.u == 0.0);
    CHECK(!q.xi.has_value());
    CHECK_ERROR_CODE(make_point(-1.0, 0.0), DomainError);
    CHECK_ERROR_CODE(make_point(1.0, 1.5), DomainError);
}

TEST_CASE("ground sector closed forms")
{
    auto s = sector(0, 0, 0, 0);
    const double alpha = 0.5;
    const double expected = std::sqrt(1.0 / 288.0) * std::pow(alpha, 4.5) * std::exp(-alpha * 1.3 / 2) * std::pow(2.0, -3.5);
    CHECK(spherical_norm(s, HalfInt(0)) == doctest::Approx(std::sqrt(1.0 / 288.0)).epsilon(1e-15));
    for (double c : {-0.7, 0.0, 0.4})
        CHECK(psi_spherical(s, HalfInt(0), 1.3, c) == doctest::Approx(expected).epsilon(1e-14));
    for (double c : {-0.7, 0.0, 0.4})
        CHECK(psi_parabolic(s, 0, 1.3 * (1 + c), 1.3 * (1 - c)) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(psi_parabolic(s, 0, 0.6, 2.0) ==
          doctest::Approx(psi_parabolic(s, 0, 0.6, 0.0) * std::exp(-alpha * 2.0 / 4)).epsilon(1e-14));
}

TEST_CASE("spherical and parabolic Gram matrices")
{
    auto s = sector(1, 0, 0, 0);
    auto g = spherical_gram(s, 64);
    CHECK(std::abs(g(0, 0) - 1.0) <= 1e-10);
    CHECK(std::abs(g(0, 1)) <= 1e-12);
    auto p = parabolic_gram(s, 64);
    CHECK(std::abs(p(0, 0) - 1.0) <= 1e-10);
    CHECK(std::abs(p(0, 1)) <= 1e-10);
    for (const auto& t : enumerate_sectors(Rational(5, 2), 4)) {
        auto gs = spherical_gram(t, 64);
        auto gp = parabolic_gram(t, 64);
        for (int i = 0; i < t.dimension(); ++i)
            for (int j = 0; j < t.dimension(); ++j) {
                CHECK(std::abs(gs(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-10);
                CHECK(std::abs(gp(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-10);
            }
    }
}

TEST_CASE("psi_spheroidal")
{
    auto n1 = sector(1, 0, 1, 1);
    for (double a : {0.01, 3.0, 500.0})
        CHECK(psi_spheroidal(n1, 0, a, 1.0, 2.0, 0.3) == doctest::Approx(psi_spherical(n1, HalfInt(1), 2.0, 0.3)).epsilon(1e-15));

    auto s = sector(1, 0, 0, 0);
    CHECK(std::abs(spheroidal_norm(s, 0, 5.0, 1.0, 64) - 1.0) <= 1e-10);
    CHECK(std::abs(spheroidal_norm(s, 1, 5.0, 1.0, 64) - 1.0) <= 1e-10);

    auto t = sector(3, 1, 2, 1);
    auto spec = separation_constants(t, 1e-8, 1.0);
    for (int nk = 0; nk < t.dimension(); ++nk) {
        HalfInt lambda = t.top() - nk;
        for (double r : {0.5, 2.0, 7.0})
            for (double c : {-0.5, 0.2, 0.8}) {
                double x = psi_spheroidal(spec, nk, r, c);
                double y = psi_spherical(t, lambda, r, c);
                CHECK(std::min(std::abs(x - y), std::abs(x + y)) <= 1e-6);
            }
    }
}

TEST_CASE("w_overlap_quadrature")
{
    CHECK(std::abs(w_overlap_quadrature(sector(0, 0, 0, 0), HalfInt(0), 0, 48) - 1.0) <= 1e-10);
    CHECK(std::abs(w_overlap_quadrature(sector(1, 0, 0, 0), HalfInt(0), 0, 48) - 0.7071067812) <= 1e-8);
    CHECK(std::abs(w_overlap_quadrature(sector(1, 0, 0, 0), HalfInt(1), 1, 48) + 0.7071067812) <= 1e-8);
}

TEST_CASE("overlap matrix reproduces W")
{
    for (const auto& s : enumerate_sectors(Rational(1), 3)) {
        auto q = w_overlap_converged(s, 48);
        auto w = w_matrix(s);
        for (int i = 0; i < s.dimension(); ++i)
            for (int j = 0; j < s.dimension(); ++j)
                CHECK(std::abs(q.values(i, j) - to_float(w.at(i, j))) <= 1e-8);
    }
}

TEST_CASE("parallel and serial overlap agree bit for bit")
{
    for (const auto& s : {sector(4, 0, 0, 0), sector(3, 1, 2, 1), sector(2, 2, 1, 1)}) {
        auto a = w_overlap_matrix(s, 48);
        auto b = w_overlap_matrix_serial(s, 48);
        CHECK(a.data == b.data);
    }
}

TEST_CASE("ode_residual")
{
    const std::vector<double> r{0.5, 1.0, 2.0, 5.0};
    CHECK(ode_residual(sector(1, 0, 0, 0), OdeKind::Radial, HalfInt(0), r) < 1e-10);
    const std::vector<double> u{0.5, 1.0, 3.0};
    CHECK(ode_residual(sector(0, 0, 0, 0), OdeKind::ParabolicU, HalfInt(0), u) < 1e-12);
    const std::vector<double> c{-0.9, 0.0, 0.9};
    CHECK(ode_residual(sector(2, 0, 0, 2), OdeKind::Angular, HalfInt(2), c) < 1e-9);

    const std::vector<double> bad_r{0.0};
    CHECK_ERROR_CODE(ode_residual(sector(1, 0, 0, 0), OdeKind::Radial, HalfInt(0), bad_r), DomainError);
    const std::vector<double> bad_c{1.0};
    CHECK_ERROR_CODE(ode_residual(sector(1, 0, 0, 0), OdeKind::Angular, HalfInt(0), bad_c), DomainError);
    CHECK_ERROR_CODE(ode_residual(sector(1, 0, 0, 0), OdeKind::ParabolicV, HalfInt(0), bad_r), DomainError);
    CHECK_ERROR_CODE(ode_residual(sector(1, 0, 0, 0), OdeKind::Radial, HalfInt(2), r), IndexOutOfRange);

    for (const auto& s : enumerate_sectors(Rational(2), 3))
        CHECK(ode_residual_all(s) < 1e-8);
}

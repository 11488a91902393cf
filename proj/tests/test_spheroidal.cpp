#include "support.hpp"

#include <cmath>
#include <random>

#include "micz/interbasis.hpp"
#include "micz/spheroidal.hpp"
#include "micz/tridiag.hpp"

using namespace micz;

namespace {

const double kSqrt17 = std::sqrt(17.0);

} // namespace

TEST_CASE("eigen_sym_tridiagonal small cases")
{
    SymTridiagonal m{{0.0, -8.0}, {-1.0}};
    auto e = eigen_sym_tridiagonal(m);
    CHECK(std::abs(e.values[0] - (-4.0 - kSqrt17)) <= 1e-14);
    CHECK(std::abs(e.values[1] - (-4.0 + kSqrt17)) <= 1e-14);

    SymTridiagonal d{{3.0, -1.0, 2.0}, {0.0, 0.0}};
    auto ed = eigen_sym_tridiagonal(d);
    CHECK(ed.values == std::vector<double>{-1.0, 2.0, 3.0});
    CHECK(ed.vectors.column(0) == std::vector<double>{0.0, 1.0, 0.0});
    CHECK(ed.vectors.column(1) == std::vector<double>{0.0, 0.0, 1.0});
    CHECK(ed.vectors.column(2) == std::vector<double>{1.0, 0.0, 0.0});

    SymTridiagonal one{{4.5}, {}};
    auto e1 = eigen_sym_tridiagonal(one);
    CHECK(e1.values == std::vector<double>{4.5});
    CHECK(e1.vectors.column(0) == std::vector<double>{1.0});
}

TEST_CASE("sturm_count")
{
    SymTridiagonal m{{0.0, -8.0}, {-1.0}};
    CHECK(sturm_count(m, -9.0) == 0);
    CHECK(sturm_count(m, -4.0) == 1);
    CHECK(sturm_count(m, 1.0) == 2);
}

TEST_CASE("property: random tridiagonal eigensystems")
{
    std::mt19937_64 rng(20261018);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + trial % 9;
        SymTridiagonal m;
        for (int i = 0; i < n; ++i)
            m.diag.push_back(dist(rng));
        for (int i = 0; i + 1 < n; ++i)
            m.offdiag.push_back(dist(rng) * (trial % 7 == 0 ? 1e-9 : 1.0));
        auto e = eigen_sym_tridiagonal(m);
        const double norm = gerschgorin_norm(m);
        double trace = 0.0;
        for (double d : m.diag)
            trace += d;
        double sum = 0.0;
        for (int k = 0; k < n; ++k) {
            sum += e.values[static_cast<std::size_t>(k)];
            if (k > 0)
                CHECK(e.values[static_cast<std::size_t>(k)] >= e.values[static_cast<std::size_t>(k - 1)]);
            auto v = e.vectors.column(k);
            auto mv = multiply(m, v);
            for (int i = 0; i < n; ++i)
                CHECK(std::abs(mv[static_cast<std::size_t>(i)] - e.values[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(i)]) <=
                      1e-12 * norm);
        }
        CHECK(std::abs(sum - trace) <= 1e-12 * norm * n);
        CHECK(orthonormality_defect(e.vectors) <= 1e-12);
    }
}

TEST_CASE("build_k_matrix")
{
    auto k = build_k_matrix(sector(1, 0, 0, 0), 5.0, 1.0);
    CHECK(k.diag == std::vector<double>{0.0, -8.0});
    CHECK(k.offdiag == std::vector<double>{-1.0});

    for (const auto& s : enumerate_sectors(Rational(1), 3)) {
        auto k0 = build_k_matrix(s, 0.0, 1.0);
        auto l = lambda_range(s);
        for (std::size_t i = 0; i < l.size(); ++i)
            CHECK(k0.diag[i] == -l[i].value() * (l[i].value() + 7.0));
        for (double e : k0.offdiag)
            CHECK(e == 0.0);
    }
    auto kz = build_k_matrix(sector(0, 0, 0, 0), 3.0, 1.0);
    CHECK(kz.diag == std::vector<double>{0.0});
    CHECK_ERROR_CODE(build_k_matrix(sector(1, 0, 0, 0), -1.0, 1.0), DomainError);
}

TEST_CASE("build_k_matrix_exact and trace")
{
    auto s = sector(2, 0, 0, 2);
    auto k = build_k_matrix_exact(s, Rational(1));
    CHECK(k.diag[0] == RadicalScalar(Rational(-39, 5)));
    CHECK(k_matrix_trace(s, Rational(1)) == Rational(-77, 3));
    auto kf = build_k_matrix(s, 1.0, 1.0);
    for (std::size_t i = 0; i < kf.diag.size(); ++i)
        CHECK(kf.diag[i] == doctest::Approx(to_float(k.diag[i])).epsilon(1e-15));
    CHECK(kf.offdiag[0] == doctest::Approx(to_float(k.offdiag[0])).epsilon(1e-15));
}

TEST_CASE("separation_constants")
{
    auto sp = separation_constants(sector(1, 0, 0, 0), 5.0, 1.0);
    CHECK(std::abs(sp.K[0] - (-4.0 - kSqrt17)) <= 1e-12);
    CHECK(std::abs(sp.K[1] - (-4.0 + kSqrt17)) <= 1e-12);

    auto s0 = separation_constants(sector(0, 0, 0, 0), 2.0, 1.0);
    CHECK(s0.K == std::vector<double>{0.0});
    CHECK(s0.T(0, 0) == 1.0);

    auto small = separation_constants(sector(1, 0, 0, 0), 1e-8, 1.0);
    CHECK(std::abs(small.K[0] + 8.0) <= 1e-15);
    CHECK(std::abs(small.K[1]) <= 1e-15);

    CHECK_ERROR_CODE(separation_constants(sector(1, 0, 0, 0), 0.0, 1.0), DomainError);
}

TEST_CASE("t_by_continuant")
{
    auto s = sector(1, 0, 0, 0);
    // (A_0 - K) t_0 = B~_1 t_1 with A_0 = 0, B~_1 = 1: t_1 = -K t_0.
    const double c = 1.0 / std::sqrt(1.0 + (4.0 + kSqrt17) * (4.0 + kSqrt17));
    auto lo = t_by_continuant(s, 5.0, 1.0, 0, -4.0 - kSqrt17);
    CHECK(lo[0] == doctest::Approx(0.12218326369570444).epsilon(1e-12));
    CHECK(lo[1] == doctest::Approx(0.9925075566829029).epsilon(1e-12));
    CHECK(lo[0] == doctest::Approx(c).epsilon(1e-14));
    auto hi = t_by_continuant(s, 5.0, 1.0, 1, -4.0 + kSqrt17);
    CHECK(hi[0] == doctest::Approx(0.9925075566829029).epsilon(1e-12));
    CHECK(hi[1] == doctest::Approx(-0.12218326369570444).epsilon(1e-12));

    CHECK(t_by_continuant(sector(0, 0, 0, 0), 3.0, 1.0, 0, 0.0) == std::vector<double>{1.0});
    CHECK_ERROR_CODE(t_by_continuant(s, 0.0, 1.0, 0, 0.0), DomainError);
    CHECK_ERROR_CODE(t_by_continuant(s, 5.0, 1.0, 2, 0.0), IndexOutOfRange);
}

TEST_CASE("leading_continuants vanish at eigenvalues")
{
    auto s = sector(3, 1, 2, 1);
    auto k = build_k_matrix(s, 2.0, 1.0);
    auto sp = separation_constants(s, 2.0, 1.0);
    for (double K : sp.K) {
        auto p = leading_continuants(k, K);
        CHECK(p.front() == 1.0);
        CHECK(std::abs(p.back()) <= 1e-10 * std::pow(gerschgorin_norm(k), 3));
    }
}

TEST_CASE("sweep_branches")
{
    auto s = sector(1, 0, 0, 0);
    auto grid = make_grid(1e-3, 1e6, 181, true);
    auto sw = sweep_branches(s, 1.0, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double a = grid[g];
        const double root = std::sqrt(16.0 + a * a / 25.0);
        CHECK(sw.branches[0][g].K == doctest::Approx(-4.0 - root).epsilon(1e-12));
        CHECK(sw.branches[1][g].K == doctest::Approx(-4.0 + root).epsilon(1e-12).scale(1.0));
        CHECK(sw.branches[0][g].K < sw.branches[1][g].K);
    }
    CHECK(sw.branches[0].back().K_over_a == doctest::Approx(-0.2).epsilon(1e-5));
    CHECK(sw.branches[1].back().K_over_a == doctest::Approx(0.2).epsilon(1e-5));

    auto flat = sweep_branches(sector(1, 0, 1, 1), 1.0, make_grid(0.1, 10.0, 5, false));
    REQUIRE(flat.branches.size() == 1);
    for (const auto& pt : flat.branches[0])
        CHECK(pt.K == -8.0);

    CHECK_ERROR_CODE(make_grid(1.0, 1.0, 5, false), InvalidArgument);
    CHECK_ERROR_CODE(make_grid(0.1, 1.0, 1, false), InvalidArgument);
    std::vector<double> bad{1.0, 0.5};
    CHECK_ERROR_CODE(sweep_branches(s, 1.0, bad), InvalidArgument);
    std::vector<double> coarse{1.0, 1e4};
    CHECK_ERROR_CODE(sweep_branches(sector(2, 0, 0, 2), 1.0, coarse), BranchMatchAmbiguous);
}

TEST_CASE("property: branches never cross")
{
    auto grid = make_grid(1e-2, 1e3, 121, true);
    for (const auto& s : enumerate_sectors(Rational(1), 3)) {
        auto sw = sweep_branches(s, 1.0, grid);
        for (std::size_t g = 0; g < grid.size(); ++g)
            for (std::size_t k = 1; k < sw.branches.size(); ++k)
                CHECK(sw.branches[k][g].K > sw.branches[k - 1][g].K);
    }
}

TEST_CASE("parallel and serial sweeps agree bit for bit")
{
    auto grid = make_grid(1e-2, 1e3, 61, true);
    for (const auto& s : {sector(4, 0, 0, 0), sector(3, 1, 2, 1), sector(2, 2, 1, 1)}) {
        auto a = sweep_branches(s, 1.0, grid);
        auto b = sweep_branches_serial(s, 1.0, grid);
        for (std::size_t k = 0; k < a.branches.size(); ++k)
            for (std::size_t g = 0; g < grid.size(); ++g) {
                CHECK(a.branches[k][g].K == b.branches[k][g].K);
                CHECK(a.branches[k][g].K_over_a == b.branches[k][g].K_over_a);
            }
        CHECK(a.min_overlap == b.min_overlap);
    }
}

TEST_CASE("check_spherical_limit")
{
    auto r = check_spherical_limit(sector(1, 0, 0, 0), 1.0);
    CHECK(r.passed);
    CHECK(std::abs(r.branches[0].K + 8.0) <= 1e-12);
    CHECK(std::abs(r.branches[1].K) <= 1e-12);
    CHECK(r.branches[0].t_deviation <= 1e-6);

    auto r0 = check_spherical_limit(sector(0, 0, 0, 0), 1.0);
    CHECK(r0.branches[0].K == 0.0);

    auto r2 = check_spherical_limit(sector(2, 0, 0, 2), 1.0);
    CHECK(r2.branches[0].limit == -18.0);
    CHECK(r2.branches[1].limit == -8.0);
    CHECK(std::abs(r2.branches[0].K + 18.0) <= 1e-7);
    CHECK(std::abs(r2.branches[1].K + 8.0) <= 1e-7);
    CHECK(r2.passed);
    CHECK_NOTHROW(require(r2));

    SphericalLimitReport bad = r2;
    bad.passed = false;
    CHECK_ERROR_CODE(require(bad), LimitMismatch);
}

TEST_CASE("check_parabolic_limit")
{
    auto s = sector(1, 0, 0, 0);
    auto r = check_parabolic_limit(s, 1.0);
    CHECK(r.passed);
    CHECK(r.branches[0].K_over_a == doctest::Approx(-0.2).epsilon(1e-4));
    CHECK(r.branches[1].K_over_a == doctest::Approx(0.2).epsilon(1e-4));
    // K/a = -sqrt(-2E) m9(n_p): m9(0) = 1 pairs with K/a = -1/5.
    CHECK(r.branches[0].matched_np == 0);
    CHECK(r.branches[0].labelled_np == 1);
    CHECK(r.max_t_deviation <= 1e-4);

    auto r1 = check_parabolic_limit(sector(1, 0, 1, 1), 1.0);
    CHECK(r1.branches[0].K_over_a == -8e-6);
    CHECK(r1.branches[0].expected == 0.0);
    CHECK(r1.passed);
}

TEST_CASE("eigen residual diagnostics")
{
    for (const auto& s : enumerate_sectors(Rational(1), 3))
        for (double a : {0.1, 1.0, 10.0, 100.0}) {
            auto sp = separation_constants(s, a, 1.0);
            CHECK(eigen_residual(sp) <= 1e-12);
            CHECK(orthonormality_defect(sp.T) <= 1e-12);
        }
}

#include "support.hpp"

#include <cmath>

#include "micz/exact.hpp"

using namespace micz;

namespace {

RadicalScalar rs(long cn, long cd, long rn, long rd = 1)
{
    return RadicalScalar(Rational(cn, cd), Rational(rn, rd));
}

} // namespace

TEST_CASE("canonical form")
{
    CHECK(RadicalScalar().radicand() == 1);
    CHECK(RadicalScalar(Rational(0), Rational(7)) == RadicalScalar());
    auto x = rs(1, 1, 12);
    CHECK(x.coeff() == 2);
    CHECK(x.radicand() == 3);
    auto y = rs(3, 1, 1, 9);
    CHECK(y.is_rational());
    CHECK(y.coeff() == 1);
    auto z = rs(1, 1, 2, 3); // sqrt(2/3) = sqrt(6)/3
    CHECK(z.coeff() == Rational(1, 3));
    CHECK(z.radicand() == 6);
    CHECK(RadicalScalar::sqrt_of(Rational(49, 4)) == RadicalScalar(Rational(7, 2)));
}

TEST_CASE("radical_mul")
{
    CHECK(radical_mul(rs(1, 2, 2), rs(1, 2, 2)) == RadicalScalar(Rational(1, 2)));
    CHECK(radical_mul(rs(3, 1, 1, 9), RadicalScalar(1)) == RadicalScalar(1));
    CHECK(radical_mul(rs(2, 1, 6), rs(5, 1, 2, 3)) == RadicalScalar(20));
    CHECK(radical_mul(rs(-1, 1, 5), RadicalScalar()).is_zero());
}

TEST_CASE("radical_add")
{
    CHECK(radical_add(rs(1, 2, 2), rs(1, 2, 2)) == rs(1, 1, 2));
    CHECK(radical_add(RadicalScalar(), rs(5, 1, 3)) == rs(5, 1, 3));
    CHECK(radical_add(rs(1, 1, 3), rs(-1, 1, 3)).is_zero());
    CHECK(radical_add(rs(1, 1, 8), rs(1, 1, 2)) == rs(3, 1, 2));
    CHECK_ERROR_CODE(radical_add(rs(1, 1, 2), rs(1, 1, 3)), RadicandMismatch);
}

TEST_CASE("radical_div")
{
    CHECK(radical_div(rs(1, 1, 6), rs(1, 1, 2)) == rs(1, 1, 3));
    CHECK(radical_div(RadicalScalar(1), rs(1, 1, 2)) == rs(1, 2, 2));
    CHECK_ERROR_CODE(radical_div(RadicalScalar(1), RadicalScalar()), DomainError);
}

TEST_CASE("radical_cmp")
{
    // 2 sqrt(6)/5 squared is 24/25; float witness from the square.
    auto x = rs(2, 5, 6);
    CHECK(to_float(x) == doctest::Approx(std::sqrt(24.0 / 25.0)).epsilon(1e-15));
    CHECK(radical_cmp(rs(1, 1, 2), rs(1, 1, 3)) == std::strong_ordering::less);
    CHECK(radical_cmp(rs(-1, 1, 2), RadicalScalar(Rational(1, 1000))) == std::strong_ordering::less);
    CHECK(radical_cmp(rs(1, 1, 8), rs(2, 1, 2)) == std::strong_ordering::equal);
    CHECK(radical_cmp(rs(-3, 1, 2), rs(-2, 1, 3)) == std::strong_ordering::less);
    CHECK(rs(1, 1, 3) > rs(1, 1, 2));
}

TEST_CASE("to_float")
{
    CHECK(to_float(rs(1, 1, 2)) == 1.4142135623730951);
    CHECK(to_float(rs(1, 2, 2)) == 0.7071067811865476);
    CHECK(to_float(RadicalScalar()) == 0.0);
    CHECK(to_float(Rational(1, 3)) == 1.0 / 3.0);
    CHECK(to_float(rs(-7, 3, 5)) == doctest::Approx(-7.0 * std::sqrt(5.0) / 3.0).epsilon(1e-15));
}

TEST_CASE("parse and print")
{
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-2") == -2);
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("+1.5") == Rational(3, 2));
    CHECK(parse_rational("010/08") == Rational(5, 4));
    CHECK(parse_rational("0.025") == Rational(1, 40));
    CHECK_ERROR_CODE(parse_rational("1/0"), InvalidArgument);
    CHECK_ERROR_CODE(parse_rational("abc"), InvalidArgument);
    CHECK_ERROR_CODE(parse_rational(""), InvalidArgument);
    CHECK(to_string(Rational(-4, 6)) == "-2/3");
    CHECK(to_string(Rational(5)) == "5");
}

TEST_CASE("factorial")
{
    CHECK(factorial(0) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(factorial(25) == BigInt("15511210043330985984000000"));
    CHECK_ERROR_CODE(factorial(-1), FactorialOfNegative);
}

TEST_CASE("RadicalSum")
{
    RadicalSum s;
    s += rs(1, 2, 2);
    s += rs(1, 1, 3);
    CHECK(s.term_count() == 2);
    CHECK_ERROR_CODE(s.single(), RadicandMismatch);
    s -= rs(1, 1, 3);
    CHECK(s.single() == rs(1, 2, 2));
    s -= rs(1, 2, 2);
    CHECK(s.is_zero());
    CHECK(s.single().is_zero());
}

TEST_CASE("property: multiplication is exact and commutative")
{
    const long radicands[] = {1, 2, 3, 5, 6, 10, 12, 18, 45, 98};
    for (long a : radicands)
        for (long b : radicands) {
            auto x = rs(a, 7, b);
            auto y = rs(-b, 3, a * 2, 5);
            auto p = radical_mul(x, y);
            CHECK(p == radical_mul(y, x));
            CHECK(p.square() == x.square() * y.square());
            CHECK(to_float(p) == doctest::Approx(to_float(x) * to_float(y)).epsilon(1e-14));
        }
}

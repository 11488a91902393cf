#include "micz/exact.hpp"

#include <cctype>
#include <mpfr.h>

#include "micz/error.hpp"

namespace micz {

std::string to_string(const Rational& q)
{
    Rational c(q);
    c.canonicalize();
    return c.get_str();
}

Rational parse_rational(std::string_view text)
{
    auto fail = [&] { return Error(ErrorCode::InvalidArgument, "not a rational number: '" + std::string(text) + "'"); };
    if (text.empty())
        throw fail();

    auto digits_only = [](std::string_view s) {
        if (s.empty())
            return false;
        for (char ch : s)
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                return false;
        return true;
    };

    bool negative = false;
    std::string_view body = text;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!digits_only(num) || !digits_only(den))
            throw fail();
        BigInt d(std::string(den), 10);
        if (d == 0)
            throw fail();
        value = Rational(BigInt(std::string(num), 10), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot);
        auto frac = body.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !digits_only(whole)) ||
            (!frac.empty() && !digits_only(frac)))
            throw fail();
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
            scale *= 10;
        BigInt num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        value = Rational(num, scale);
    } else {
        if (!digits_only(body))
            throw fail();
        value = Rational(BigInt(std::string(body), 10));
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

BigInt factorial(long k)
{
    if (k < 0)
        throw Error(ErrorCode::FactorialOfNegative, "factorial of " + std::to_string(k));
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
    return out;
}

RadicalScalar::RadicalScalar(const Rational& coeff, const Rational& radicand, std::uint64_t trial_bound)
{
    if (sgn(radicand) < 0)
        throw Error(ErrorCode::DomainError, "negative radicand " + to_string(radicand));
    if (sgn(coeff) == 0 || sgn(radicand) == 0) {
        coeff_ = 0;
        radicand_ = 1;
        return;
    }

    // sqrt(p/q) = sqrt(p*q) / q, then pull square factors out of p*q.
    BigInt rest = radicand.get_num() * radicand.get_den();
    BigInt kept = 1;
    BigInt root = 1;
    for (unsigned long d = 2; d <= trial_bound && BigInt(d) * d <= rest; ++d) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), d) != 0) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
            ++e;
        }
        for (unsigned i = 0; i < e / 2; ++i)
            root *= d;
        if (e % 2 != 0)
            kept *= d;
    }
    if (mpz_perfect_square_p(rest.get_mpz_t()) != 0) {
        BigInt r;
        mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
        root *= r;
    } else {
        kept *= rest;
    }

    coeff_ = coeff * Rational(root, radicand.get_den());
    coeff_.canonicalize();
    radicand_ = Rational(kept);
}

RadicalScalar RadicalScalar::operator-() const
{
    RadicalScalar out = *this;
    out.coeff_ = -out.coeff_;
    return out;
}

RadicalScalar radical_mul(const RadicalScalar& x, const RadicalScalar& y)
{
    if (x.is_zero() || y.is_zero())
        return {};
    if (x.radicand() == y.radicand())
        return RadicalScalar(Rational(x.coeff() * y.coeff() * x.radicand()));
    return RadicalScalar(Rational(x.coeff() * y.coeff()), Rational(x.radicand() * y.radicand()));
}

RadicalScalar radical_add(const RadicalScalar& x, const RadicalScalar& y)
{
    if (x.is_zero())
        return y;
    if (y.is_zero())
        return x;
    if (x.radicand() != y.radicand())
        throw Error(ErrorCode::RadicandMismatch,
                    "sqrt(" + to_string(x.radicand()) + ") + sqrt(" + to_string(y.radicand()) + ")");
    return RadicalScalar(Rational(x.coeff() + y.coeff()), x.radicand());
}

RadicalScalar radical_div(const RadicalScalar& x, const RadicalScalar& y)
{
    if (y.is_zero())
        throw Error(ErrorCode::DomainError, "division by zero");
    // 1 / (c sqrt(d)) = sqrt(d) / (c d)
    RadicalScalar inverse(Rational(1 / (y.coeff() * y.radicand())), y.radicand());
    return radical_mul(x, inverse);
}

std::strong_ordering radical_cmp(const RadicalScalar& x, const RadicalScalar& y)
{
    int sx = x.sign();
    int sy = y.sign();
    if (sx != sy)
        return sx <=> sy;
    if (sx == 0)
        return std::strong_ordering::equal;
    int c = cmp(x.square(), y.square());
    if (sx < 0)
        c = -c;
    return c <=> 0;
}

double to_float(const RadicalScalar& x, int precision)
{
    if (precision < 53)
        throw Error(ErrorCode::InvalidArgument, "precision must be >= 53 bits");
    if (x.is_zero())
        return 0.0;
    if (x.is_rational())
        return to_float(x.coeff());

    mpfr_t t;
    mpfr_init2(t, precision + 16);
    Rational sq = x.square();
    mpfr_set_q(t, sq.get_mpq_t(), MPFR_RNDN);
    mpfr_sqrt(t, t, MPFR_RNDN);
    double out = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return x.sign() < 0 ? -out : out;
}

double to_float(const Rational& x)
{
    // mpq_get_d truncates; round to nearest instead.
    mpfr_t t;
    mpfr_init2(t, 53);
    mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDN);
    double out = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return out;
}

std::string to_string(const RadicalScalar& x)
{
    if (x.is_rational())
        return to_string(x.coeff());
    return to_string(x.coeff()) + "*sqrt(" + to_string(x.radicand()) + ")";
}

RadicalSum& RadicalSum::operator+=(const RadicalScalar& x)
{
    if (x.is_zero())
        return *this;
    BigInt key = x.radicand().get_num();
    auto [it, inserted] = terms_.try_emplace(key, x.coeff());
    if (!inserted) {
        it->second += x.coeff();
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
    return *this;
}

RadicalScalar RadicalSum::single() const
{
    if (terms_.empty())
        return {};
    if (terms_.size() > 1)
        throw Error(ErrorCode::RadicandMismatch, "sum spans " + std::to_string(terms_.size()) + " radicands");
    const auto& [radicand, coeff] = *terms_.begin();
    return RadicalScalar(coeff, Rational(radicand));
}

double RadicalSum::to_float() const
{
    double acc = 0.0;
    for (const auto& [radicand, coeff] : terms_)
        acc += micz::to_float(RadicalScalar(coeff, Rational(radicand)));
    return acc;
}

} // namespace micz

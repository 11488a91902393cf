#pragma once

// Exact arithmetic over numbers of the form c * sqrt(d), c and d rational.
//
// Every coefficient of the spherical <-> parabolic transformation, the B
// coefficients and the closed-form M9 matrix live in this class, so the
// identities between them can be checked with zero error.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace micz {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Default trial-division bound used when reducing radicands.
inline constexpr std::uint64_t kSquarefreeTrialBound = 1'000'000;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Parses "p/q", an integer, or a plain decimal such as "-1.25" exactly.
/// Throws Error(InvalidArgument) on malformed input.
Rational parse_rational(std::string_view text);

BigInt factorial(long k);

class RadicalScalar {
public:
    RadicalScalar() : coeff_(0), radicand_(1) {}
    RadicalScalar(const Rational& value) : coeff_(value), radicand_(1) { coeff_.canonicalize(); }
    RadicalScalar(long value) : RadicalScalar(Rational(value)) {}

    /// coeff * sqrt(radicand). radicand must be non-negative.
    RadicalScalar(const Rational& coeff, const Rational& radicand,
                  std::uint64_t trial_bound = kSquarefreeTrialBound);

    static RadicalScalar sqrt_of(const Rational& radicand) { return {Rational(1), radicand}; }

    const Rational& coeff() const noexcept { return coeff_; }
    const Rational& radicand() const noexcept { return radicand_; }

    bool is_zero() const noexcept { return sgn(coeff_) == 0; }
    bool is_rational() const noexcept { return radicand_ == 1; }
    int sign() const noexcept { return sgn(coeff_); }

    /// The exact square c^2 * d.
    Rational square() const { return coeff_ * coeff_ * radicand_; }

    RadicalScalar operator-() const;

    friend bool operator==(const RadicalScalar& x, const RadicalScalar& y)
    {
        return x.coeff_ == y.coeff_ && x.radicand_ == y.radicand_;
    }

private:
    Rational coeff_;
    Rational radicand_; // canonical: integer with square factors (<= trial bound) removed
};

RadicalScalar radical_mul(const RadicalScalar& x, const RadicalScalar& y);

/// Sum of two values sharing a reduced radicand (or with either operand zero).
/// Throws Error(RadicandMismatch) otherwise.
RadicalScalar radical_add(const RadicalScalar& x, const RadicalScalar& y);

/// Quotient x / y; throws Error(DomainError) when y is zero.
RadicalScalar radical_div(const RadicalScalar& x, const RadicalScalar& y);

std::strong_ordering radical_cmp(const RadicalScalar& x, const RadicalScalar& y);

/// Value rounded to a double. The square root is evaluated by MPFR at
/// `precision` bits (>= 53) before the final rounding.
double to_float(const RadicalScalar& x, int precision = 53);
double to_float(const Rational& x);

inline RadicalScalar operator*(const RadicalScalar& x, const RadicalScalar& y) { return radical_mul(x, y); }
inline RadicalScalar operator+(const RadicalScalar& x, const RadicalScalar& y) { return radical_add(x, y); }
inline RadicalScalar operator-(const RadicalScalar& x, const RadicalScalar& y) { return radical_add(x, -y); }
inline RadicalScalar operator/(const RadicalScalar& x, const RadicalScalar& y) { return radical_div(x, y); }
inline std::strong_ordering operator<=>(const RadicalScalar& x, const RadicalScalar& y) { return radical_cmp(x, y); }

std::string to_string(const RadicalScalar& x);

/// Linear combination of radicals with possibly different radicands, grouped
/// by radicand. Square roots of distinct squarefree integers are linearly
/// independent over Q, so the sum is zero iff every group coefficient is.
class RadicalSum {
public:
    RadicalSum& operator+=(const RadicalScalar& x);
    RadicalSum& operator-=(const RadicalScalar& x) { return *this += -x; }

    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }

    /// Collapses to a single RadicalScalar; throws RadicandMismatch when the
    /// sum spans more than one radicand.
    RadicalScalar single() const;

    double to_float() const;

private:
    std::map<BigInt, Rational> terms_;
};

} // namespace micz

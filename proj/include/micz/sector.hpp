#pragma once

// Quantum-number bookkeeping for one degenerate block (n, Q, L, J; Z).

#include <compare>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "micz/exact.hpp"

namespace micz {

/// Integer or half-odd-integer, stored as twice its value.
class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int value) : twice_(2 * value) {}

    static constexpr HalfInt from_twice(int twice)
    {
        HalfInt h;
        h.twice_ = twice;
        return h;
    }

    constexpr int twice() const noexcept { return twice_; }
    constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }
    /// Value as an integer; only meaningful when is_integer().
    constexpr int as_int() const noexcept { return twice_ / 2; }
    constexpr double value() const noexcept { return 0.5 * twice_; }
    Rational rational() const
    {
        Rational q(twice_, 2);
        q.canonicalize();
        return q;
    }

    constexpr HalfInt operator+(HalfInt o) const noexcept { return from_twice(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const noexcept { return from_twice(twice_ - o.twice_); }
    constexpr HalfInt operator-() const noexcept { return from_twice(-twice_); }
    constexpr HalfInt operator+(int k) const noexcept { return from_twice(twice_ + 2 * k); }
    constexpr HalfInt operator-(int k) const noexcept { return from_twice(twice_ - 2 * k); }

    constexpr auto operator<=>(const HalfInt&) const = default;

private:
    int twice_ = 0;
};

std::string to_string(HalfInt h);

/// A validated sector. Construct through validate_sector().
struct Sector {
    int n = 0;
    int Q = 0;
    int L = 0;
    int J = 0;
    Rational Z = 1;

    /// N = n + Q/2 - (L+J)/2 + 1
    int dimension() const noexcept { return n + (Q - L - J) / 2 + 1; }
    /// n + Q/2
    HalfInt top() const noexcept { return HalfInt::from_twice(2 * n + Q); }
    /// (L+J)/2
    HalfInt bottom() const noexcept { return HalfInt::from_twice(L + J); }
    /// (J-L)/2
    HalfInt half_diff() const noexcept { return HalfInt::from_twice(J - L); }
    /// 2n + Q + 8
    int scale() const noexcept { return 2 * n + Q + 8; }

    double z_float() const { return to_float(Z); }
};

Sector validate_sector(long n, long Q, long L, long J, const Rational& Z);

/// (L+J)/2, ..., n+Q/2 ascending.
std::vector<HalfInt> lambda_range(const Sector& s);

/// 0, ..., N-1.
std::vector<int> np_range(const Sector& s);

/// Index of lambda in lambda_range, or LambdaOutOfRange.
int lambda_index(const Sector& s, HalfInt lambda);

/// E = -Z^2 / (2 (n + 4 + Q/2)^2)
Rational energy(const Sector& s);
double energy_float(const Sector& s);

/// alpha = 4Z / (2n + Q + 8) = 2 sqrt(-2E)
Rational alpha_scale(const Sector& s);

/// n + Q/2 - J - 2 n_p, the M9 eigenvalue on parabolic state n_p.
HalfInt m9_parabolic_eigenvalue(const Sector& s, int np);

struct SphericalBasis {
    HalfInt lambda;
};
struct ParabolicBasis {
    int np = 0;
};
struct SpheroidalBasis {
    int nk = 0;
    double a = 0.0;
};

/// Labels j5..j1, m_j ride along for serialization; nothing branches on them.
struct PassiveLabels {
    int j5 = 0, j4 = 0, j3 = 0, j2 = 0, j1 = 0, mj = 0;
};

struct StateLabel {
    Sector sector;
    std::variant<SphericalBasis, ParabolicBasis, SpheroidalBasis> basis;
    PassiveLabels passive;
};

/// Checks the basis index against the sector ranges; throws IndexOutOfRange
/// (or DomainError for a <= 0).
StateLabel make_state(const Sector& s, std::variant<SphericalBasis, ParabolicBasis, SpheroidalBasis> basis,
                      PassiveLabels passive = {});

/// Every valid sector with n + Q/2 <= max_top, Q <= max_Q and L, J <= max_LJ,
/// ordered by (n+Q/2, Q, L, J).
std::vector<Sector> enumerate_sectors(const Rational& Z, int max_top = 4, int max_Q = 4, int max_LJ = 4);

} // namespace micz

#include "micz/sector.hpp"

#include <algorithm>

#include "micz/error.hpp"

namespace micz {

std::string to_string(HalfInt h)
{
    if (h.is_integer())
        return std::to_string(h.as_int());
    return std::to_string(h.twice()) + "/2";
}

Sector validate_sector(long n, long Q, long L, long J, const Rational& Z)
{
    if (n < 0 || Q < 0 || L < 0 || J < 0)
        throw Error(ErrorCode::NegativeQuantumNumber, "n, Q, L, J must be non-negative");
    if (sgn(Z) <= 0)
        throw Error(ErrorCode::NonpositiveCharge, "Z must be positive, got " + to_string(Z));
    if ((Q - L - J) % 2 != 0)
        throw Error(ErrorCode::ParityMismatch,
                    "Q = " + std::to_string(Q) + " and L + J = " + std::to_string(L + J) + " differ in parity");
    long twice_dim = 2 * n + Q - L - J + 2;
    if (twice_dim < 2)
        throw Error(ErrorCode::EmptySector, "N = n + Q/2 - (L+J)/2 + 1 < 1");

    Sector s;
    s.n = static_cast<int>(n);
    s.Q = static_cast<int>(Q);
    s.L = static_cast<int>(L);
    s.J = static_cast<int>(J);
    s.Z = Z;
    return s;
}

std::vector<HalfInt> lambda_range(const Sector& s)
{
    std::vector<HalfInt> out;
    out.reserve(static_cast<std::size_t>(s.dimension()));
    for (HalfInt l = s.bottom(); l <= s.top(); l = l + 1)
        out.push_back(l);
    return out;
}

std::vector<int> np_range(const Sector& s)
{
    std::vector<int> out(static_cast<std::size_t>(s.dimension()));
    for (int i = 0; i < s.dimension(); ++i)
        out[static_cast<std::size_t>(i)] = i;
    return out;
}

int lambda_index(const Sector& s, HalfInt lambda)
{
    if (lambda < s.bottom() || lambda > s.top() || (lambda - s.bottom()).twice() % 2 != 0)
        throw Error(ErrorCode::LambdaOutOfRange, "lambda = " + to_string(lambda) + " outside [" +
                                                     to_string(s.bottom()) + ", " + to_string(s.top()) + "]");
    return (lambda - s.bottom()).as_int();
}

Rational energy(const Sector& s)
{
    // n + 4 + Q/2 = (2n + Q + 8) / 2
    Rational denom(s.scale() * s.scale(), 2);
    Rational e = -s.Z * s.Z / denom;
    e.canonicalize();
    return e;
}

double energy_float(const Sector& s)
{
    double z = s.z_float();
    double m = 0.5 * s.scale();
    return -z * z / (2.0 * m * m);
}

Rational alpha_scale(const Sector& s)
{
    Rational a = 4 * s.Z / s.scale();
    a.canonicalize();
    return a;
}

HalfInt m9_parabolic_eigenvalue(const Sector& s, int np)
{
    if (np < 0 || np >= s.dimension())
        throw Error(ErrorCode::IndexOutOfRange,
                    "n_p = " + std::to_string(np) + " outside [0, " + std::to_string(s.dimension() - 1) + "]");
    return s.top() - s.J - 2 * np;
}

StateLabel make_state(const Sector& s, std::variant<SphericalBasis, ParabolicBasis, SpheroidalBasis> basis,
                      PassiveLabels passive)
{
    if (auto* sph = std::get_if<SphericalBasis>(&basis)) {
        try {
            lambda_index(s, sph->lambda);
        } catch (const Error& e) {
            throw Error(ErrorCode::IndexOutOfRange, e.what());
        }
    } else if (auto* par = std::get_if<ParabolicBasis>(&basis)) {
        m9_parabolic_eigenvalue(s, par->np);
    } else {
        const auto& sd = std::get<SpheroidalBasis>(basis);
        if (sd.nk < 0 || sd.nk >= s.dimension())
            throw Error(ErrorCode::IndexOutOfRange, "n_k = " + std::to_string(sd.nk));
        if (!(sd.a > 0.0))
            throw Error(ErrorCode::DomainError, "focal distance a must be positive");
    }
    return StateLabel{s, basis, passive};
}

std::vector<Sector> enumerate_sectors(const Rational& Z, int max_top, int max_Q, int max_LJ)
{
    std::vector<Sector> out;
    for (int top2 = 0; top2 <= 2 * max_top; ++top2)
        for (int Q = 0; Q <= std::min(max_Q, top2); ++Q) {
            if ((top2 - Q) % 2 != 0)
                continue;
            const int n = (top2 - Q) / 2;
            for (int L = 0; L <= max_LJ; ++L)
                for (int J = 0; J <= max_LJ; ++J)
                    if ((L + J - Q) % 2 == 0 && L + J <= top2)
                        out.push_back(validate_sector(n, Q, L, J, Z));
        }
    return out;
}

} // namespace micz

#ifndef ADELION_PADIC_HPP
#define ADELION_PADIC_HPP

#include <limits>
#include <vector>

#include "adelion/exact.hpp"

namespace adelion {

/// valuation() result for x = 0.
inline constexpr long kValuationInfinity = std::numeric_limits<long>::max();

/// p-adic valuation of a rational: x = p^v * (m/n) with p coprime to m, n.
long valuation(const Rat& x, Prime p);

/// |x|_p = p^{-valuation}, |0|_p = 0, as an exact rational.
Rat padic_norm(const Rat& x, Prime p);

/// Fractional part {x}_p: the finite tail of negative-power digits.
/// Lies in [0,1) with denominator a power of p; {x}_p = 0 iff valuation >= 0.
Rat frac_part(const Rat& x, Prime p);

/// Digits x_k of the canonical p-adic expansion for kLo <= k <= kHi,
/// computed by exact long division (eventually periodic for rationals).
std::vector<int> digits(const Rat& x, Prime p, long k_lo, long k_hi);

/// The partial sum of digits below position m:  sum_{k<m} x_k p^k.
/// Equals p^m * {x / p^m}_p; a nonnegative rational with p-power denominator.
Rat trunc_below(const Rat& x, Prime p, long m);

/// chi_p(x) = e^{2 pi i {x}_p}, the additive character of Q_p.
inline UnitPhase chi(const Rat& x, Prime p) { return UnitPhase(frac_part(x, p)); }

/// True when a equals its own p-adic fractional part ({a}_p = a),
/// i.e. a lies in the natural shift set I_p.
bool is_shift_value(const Rat& a, Prime p);

/// All of I_p with denominator dividing p^depth (p^depth values, 0 first,
/// ordered denominator-major so fixtures are stable).
std::vector<Rat> enumerate_shifts(Prime p, long depth);

/// I_p^j = {a in I_p : p^j a integral} — the same p^j values.
inline std::vector<Rat> enumerate_restricted_shifts(Prime p, long j) {
    return enumerate_shifts(p, j);
}

/**
 * Closed p-adic ball B_gamma(a) = {x : |x-a|_p <= p^gamma}, kept in a
 * canonical form: the stored center is the digit expansion of the given
 * center truncated below position -gamma, so equal balls compare equal.
 */
struct Ball {
    Prime p = 2;
    Rat center;      // canonical representative, in [0, p^{-radius_exp}) with p-power denominator
    long radius_exp = 0;

    static Ball make(Prime p, const Rat& center, long radius_exp);

    /// The unit ball B_0(0).
    static Ball unit(Prime p) { return Ball{p, Rat(0), 0}; }

    bool contains(const Rat& x) const;
    bool contains_zero() const { return center == 0; }

    /// The d-th child: radius one step finer, digit d appended at position -radius_exp.
    Ball child(long d) const;

    bool operator==(const Ball& o) const {
        return p == o.p && radius_exp == o.radius_exp && center == o.center;
    }
    bool operator!=(const Ball& o) const { return !(*this == o); }
};

enum class BallRelation { Disjoint, Equal, FirstInsideSecond, SecondInsideFirst };

/// Ultrametric trichotomy: two balls are equal, nested, or disjoint.
BallRelation ball_relation(const Ball& a, const Ball& b);

/// Total order on rationals then radius, used for deterministic term order.
int compare(const Rat& a, const Rat& b);

}  // namespace adelion

#endif

#ifndef ADELION_EXACT_HPP
#define ADELION_EXACT_HPP

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace adelion {

using Int = mpz_class;
using Rat = mpq_class;
using Complex = std::complex<double>;
using Prime = long;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Int int_pow(long base, unsigned long exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return r;
}

/// p^e as an exact rational, e of either sign.
inline Rat rat_pow(long base, long e) {
    if (e >= 0) return Rat(int_pow(base, static_cast<unsigned long>(e)));
    return make_rat(1, int_pow(base, static_cast<unsigned long>(-e)));
}

inline double to_double(const Rat& q) { return q.get_d(); }

/// Tolerances shared by the inexact (amplitude) side of the algebra.
/// Set once at startup (the CLI honors ADELION_TOL); all library state is
/// otherwise immutable values.
namespace config {
double amplitude_tolerance();
void set_amplitude_tolerance(double tol);
}  // namespace config

/**
 * A point on the unit circle, e^{2 pi i r}, stored as the exact rational
 * r in [0,1).  Multiplication is addition of r mod 1 and never rounds;
 * the complex value is produced only on demand.
 */
class UnitPhase {
public:
    UnitPhase() : turns_(0) {}

    explicit UnitPhase(const Rat& turns) : turns_(turns) { reduce(); }

    static UnitPhase one() { return UnitPhase(); }

    const Rat& turns() const { return turns_; }

    bool is_one() const { return turns_ == 0; }

    UnitPhase operator*(const UnitPhase& o) const { return UnitPhase(turns_ + o.turns_); }

    UnitPhase& operator*=(const UnitPhase& o) {
        turns_ += o.turns_;
        reduce();
        return *this;
    }

    UnitPhase conj() const { return UnitPhase(-turns_); }

    UnitPhase pow(long n) const { return UnitPhase(turns_ * n); }

    bool operator==(const UnitPhase& o) const { return turns_ == o.turns_; }
    bool operator!=(const UnitPhase& o) const { return turns_ != o.turns_; }

    /// Exact for the 4th roots of unity so that real/imaginary step data
    /// stays bit-clean; trig otherwise.
    Complex value() const {
        const Int& num = turns_.get_num();
        const Int& den = turns_.get_den();
        if (den == 1) return {1.0, 0.0};
        if (den == 2) return {-1.0, 0.0};
        if (den == 4) return (num == 1) ? Complex{0.0, 1.0} : Complex{0.0, -1.0};
        double angle = 2.0 * std::numbers::pi * to_double(turns_);
        return {std::cos(angle), std::sin(angle)};
    }

private:
    void reduce() {
        // mod 1, representative in [0,1)
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), turns_.get_num().get_mpz_t(), turns_.get_den().get_mpz_t());
        turns_ -= q;
    }

    Rat turns_;
};

}  // namespace adelion

#endif

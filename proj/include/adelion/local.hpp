#ifndef ADELION_LOCAL_HPP
#define ADELION_LOCAL_HPP

#include <vector>

#include "adelion/padic.hpp"

namespace adelion {

/**
 * One term  amp * e^{2 pi i phase} * chi_p(freq * x) * 1_{ball}(x).
 *
 * The phase stays an exact rational until a numeric value is demanded;
 * the amplitude is the only floating-point slot.  In canonical form the
 * frequency is visible on the ball (|freq|_p > p^{-radius}) or zero —
 * an invisible frequency is a per-ball constant and gets folded into
 * the phase.
 */
struct CharBallTerm {
    Complex amp{1.0, 0.0};
    UnitPhase phase;
    Rat freq;
    Ball ball;

    Complex coefficient() const { return amp * phase.value(); }
};

/**
 * A compactly supported locally constant function on Q_p: a finite sum
 * of character-times-ball-indicator terms.  Canonical form: no properly
 * nested balls, one term per (ball, frequency), complete sibling groups
 * merged upward into coarser character terms, deterministic order.  The
 * empty term list is the zero function.
 *
 * Closed under translation, dilation, modulation, products, and the
 * Fourier transform; integrals and inner products evaluate in closed
 * form (the only rounding is final complex multiplication).
 */
class LocalFunction {
public:
    LocalFunction() = default;
    explicit LocalFunction(Prime p) : p_(p) {}

    /// Canonicalizing constructor; terms may overlap arbitrarily.
    static LocalFunction from_terms(Prime p, std::vector<CharBallTerm> terms);

    static LocalFunction zero(Prime p) { return LocalFunction(p); }
    static LocalFunction indicator(const Ball& ball);
    /// Omega(|x|_p), the unit-ball indicator.
    static LocalFunction unit_indicator(Prime p) { return indicator(Ball::unit(p)); }

    Prime prime() const { return p_; }
    const std::vector<CharBallTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// x -> f(x - c)
    LocalFunction translated(const Rat& c) const;
    /// x -> f(p^j x); ball radii grow by j (measure scales by p^j).
    LocalFunction dilated(long j) const;
    /// x -> chi_p(b x) f(x)
    LocalFunction modulated(const Rat& b) const;
    /// x -> f(-x)
    LocalFunction reflected() const;
    LocalFunction conjugated() const;
    LocalFunction scaled(const Complex& c) const;
    LocalFunction scaled(const UnitPhase& ph) const;

    LocalFunction operator+(const LocalFunction& o) const;
    LocalFunction operator-(const LocalFunction& o) const;

    /// Pointwise product, via nested-or-disjoint ball intersection.
    LocalFunction multiplied(const LocalFunction& o) const;

    /// F[f](xi) = integral chi_p(xi x) f(x) dx
    LocalFunction fourier() const;
    LocalFunction inverse_fourier() const;

    Complex integral() const;
    Complex evaluate(const Rat& x) const;
    double norm() const;

    /// Support radius exponent N: the smallest N with supp f inside the
    /// zero-centered ball B_N; zero function -> throws.
    long support_radius_exp() const;
    /// Parameter of constancy: f(x+y) = f(x) for |y|_p <= p^l.
    /// Reports the conservative per-term bound min(gamma, v(freq)).
    long constancy_exp() const;

private:
    Prime p_ = 2;
    std::vector<CharBallTerm> terms_;
};

Complex inner_product(const LocalFunction& f, const LocalFunction& g);

/// Same term structure (balls and frequencies exact) and coefficients
/// within tol.
bool approx_equal(const LocalFunction& f, const LocalFunction& g, double tol);

}  // namespace adelion

#endif

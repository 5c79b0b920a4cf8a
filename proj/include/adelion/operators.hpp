#ifndef ADELION_OPERATORS_HPP
#define ADELION_OPERATORS_HPP

#include <variant>

#include "adelion/adelic.hpp"

namespace adelion {

/// Raised when a tabulated symbol is asked for a ball it does not cover.
class SymbolDomainError : public std::runtime_error {
public:
    SymbolDomainError(Prime place, const std::string& what)
        : std::runtime_error(what), place_(place) {}
    Prime place() const { return place_; }

private:
    Prime place_;
};

/// |xi_p|^gamma with a complex exponent; undefined at 0.
struct PowerNormSymbol {
    Complex gamma;

    /// Value on a ball not containing 0, where |xi| is the constant p^{-v(center)}.
    Complex value_on_sphere(Prime p, long norm_exp) const;
};

/// A locally constant symbol given by finitely many (ball, value) pieces
/// plus the declared constancy exponent M: constant on every ball of
/// radius p^{-M} away from zero.
struct TabulatedSymbol {
    std::vector<std::pair<Ball, Complex>> pieces;
    long constancy_exp = 0;

    Complex value_at(Prime p, const Rat& xi) const;
    /// Value on a ball, which must lie inside one declared piece.
    Complex value_on(const Ball& b) const;
};

using PlaceSymbol = std::variant<PowerNormSymbol, TabulatedSymbol>;

/**
 * Fourier multiplier on the non-Archimedean Lizorkin space: one factor
 * per place up to the finiteness parameter m, the implicit unit-ball
 * indicator beyond.  Fractional operators are the all-PowerNorm case.
 */
struct Symbol {
    std::map<Prime, PlaceSymbol> places;
    Prime m = 2;

    static Symbol fractional(const std::map<Prime, Complex>& gamma_hat);
    /// The uniform-exponent operator: every place up to m gets |.|^gamma.
    static Symbol fractional_uniform(Complex gamma, Prime m);
};

/// A_0 f = F^{-1}[ A * F[f] ], applied place by place.  Fourier-side
/// terms whose ball contains 0 with visible amplitude raise
/// NotLizorkinError naming the place; a tabulated symbol missing a
/// needed ball raises SymbolDomainError.
AdelicFunction apply_symbol(const AdelicFunction& f, const Symbol& symbol);

/// D^{gamma_hat} f: the fractional operator with per-place exponents.
AdelicFunction fractional_apply(const AdelicFunction& f, const std::map<Prime, Complex>& gamma_hat);

struct EigenResult {
    bool is_eigen = false;
    Complex lambda{0, 0};
};

/// Eigenfunction criterion for a tensor wavelet index: at each place the
/// symbol must be constant on the Fourier support ball
/// B_{j}(-k q^{-j-1}); the eigenvalue is the product of those constants.
/// The index must carry a wavelet factor at every place up to the
/// symbol's finiteness parameter and none beyond.
EigenResult eigen_check(const Symbol& symbol, const AdelicIndex& idx);

/// || A psi - lambda psi || / || psi ||, computed end to end.
double verify_eigenrelation(const Symbol& symbol, const AdelicIndex& idx);

}  // namespace adelion

#endif

#include "adelion/operators.hpp"

#include <cmath>

namespace adelion {

namespace {

bool is_prime_number(Prime p) {
    if (p < 2) return false;
    for (Prime d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::vector<Prime> primes_up_to(Prime m) {
    std::vector<Prime> out;
    for (Prime q = 2; q <= m; ++q)
        if (is_prime_number(q)) out.push_back(q);
    return out;
}

}  // namespace

Complex PowerNormSymbol::value_on_sphere(Prime p, long norm_exp) const {
    // |xi|^gamma = p^{gamma * norm_exp}
    if (gamma.imag() == 0.0)
        return {std::pow(static_cast<double>(p), gamma.real() * static_cast<double>(norm_exp)), 0.0};
    return std::exp(gamma * (static_cast<double>(norm_exp) * std::log(static_cast<double>(p))));
}

Complex TabulatedSymbol::value_at(Prime p, const Rat& xi) const {
    for (const auto& [ball, v] : pieces)
        if (ball.contains(xi)) return v;
    throw SymbolDomainError(p, "tabulated symbol undefined at the requested point");
}

Complex TabulatedSymbol::value_on(const Ball& b) const {
    for (const auto& [ball, v] : pieces) {
        BallRelation rel = ball_relation(b, ball);
        if (rel == BallRelation::Equal || rel == BallRelation::FirstInsideSecond) return v;
    }
    throw SymbolDomainError(b.p, "tabulated symbol undefined on a needed ball");
}

Symbol Symbol::fractional(const std::map<Prime, Complex>& gamma_hat) {
    Symbol s;
    s.m = 2;
    for (const auto& [p, g] : gamma_hat) {
        s.places[p] = PowerNormSymbol{g};
        s.m = std::max(s.m, p);
    }
    // places up to m with no stated exponent act as |.|^0
    for (Prime q : primes_up_to(s.m))
        if (!s.places.count(q)) s.places[q] = PowerNormSymbol{Complex(0, 0)};
    return s;
}

Symbol Symbol::fractional_uniform(Complex gamma, Prime m) {
    Symbol s;
    s.m = m;
    for (Prime q : primes_up_to(m)) s.places[q] = PowerNormSymbol{gamma};
    return s;
}

namespace {

/// Multiply the Fourier transform of one local factor by the place
/// symbol, splitting tabulated balls down to the declared constancy
/// scale first.
LocalFunction multiply_fourier_side(const LocalFunction& fhat, const PlaceSymbol& sym, Prime q) {
    std::vector<CharBallTerm> out;
    for (const auto& t : fhat.terms()) {
        if (std::holds_alternative<PowerNormSymbol>(sym)) {
            if (t.ball.contains_zero())
                throw NotLizorkinError(
                    q, "apply_symbol: Fourier-side mass at 0 (place " + std::to_string(q) + ")");
            // a zero-free canonical ball sits inside a single sphere
            const auto& pn = std::get<PowerNormSymbol>(sym);
            long norm_exp = -valuation(t.ball.center, q);
            CharBallTerm s = t;
            s.amp *= pn.value_on_sphere(q, norm_exp);
            out.push_back(std::move(s));
        } else {
            const auto& tab = std::get<TabulatedSymbol>(sym);
            // refine until the declared constancy scale is reached
            std::vector<CharBallTerm> stack{t};
            while (!stack.empty()) {
                CharBallTerm cur = stack.back();
                stack.pop_back();
                if (cur.ball.radius_exp > -tab.constancy_exp) {
                    for (long d = 0; d < q; ++d) {
                        CharBallTerm c = cur;
                        c.ball = cur.ball.child(d);
                        stack.push_back(c);
                    }
                    continue;
                }
                CharBallTerm s = cur;
                s.amp *= tab.value_on(cur.ball);
                out.push_back(std::move(s));
            }
        }
    }
    return LocalFunction::from_terms(q, std::move(out));
}

}  // namespace

AdelicFunction apply_symbol(const AdelicFunction& f, const Symbol& symbol) {
    if (f.has_real())
        throw std::invalid_argument("apply_symbol: defined on the non-Archimedean part only");
    AdelicFunction result;
    for (const auto& term : f.terms()) {
        if (term.is_zero()) continue;
        std::map<Prime, LocalFunction> locals;
        Prime reach = std::max(symbol.m, term.finiteness());
        for (Prime q : primes_up_to(reach)) {
            LocalFunction ghat = term.local_factor(q).fourier();
            auto it = symbol.places.find(q);
            if (it != symbol.places.end() && q <= symbol.m) {
                ghat = multiply_fourier_side(ghat, it->second, q);
            } else if (q > symbol.m) {
                // implicit unit-ball factor of the symbol beyond m
                ghat = restrict_to_unit_ball(ghat);
            }
            locals.emplace(q, ghat.inverse_fourier());
        }
        result = result + AdelicFunction(AdelicTensor::make(std::nullopt, std::move(locals)));
    }
    return result;
}

AdelicFunction fractional_apply(const AdelicFunction& f,
                                const std::map<Prime, Complex>& gamma_hat) {
    return apply_symbol(f, Symbol::fractional(gamma_hat));
}

EigenResult eigen_check(const Symbol& symbol, const AdelicIndex& idx) {
    if (idx.real) throw std::invalid_argument("eigen_check: index must live on the non-Archimedean part");
    for (Prime q : primes_up_to(symbol.m)) {
        auto it = idx.places.find(q);
        if (it == idx.places.end() || it->second.scaling)
            throw std::invalid_argument(
                "eigen_check: index must carry a wavelet factor at every place up to m");
    }
    if (idx.m() > symbol.m)
        throw std::invalid_argument("eigen_check: index reaches beyond the symbol");

    EigenResult res;
    res.is_eigen = true;
    res.lambda = Complex(1, 0);
    for (const auto& [q, e] : idx.places) {
        // Fourier support of the factor: the ball B_{j}(-k q^{-j-1}),
        // inside the sphere |xi| = q^{j+1}
        Ball support = Ball::make(q, Rat(-e.k) * rat_pow(q, -e.j - 1), e.j);
        const PlaceSymbol& sym = symbol.places.at(q);
        if (std::holds_alternative<PowerNormSymbol>(sym)) {
            res.lambda *= std::get<PowerNormSymbol>(sym).value_on_sphere(q, e.j + 1);
            continue;
        }
        const auto& tab = std::get<TabulatedSymbol>(sym);
        long m_scale = tab.constancy_exp;
        Complex reference = tab.value_at(q, Rat(-e.k) * rat_pow(q, -e.j - 1));
        res.lambda *= reference;
        // enumerate the declared-constancy cosets inside the support ball,
        // sampling one extra representative in each to verify the declaration
        long levels = std::max<long>(0, e.j + m_scale);
        Int count = int_pow(q, static_cast<unsigned long>(levels));
        if (!count.fits_slong_p())
            throw std::invalid_argument("eigen_check: constancy scan too large");
        for (long t = 0; t < count.get_si(); ++t) {
            Rat probe = support.center + Rat(t) * rat_pow(q, -e.j);
            Rat probe2 = probe + rat_pow(q, std::max(m_scale, -e.j));
            Complex v1 = tab.value_at(q, probe);
            Complex v2 = tab.value_at(q, probe2);
            if (std::abs(v1 - reference) > config::amplitude_tolerance() ||
                std::abs(v2 - v1) > config::amplitude_tolerance()) {
                res.is_eigen = false;
            }
        }
    }
    return res;
}

double verify_eigenrelation(const Symbol& symbol, const AdelicIndex& idx) {
    AdelicFunction psi(adelic_wavelet(idx, true));
    EigenResult eig = eigen_check(symbol, idx);
    AdelicFunction applied = apply_symbol(psi, symbol);
    double denom = psi.norm();
    return quadrature_norm(applied - psi.scaled(eig.lambda)) / denom;
}

}  // namespace adelion

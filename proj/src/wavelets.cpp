#include "adelion/wavelets.hpp"

#include <cmath>
#include <stdexcept>

namespace adelion {

namespace {
double p_power_half(Prime p, long j) {
    return std::pow(static_cast<double>(p), 0.5 * static_cast<double>(j));
}
}

LocalFunction kozyrev_generator(Prime p, long k) {
    if (k < 1 || k >= p) throw std::invalid_argument("kozyrev: k must be in 1..p-1");
    CharBallTerm t;
    t.freq = make_rat(Int(k), Int(p));
    t.ball = Ball::unit(p);
    return LocalFunction::from_terms(p, {t});
}

LocalFunction kozyrev(Prime p, long k, long j, const Rat& a) {
    if (!is_shift_value(a, p)) throw std::invalid_argument("kozyrev: shift not in I_p");
    return kozyrev_generator(p, k).translated(a).dilated(-j).scaled(Complex(p_power_half(p, j), 0.0));
}

LocalFunction scaling_shift(Prime p, const Rat& a) {
    if (!is_shift_value(a, p)) throw std::invalid_argument("scaling_shift: shift not in I_p");
    return LocalFunction::indicator(Ball::make(p, a, 0));
}

void validate(const HaarFamilyParams& params, double tol) {
    const size_t n = static_cast<size_t>(params.p - 1);
    if (params.unitary.size() != n) throw std::invalid_argument("family: U must be (p-1)x(p-1)");
    for (const auto& row : params.unitary)
        if (row.size() != n) throw std::invalid_argument("family: U must be (p-1)x(p-1)");
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            Complex acc = 0;
            for (size_t k = 0; k < n; ++k)
                acc += params.unitary[i][k] * std::conj(params.unitary[j][k]);
            Complex want = (i == j) ? Complex(1, 0) : Complex(0, 0);
            if (std::abs(acc - want) > tol)
                throw std::invalid_argument("family: U is not unitary within tolerance");
        }
    }
    Int len = int_pow(params.p, static_cast<unsigned long>(params.s));
    if (!len.fits_slong_p()) throw std::invalid_argument("family: s too large");
    const size_t ps = static_cast<size_t>(len.get_si());
    if (params.sigma.size() != n) throw std::invalid_argument("family: sigma must be (p-1)xp^s");
    for (const auto& row : params.sigma) {
        if (row.size() != ps) throw std::invalid_argument("family: sigma must be (p-1)xp^s");
        for (const auto& v : row)
            if (std::abs(std::abs(v) - 1.0) > tol)
                throw std::invalid_argument("family: sigma entries must be unimodular");
    }
}

Matrix family_coefficients(const HaarFamilyParams& params, long mu) {
    validate(params);
    const Prime p = params.p;
    const long s = params.s;
    if (mu < 1 || mu >= p) throw std::invalid_argument("family: mu must be in 1..p-1");
    const long ps = int_pow(p, static_cast<unsigned long>(s)).get_si();
    const Rat ps_rat = rat_pow(p, s);
    const double scale_s = to_double(rat_pow(p, -s));

    Matrix alpha(static_cast<size_t>(p - 1), std::vector<Complex>(static_cast<size_t>(ps)));
    for (long nu = 1; nu < p; ++nu) {
        for (long k = 0; k < ps; ++k) {
            // common oscillation e^{-2 pi i (( -nu/p + m)/p^s) k}
            Complex acc = 0;
            if (mu == nu) {
                for (long m = 0; m < ps; ++m) {
                    UnitPhase osc(-(Rat(m) - make_rat(Int(nu), Int(p))) / ps_rat * Rat(k));
                    acc += osc.value() * params.sigma[static_cast<size_t>(mu - 1)][static_cast<size_t>(m)];
                }
                acc *= -scale_s * params.unitary[static_cast<size_t>(mu - 1)][static_cast<size_t>(mu - 1)];
            } else {
                UnitPhase top(make_rat(Int(mu - nu), Int(p)));
                const Complex numer = Complex(1, 0) - top.value();
                for (long m = 0; m < ps; ++m) {
                    UnitPhase osc(-(Rat(m) - make_rat(Int(nu), Int(p))) / ps_rat * Rat(k));
                    Complex inner = 0;
                    for (long n = 0; n < ps; ++n) {
                        Rat expo = (make_rat(Int(mu - nu), Int(p)) + Rat(m - n)) / ps_rat;
                        if (expo.get_den() == 1)
                            throw std::logic_error("family: resonant denominator (mu==nu branch misrouted)");
                        Complex denom = Complex(1, 0) - UnitPhase(expo).value();
                        inner += numer / denom;
                    }
                    acc += osc.value() * inner * params.sigma[static_cast<size_t>(nu - 1)][static_cast<size_t>(m)];
                }
                acc *= -scale_s * scale_s * params.unitary[static_cast<size_t>(nu - 1)][static_cast<size_t>(mu - 1)];
            }
            alpha[static_cast<size_t>(nu - 1)][static_cast<size_t>(k)] = acc;
        }
    }
    return alpha;
}

LocalFunction family_wavelet(const HaarFamilyParams& params, long mu) {
    Matrix alpha = family_coefficients(params, mu);
    const Prime p = params.p;
    const long ps = int_pow(p, static_cast<unsigned long>(params.s)).get_si();
    LocalFunction acc = LocalFunction::zero(p);
    for (long nu = 1; nu < p; ++nu) {
        for (long k = 0; k < ps; ++k) {
            Complex c = alpha[static_cast<size_t>(nu - 1)][static_cast<size_t>(k)];
            if (std::abs(c) <= config::amplitude_tolerance()) continue;
            Rat shift = make_rat(Int(k), int_pow(p, static_cast<unsigned long>(params.s)));
            acc = acc + kozyrev_generator(p, nu).translated(shift).scaled(c);
        }
    }
    return acc;
}

LocalFunction dyadic_family_wavelet(long s, const std::vector<Complex>& gamma) {
    const Prime p = 2;
    const long ps = int_pow(2, static_cast<unsigned long>(s)).get_si();
    if (static_cast<long>(gamma.size()) != ps)
        throw std::invalid_argument("dyadic family: need 2^s gamma values");
    for (const auto& g : gamma)
        if (std::abs(std::abs(g) - 1.0) > 1e-10)
            throw std::invalid_argument("dyadic family: gamma must be unimodular");
    const double scale_s = to_double(rat_pow(2, -s));
    LocalFunction acc = LocalFunction::zero(p);
    for (long k = 0; k < ps; ++k) {
        Complex c = 0;
        for (long r = 0; r < ps; ++r) {
            // e^{-i pi (2r-1) k / 2^s} = e^{2 pi i (-(2r-1) k / 2^{s+1})}
            UnitPhase ph(make_rat(Int(-(2 * r - 1) * k), int_pow(2, static_cast<unsigned long>(s + 1))));
            c += gamma[static_cast<size_t>(r)] * ph.value();
        }
        c *= scale_s;
        if (std::abs(c) <= config::amplitude_tolerance()) continue;
        Rat shift = make_rat(Int(k), int_pow(2, static_cast<unsigned long>(s)));
        acc = acc + kozyrev_generator(2, 1).translated(shift).scaled(c);
    }
    return acc;
}

std::vector<LocalFunction> modified_basis(Prime p, long j_max, long depth) {
    if (j_max < 0) throw std::invalid_argument("modified_basis: j_max < 0");
    std::vector<LocalFunction> out;
    for (const Rat& a : enumerate_shifts(p, depth)) out.push_back(scaling_shift(p, a));
    for (long k = 1; k < p; ++k)
        for (long j = 0; j <= j_max; ++j)
            for (const Rat& a : enumerate_shifts(p, depth)) out.push_back(kozyrev(p, k, j, a));
    return out;
}

LocalFunction restrict_to_unit_ball(const LocalFunction& f) {
    return f.multiplied(LocalFunction::unit_indicator(f.prime()));
}

Matrix gram_matrix(const std::vector<LocalFunction>& fns) {
    for (size_t i = 1; i < fns.size(); ++i)
        if (fns[i].prime() != fns[0].prime())
            throw std::invalid_argument("gram_matrix: mixed places");
    return gram_matrix(fns, [](const LocalFunction& a, const LocalFunction& b) {
        return inner_product(a, b);
    });
}

double max_identity_deviation(const Matrix& g) {
    double dev = 0;
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < g[i].size(); ++j) {
            Complex want = (i == j) ? Complex(1, 0) : Complex(0, 0);
            dev = std::max(dev, std::abs(g[i][j] - want));
        }
    return dev;
}

Matrix random_unitary(size_t n, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(n, std::vector<Complex>(n));
    for (auto& row : m)
        for (auto& v : row) v = Complex(gauss(rng), gauss(rng));
    // Gram-Schmidt rows
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < i; ++k) {
            Complex proj = 0;
            for (size_t j = 0; j < n; ++j) proj += m[i][j] * std::conj(m[k][j]);
            for (size_t j = 0; j < n; ++j) m[i][j] -= proj * m[k][j];
        }
        double nrm = 0;
        for (size_t j = 0; j < n; ++j) nrm += std::norm(m[i][j]);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) throw std::runtime_error("random_unitary: degenerate sample");
        for (size_t j = 0; j < n; ++j) m[i][j] /= nrm;
    }
    return m;
}

Matrix random_unimodular(size_t rows, size_t cols, std::mt19937& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    Matrix m(rows, std::vector<Complex>(cols));
    for (auto& row : m)
        for (auto& v : row) v = std::polar(1.0, angle(rng));
    return m;
}

}  // namespace adelion

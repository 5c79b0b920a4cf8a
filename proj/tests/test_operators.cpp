#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "adelion/operators.hpp"
#include "test_util.hpp"

using namespace adelion;
using adelion::testutil::q;

namespace {

double dist(Complex a, Complex b) { return std::abs(a - b); }

AdelicIndex wavelet_index(std::initializer_list<std::tuple<Prime, long, long, Rat>> entries) {
    AdelicIndex idx;
    for (const auto& [p, k, j, a] : entries) idx.places[p] = PlaceIndex::wavelet(k, j, a);
    return idx;
}

/// Random Lizorkin tensor with wavelet factors at every place up to m.
AdelicFunction random_lizorkin(std::mt19937& rng, Prime m) {
    std::uniform_int_distribution<long> jd(0, 2);
    AdelicIndex idx;
    for (Prime p : {2L, 3L, 5L}) {
        if (p > m) break;
        std::uniform_int_distribution<long> kd(1, p - 1);
        long j = jd(rng);
        auto shifts = enumerate_shifts(p, 1);
        std::uniform_int_distribution<size_t> ad(0, shifts.size() - 1);
        idx.places[p] = PlaceIndex::wavelet(kd(rng), j, shifts[ad(rng)]);
    }
    std::uniform_real_distribution<double> cd(-2.0, 2.0);
    return AdelicFunction(adelic_wavelet(idx, true)).scaled(Complex(cd(rng), cd(rng)));
}

/// The engineered symbol that is not constant on the Fourier support of
/// psi_{1;1,.} at p = 2: the two finer half-balls carry different values.
Symbol split_symbol() {
    Ball support = Ball::make(2, q(-1, 4), 1);
    TabulatedSymbol tab;
    tab.constancy_exp = 0;
    tab.pieces.emplace_back(Ball::make(2, support.center, 0), Complex(1, 0));
    tab.pieces.emplace_back(Ball::make(2, support.center + q(1, 2), 0), Complex(2, 0));
    Symbol s;
    s.m = 2;
    s.places[2] = tab;
    return s;
}

}  // namespace

TEST_SUITE("apply_symbol") {
    TEST_CASE("identity symbol leaves functions unchanged") {
        std::mt19937 rng(501);
        for (int i = 0; i < 20; ++i) {
            AdelicFunction f = random_lizorkin(rng, 3);
            AdelicFunction g = apply_symbol(f, Symbol::fractional_uniform(Complex(0, 0), 3));
            CHECK(quadrature_norm(f - g) < 1e-12);
        }
    }

    TEST_CASE("fractional operator on a single factor: eigenvalue 2") {
        AdelicFunction f(adelic_wavelet(wavelet_index({{2, 1, 0, Rat(0)}}), true));
        AdelicFunction g = fractional_apply(f, {{2, Complex(1, 0)}});
        CHECK(quadrature_norm(g - f.scaled(Complex(2, 0))) < 1e-12);
    }

    TEST_CASE("non-Lizorkin input raises with the offending place") {
        AdelicFunction phi(AdelicTensor::one(false));
        CHECK_THROWS_AS(apply_symbol(phi, Symbol::fractional_uniform(Complex(1, 0), 2)),
                        NotLizorkinError);
        // wavelet at 3, implicit omega at 2: symbol at 2 hits mass at zero
        AdelicFunction gap(adelic_wavelet(wavelet_index({{3, 1, 0, Rat(0)}}), true));
        try {
            apply_symbol(gap, Symbol::fractional_uniform(Complex(1, 0), 3));
            CHECK(false);
        } catch (const NotLizorkinError& e) {
            CHECK(e.place() == 2);
        }
    }

    TEST_CASE("tabulated symbol undefined on a needed ball") {
        TabulatedSymbol tab;
        tab.constancy_exp = 0;
        tab.pieces.emplace_back(Ball::make(2, Rat(1), -1), Complex(1, 0));  // misses the support
        Symbol s;
        s.m = 2;
        s.places[2] = tab;
        AdelicFunction f(adelic_wavelet(wavelet_index({{2, 1, 0, Rat(0)}}), true));
        CHECK_THROWS_AS(apply_symbol(f, s), SymbolDomainError);
    }

    TEST_CASE("outputs stay Lizorkin") {
        std::mt19937 rng(502);
        for (int i = 0; i < 20; ++i) {
            AdelicFunction f = random_lizorkin(rng, 3);
            AdelicFunction g = fractional_apply(f, {{2, Complex(0.5, 0)}, {3, Complex(-1, 0)}});
            CHECK(lizorkin_check(g, 0).pass);
        }
    }
}

TEST_SUITE("group law") {
    TEST_CASE("composition adds exponents; negation inverts") {
        std::mt19937 rng(503);
        std::uniform_real_distribution<double> gd(-1.5, 1.5);
        for (int i = 0; i < 25; ++i) {
            AdelicFunction f = random_lizorkin(rng, 3);
            std::map<Prime, Complex> gamma{{2, Complex(gd(rng), 0)}, {3, Complex(gd(rng), gd(rng))}};
            std::map<Prime, Complex> beta{{2, Complex(gd(rng), gd(rng))}, {3, Complex(gd(rng), 0)}};
            std::map<Prime, Complex> sum, neg;
            for (auto& [p, g] : gamma) {
                sum[p] = g + beta[p];
                neg[p] = -g;
            }
            AdelicFunction lhs = fractional_apply(fractional_apply(f, gamma), beta);
            AdelicFunction rhs = fractional_apply(f, sum);
            double scale = std::max(1.0, rhs.norm());
            CHECK(quadrature_norm(lhs - rhs) < 1e-12 * scale);
            AdelicFunction back = fractional_apply(fractional_apply(f, gamma), neg);
            CHECK(quadrature_norm(back - f) < 1e-12 * std::max(1.0, f.norm()));
        }
    }
}

TEST_SUITE("eigen criterion") {
    TEST_CASE("power norm symbols: always eigen with the product eigenvalue") {
        std::mt19937 rng(504);
        std::vector<Complex> exponents{{-1, 0}, {0.5, 0}, {1, 0}, {2, 0}, {1, 1}};
        std::uniform_int_distribution<size_t> ed(0, exponents.size() - 1);
        std::uniform_int_distribution<long> jd(0, 2);
        for (int i = 0; i < 50; ++i) {
            Prime m = (i % 2 == 0) ? 2 : 3;
            std::map<Prime, Complex> gamma;
            AdelicIndex idx;
            Complex want(1, 0);
            for (Prime p : {2L, 3L}) {
                if (p > m) break;
                std::uniform_int_distribution<long> kd(1, p - 1);
                long j = jd(rng);
                auto shifts = enumerate_shifts(p, 1);
                std::uniform_int_distribution<size_t> ad(0, shifts.size() - 1);
                idx.places[p] = PlaceIndex::wavelet(kd(rng), j, shifts[ad(rng)]);
                Complex g = exponents[ed(rng)];
                gamma[p] = g;
                want *= std::exp(g * (static_cast<double>(j + 1) * std::log(double(p))));
            }
            Symbol s = Symbol::fractional(gamma);
            EigenResult res = eigen_check(s, idx);
            CHECK(res.is_eigen);
            CHECK(dist(res.lambda, want) < 1e-12 * std::abs(want));
            CHECK(verify_eigenrelation(s, idx) < 1e-12);
        }
    }

    TEST_CASE("uniform exponent gives (prod q^{j_q+1})^gamma") {
        AdelicIndex idx = wavelet_index({{2, 1, 1, Rat(0)}, {3, 2, 0, q(1, 3)}});
        Complex g(0.5, 0);
        EigenResult res = eigen_check(Symbol::fractional_uniform(g, 3), idx);
        CHECK(res.is_eigen);
        double base = std::pow(2.0, 2) * std::pow(3.0, 1);  // prod q^{j+1}
        CHECK(dist(res.lambda, Complex(std::sqrt(base), 0)) < 1e-12 * std::sqrt(base));
    }

    TEST_CASE("hypothesis violations are rejected") {
        Symbol s = Symbol::fractional_uniform(Complex(1, 0), 3);
        // missing wavelet factor at 3
        CHECK_THROWS_AS(eigen_check(s, wavelet_index({{2, 1, 0, Rat(0)}})), std::invalid_argument);
        // scaling factor at a covered place
        AdelicIndex scal;
        scal.places[2] = PlaceIndex::wavelet(1, 0, Rat(0));
        scal.places[3] = PlaceIndex::scaling_shift(q(1, 3));
        CHECK_THROWS_AS(eigen_check(s, scal), std::invalid_argument);
        // index reaching beyond the symbol
        Symbol small = Symbol::fractional_uniform(Complex(1, 0), 2);
        CHECK_THROWS_AS(
            eigen_check(small, wavelet_index({{2, 1, 0, Rat(0)}, {3, 1, 0, Rat(0)}})),
            std::invalid_argument);
    }

    TEST_CASE("engineered tabulated counterexample") {
        Symbol s = split_symbol();
        AdelicIndex idx = wavelet_index({{2, 1, 1, Rat(0)}});
        EigenResult res = eigen_check(s, idx);
        CHECK_FALSE(res.is_eigen);
        double residual = verify_eigenrelation(s, idx);
        CHECK(residual > 0.1);
    }

    TEST_CASE("tabulated symbol constant on the support is eigen") {
        Ball support = Ball::make(2, q(-1, 4), 1);
        TabulatedSymbol tab;
        tab.constancy_exp = -1;
        tab.pieces.emplace_back(support, Complex(0.5, 0.25));
        Symbol s;
        s.m = 2;
        s.places[2] = tab;
        AdelicIndex idx = wavelet_index({{2, 1, 1, Rat(0)}});
        EigenResult res = eigen_check(s, idx);
        CHECK(res.is_eigen);
        CHECK(dist(res.lambda, Complex(0.5, 0.25)) == 0);
        CHECK(verify_eigenrelation(s, idx) < 1e-12);
    }

    TEST_CASE("criterion agrees with the end-to-end residual, randomized") {
        std::mt19937 rng(505);
        std::uniform_int_distribution<long> jd(0, 2);
        std::uniform_int_distribution<int> coin(0, 1);
        std::uniform_real_distribution<double> vd(0.5, 2.0);
        int eigen_count = 0;
        for (int i = 0; i < 200; ++i) {
            long j = jd(rng);
            AdelicIndex idx = wavelet_index({{2, 1, j, Rat(0)}});
            Symbol s;
            s.m = 2;
            if (coin(rng)) {
                s.places[2] = PowerNormSymbol{Complex(vd(rng), 0)};
            } else {
                Ball support = Ball::make(2, Rat(-1) * rat_pow(2, -j - 1), j);
                TabulatedSymbol tab;
                tab.constancy_exp = 1 - j;  // constant exactly on the children
                bool constant = coin(rng) != 0;
                Complex v1(vd(rng), 0);
                Complex v2 = constant ? v1 : Complex(vd(rng) + 3.0, 0);
                tab.pieces.emplace_back(Ball::make(2, support.center, j - 1), v1);
                tab.pieces.emplace_back(
                    Ball::make(2, support.center + rat_pow(2, -j), j - 1), v2);
                s.places[2] = tab;
            }
            EigenResult res = eigen_check(s, idx);
            double residual = verify_eigenrelation(s, idx);
            if (res.is_eigen) {
                ++eigen_count;
                CHECK(residual < 1e-10);
            } else {
                CHECK(residual > 1e-3);
            }
        }
        CHECK(eigen_count > 50);
        CHECK(eigen_count < 200);
    }
}

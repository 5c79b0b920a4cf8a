#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "adelion/padic.hpp"

using namespace adelion;

namespace {

Rat q(long num, long den) { return make_rat(Int(num), Int(den)); }

// random small rational, denominator a mix of p-powers and coprime parts
Rat random_rat(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-60, 60);
    std::uniform_int_distribution<long> den(1, 60);
    return q(num(rng), den(rng));
}

}  // namespace

TEST_SUITE("valuation and norm") {
    TEST_CASE("valuation examples") {
        CHECK(valuation(Rat(0), 5) == kValuationInfinity);
        CHECK(valuation(Rat(12), 2) == 2);   // 12 = 2^2 * 3
        CHECK(valuation(q(3, 8), 2) == -3);  // 3/8 = 2^-3 * 3
        CHECK(valuation(q(9, 2), 3) == 2);
        CHECK(valuation(Rat(-12), 2) == 2);
    }

    TEST_CASE("norm examples") {
        CHECK(padic_norm(Rat(0), 3) == 0);
        CHECK(padic_norm(Rat(12), 2) == q(1, 4));
        CHECK(padic_norm(Rat(1), 2) == 1);
        CHECK(padic_norm(Rat(1), 7) == 1);
        CHECK(padic_norm(q(3, 8), 2) == 8);
    }

    TEST_CASE("ultrametric inequality, equality when norms differ") {
        std::mt19937 rng(7001);
        for (int i = 0; i < 2000; ++i) {
            for (Prime p : {2L, 3L, 5L, 7L}) {
                Rat x = random_rat(rng), y = random_rat(rng);
                Rat nx = padic_norm(x, p), ny = padic_norm(y, p);
                Rat nsum = padic_norm(x + y, p);
                Rat bound = std::max(nx, ny, [](const Rat& a, const Rat& b) { return a < b; });
                CHECK(nsum <= bound);
                if (nx != ny) CHECK(nsum == bound);
            }
        }
    }
}

TEST_SUITE("fractional part and digits") {
    TEST_CASE("frac_part examples") {
        CHECK(frac_part(Rat(7), 2) == 0);
        CHECK(frac_part(q(5, 4), 2) == q(1, 4));  // 5/4 = 1/4 + 1
        CHECK(frac_part(q(3, 2), 2) == q(1, 2));  // 3/2 = 1/2 + 1
        CHECK(frac_part(q(1, 3), 3) == q(1, 3));
        CHECK(frac_part(q(-1, 3), 3) == q(2, 3));  // -1/3 = 2/3 - 1
        CHECK(frac_part(q(1, 6), 2) == q(1, 2));   // 1/6 = (1/2)*(1/3), 3^{-1} = 1 mod 2
    }

    TEST_CASE("frac_part idempotent; remainder is integral") {
        std::mt19937 rng(7002);
        for (int i = 0; i < 2000; ++i) {
            for (Prime p : {2L, 3L, 5L}) {
                Rat x = random_rat(rng);
                Rat f = frac_part(x, p);
                CHECK(frac_part(f, p) == f);
                CHECK(f >= 0);
                CHECK(f < 1);
                Rat rest = x - f;
                if (rest != 0) CHECK(valuation(rest, p) >= 0);
            }
        }
    }

    TEST_CASE("digit expansion by exact long division") {
        // 1/3 = 1 + 2 + 8 + ... in Q_2; (1+2+8)*3 = 33 = 1 mod 16
        auto d = digits(q(1, 3), 2, 0, 3);
        CHECK(d == std::vector<int>{1, 1, 0, 1});
        CHECK(digits(Rat(0), 5, -2, 2) == std::vector<int>{0, 0, 0, 0, 0});
        auto e = digits(Rat(4), 2, 0, 3);
        CHECK(e == std::vector<int>{0, 0, 1, 0});
    }

    TEST_CASE("digits reconstruct the fractional part") {
        std::mt19937 rng(7003);
        for (int i = 0; i < 500; ++i) {
            for (Prime p : {2L, 3L, 5L}) {
                Rat x = random_rat(rng);
                if (x == 0) continue;
                long v = valuation(x, p);
                Rat f = frac_part(x, p);
                Rat acc(0);
                if (v < 0) {
                    auto d = digits(x, p, v, -1);
                    for (size_t k = 0; k < d.size(); ++k)
                        acc += Rat(d[k]) * rat_pow(p, v + static_cast<long>(k));
                }
                CHECK(acc == f);
            }
        }
    }

    TEST_CASE("partial digit sums: trunc_below") {
        CHECK(trunc_below(q(1, 3), 2, 0) == 0);
        CHECK(trunc_below(q(1, 3), 2, 3) == 3);  // digits 1,1 at positions 0,1
        CHECK(trunc_below(q(-1, 2), 2, 0) == q(1, 2));
    }
}

TEST_SUITE("additive character") {
    TEST_CASE("chi examples") {
        CHECK(chi(Rat(5), 3).is_one());
        CHECK(chi(q(1, 2), 2).turns() == q(1, 2));
        CHECK(chi(q(1, 3), 3).turns() == q(1, 3));
        CHECK(chi(q(1, 2), 2).value() == Complex(-1.0, 0.0));
    }

    TEST_CASE("character additivity, exactly") {
        std::mt19937 rng(7004);
        for (int i = 0; i < 2000; ++i) {
            for (Prime p : {2L, 3L, 7L}) {
                Rat x = random_rat(rng), y = random_rat(rng);
                CHECK(chi(x + y, p) == chi(x, p) * chi(y, p));
            }
        }
    }
}

TEST_SUITE("shift sets") {
    TEST_CASE("enumerate_shifts examples") {
        auto s22 = enumerate_shifts(2, 2);
        REQUIRE(s22.size() == 4);
        CHECK(s22[0] == 0);
        CHECK(s22[1] == q(1, 2));
        CHECK(s22[2] == q(1, 4));
        CHECK(s22[3] == q(3, 4));

        CHECK(enumerate_shifts(7, 0) == std::vector<Rat>{Rat(0)});

        auto s31 = enumerate_shifts(3, 1);
        REQUIRE(s31.size() == 3);
        CHECK(s31[1] == q(1, 3));
        CHECK(s31[2] == q(2, 3));
    }

    TEST_CASE("members satisfy {a}_p = a") {
        for (Prime p : {2L, 3L, 5L})
            for (const Rat& a : enumerate_shifts(p, 3)) CHECK(is_shift_value(a, p));
        CHECK_FALSE(is_shift_value(q(1, 3), 2));
        CHECK_FALSE(is_shift_value(Rat(1), 2));
    }

    TEST_CASE("restricted shifts I_p^j") {
        auto r20 = enumerate_restricted_shifts(2, 0);
        CHECK(r20 == std::vector<Rat>{Rat(0)});
        auto r21 = enumerate_restricted_shifts(2, 1);
        REQUIRE(r21.size() == 2);
        CHECK(r21[1] == q(1, 2));
        for (const Rat& a : enumerate_restricted_shifts(3, 2)) {
            Rat scaled = a * 9;
            CHECK(scaled.get_den() == 1);  // 3^2 a integral
        }
    }
}

TEST_SUITE("balls") {
    TEST_CASE("canonical centers") {
        CHECK(Ball::make(2, Rat(1), 0) == Ball::unit(2));   // |1|_2 = 1
        CHECK(Ball::make(3, Rat(3), 0) == Ball::unit(3));   // |3|_3 < 1
        CHECK(Ball::make(2, q(1, 2), -1).center == q(1, 2));
        CHECK(Ball::make(2, q(5, 2), -1).center == q(1, 2));  // 5/2 = 1/2 + 2: digit 2 cut at -(-1)=1? kept: 5/2-1/2=2, v=1 >= 1
    }

    TEST_CASE("relation examples") {
        CHECK(ball_relation(Ball::unit(2), Ball::make(2, Rat(0), -1)) ==
              BallRelation::SecondInsideFirst);
        CHECK(ball_relation(Ball::make(2, Rat(0), -1), Ball::make(2, Rat(1), -1)) ==
              BallRelation::Disjoint);
        CHECK(ball_relation(Ball::unit(5), Ball::make(5, Rat(5), 0)) == BallRelation::Equal);
    }

    TEST_CASE("trichotomy consistent with membership, 1e4 random pairs") {
        std::mt19937 rng(7005);
        std::uniform_int_distribution<long> gam(-3, 3);
        for (int i = 0; i < 10000; ++i) {
            Prime p = (i % 2 == 0) ? 2 : 3;
            Ball a = Ball::make(p, random_rat(rng), gam(rng));
            Ball b = Ball::make(p, random_rat(rng), gam(rng));
            BallRelation rel = ball_relation(a, b);
            // membership oracle on sampled points
            for (int s = 0; s < 20; ++s) {
                Rat x = random_rat(rng);
                bool in_a = a.contains(x), in_b = b.contains(x);
                switch (rel) {
                    case BallRelation::Disjoint: CHECK_FALSE((in_a && in_b)); break;
                    case BallRelation::Equal: CHECK(in_a == in_b); break;
                    case BallRelation::FirstInsideSecond:
                        if (in_a) CHECK(in_b);
                        break;
                    case BallRelation::SecondInsideFirst:
                        if (in_b) CHECK(in_a);
                        break;
                }
            }
        }
    }

    TEST_CASE("children partition the parent") {
        Ball b = Ball::make(3, q(1, 3), 1);
        std::vector<Ball> kids;
        for (long d = 0; d < 3; ++d) kids.push_back(b.child(d));
        for (size_t i = 0; i < kids.size(); ++i) {
            CHECK(ball_relation(kids[i], b) == BallRelation::FirstInsideSecond);
            for (size_t j = i + 1; j < kids.size(); ++j)
                CHECK(ball_relation(kids[i], kids[j]) == BallRelation::Disjoint);
        }
    }
}

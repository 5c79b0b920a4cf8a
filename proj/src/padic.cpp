#include "adelion/padic.hpp"

#include <stdexcept>

namespace adelion {

namespace config {
namespace {
double g_amplitude_tol = 1e-12;
}
double amplitude_tolerance() { return g_amplitude_tol; }
void set_amplitude_tolerance(double tol) { g_amplitude_tol = tol; }
}  // namespace config

namespace {

void check_prime(Prime p) {
    if (p < 2) throw std::invalid_argument("prime must be >= 2");
}

/// Largest e with p^e | n (n != 0), removing the factor from n.
long remove_factor(Int& n, Prime p) {
    Int pz(p);
    return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

}  // namespace

long valuation(const Rat& x, Prime p) {
    check_prime(p);
    if (x == 0) return kValuationInfinity;
    Int num = x.get_num();
    Int den = x.get_den();
    long vn = remove_factor(num, p);
    if (vn > 0) return vn;  // reduced fraction: p cannot also divide den
    long vd = remove_factor(den, p);
    return -vd;
}

Rat padic_norm(const Rat& x, Prime p) {
    if (x == 0) return Rat(0);
    return rat_pow(p, -valuation(x, p));
}

Rat frac_part(const Rat& x, Prime p) {
    check_prime(p);
    if (x == 0) return Rat(0);
    Int den = x.get_den();
    long k = remove_factor(den, p);  // den = p^k * den', p coprime to den'
    if (k == 0) return Rat(0);
    Int pk = int_pow(p, static_cast<unsigned long>(k));
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pk.get_mpz_t()) == 0)
        throw std::logic_error("frac_part: no inverse (den not coprime to p)");
    Int a;
    mpz_mul(a.get_mpz_t(), x.get_num().get_mpz_t(), inv.get_mpz_t());
    mpz_mod(a.get_mpz_t(), a.get_mpz_t(), pk.get_mpz_t());
    return make_rat(a, pk);
}

std::vector<int> digits(const Rat& x, Prime p, long k_lo, long k_hi) {
    check_prime(p);
    if (k_lo > k_hi) throw std::invalid_argument("digits: k_lo > k_hi");
    std::vector<int> out;
    out.reserve(static_cast<size_t>(k_hi - k_lo + 1));
    if (x == 0) {
        out.assign(static_cast<size_t>(k_hi - k_lo + 1), 0);
        return out;
    }
    long v = valuation(x, p);
    long start = std::min(v, k_lo);
    Rat y = x * rat_pow(p, -start);  // valuation(y) >= 0: den coprime to p
    Int pz(p);
    for (long k = start; k <= k_hi; ++k) {
        // digit = num * den^{-1} mod p
        Int inv;
        mpz_invert(inv.get_mpz_t(), y.get_den().get_mpz_t(), pz.get_mpz_t());
        Int d;
        mpz_mul(d.get_mpz_t(), y.get_num().get_mpz_t(), inv.get_mpz_t());
        mpz_mod(d.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t());
        int digit = static_cast<int>(d.get_si());
        if (k >= k_lo) out.push_back(digit);
        y = (y - digit) / p;
    }
    return out;
}

Rat trunc_below(const Rat& x, Prime p, long m) {
    return frac_part(x * rat_pow(p, -m), p) * rat_pow(p, m);
}

bool is_shift_value(const Rat& a, Prime p) { return frac_part(a, p) == a; }

std::vector<Rat> enumerate_shifts(Prime p, long depth) {
    check_prime(p);
    if (depth < 0) throw std::invalid_argument("enumerate_shifts: depth < 0");
    Int count = int_pow(p, static_cast<unsigned long>(depth));
    if (!count.fits_slong_p()) throw std::invalid_argument("enumerate_shifts: depth too large");
    long n = count.get_si();
    std::vector<Rat> out;
    out.reserve(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) {
        // base-p digits of i, reversed into negative positions:
        // digit at p^k goes to position -(k+1)
        Rat a(0);
        long rest = i;
        long k = 0;
        while (rest != 0) {
            long d = rest % p;
            if (d != 0) a += Rat(d) * rat_pow(p, -(k + 1));
            rest /= p;
            ++k;
        }
        out.push_back(a);
    }
    return out;
}

Ball Ball::make(Prime p, const Rat& center, long radius_exp) {
    check_prime(p);
    return Ball{p, trunc_below(center, p, -radius_exp), radius_exp};
}

bool Ball::contains(const Rat& x) const {
    Rat d = x - center;
    if (d == 0) return true;
    return valuation(d, p) >= -radius_exp;
}

Ball Ball::child(long d) const {
    if (d < 0 || d >= p) throw std::invalid_argument("Ball::child: digit out of range");
    return Ball{p, center + Rat(d) * rat_pow(p, -radius_exp), radius_exp - 1};
}

BallRelation ball_relation(const Ball& a, const Ball& b) {
    if (a.p != b.p) throw std::invalid_argument("ball_relation: mixed primes");
    if (a.radius_exp == b.radius_exp)
        return a.center == b.center ? BallRelation::Equal : BallRelation::Disjoint;
    if (a.radius_exp > b.radius_exp)
        return a.contains(b.center) ? BallRelation::SecondInsideFirst : BallRelation::Disjoint;
    return b.contains(a.center) ? BallRelation::FirstInsideSecond : BallRelation::Disjoint;
}

int compare(const Rat& a, const Rat& b) {
    return mpq_cmp(a.get_mpq_t(), b.get_mpq_t());
}

}  // namespace adelion

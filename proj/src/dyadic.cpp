#include "adelion/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adelion {

namespace {
double two_pow(long e) { return std::ldexp(1.0, static_cast<int>(e)); }
}

DyadicStep DyadicStep::from_pieces(long level, std::vector<Piece> pieces) {
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.offset < b.offset; });
    std::vector<Piece> merged;
    for (const auto& pc : pieces) {
        if (!merged.empty() && merged.back().offset == pc.offset)
            merged.back().amp += pc.amp;
        else
            merged.push_back(pc);
    }
    std::vector<Piece> kept;
    for (const auto& pc : merged)
        if (std::abs(pc.amp) > config::amplitude_tolerance()) kept.push_back(pc);

    // Reduce the level while every piece pairs with its sibling at the
    // same value (exact float equality keeps refinement identities clean).
    bool reduced = true;
    while (reduced && !kept.empty()) {
        reduced = false;
        bool pairable = kept.size() % 2 == 0;
        for (size_t i = 0; pairable && i < kept.size(); i += 2) {
            pairable = kept[i].offset % 2 == 0 && kept[i + 1].offset == kept[i].offset + 1 &&
                       kept[i].amp == kept[i + 1].amp;
        }
        if (pairable) {
            std::vector<Piece> up;
            for (size_t i = 0; i < kept.size(); i += 2)
                up.push_back({kept[i].offset / 2, kept[i].amp});
            kept.swap(up);
            --level;
            reduced = true;
        }
    }

    DyadicStep f;
    f.level_ = kept.empty() ? 0 : level;
    f.pieces_ = std::move(kept);
    return f;
}

DyadicStep DyadicStep::at_level(long level) const {
    if (level < level_) throw std::logic_error("at_level: cannot coarsen");
    if (level == level_) return *this;
    long shift = level - level_;
    if (shift > 62) throw std::invalid_argument("at_level: refinement too deep");
    std::vector<Piece> out;
    out.reserve(pieces_.size() << shift);
    for (const auto& pc : pieces_) {
        long long base = pc.offset << shift;
        for (long long k = 0; k < (1LL << shift); ++k) out.push_back({base + k, pc.amp});
    }
    DyadicStep f;
    f.level_ = level;
    f.pieces_ = std::move(out);
    return f;
}

DyadicStep DyadicStep::piece(long level, long long n, Complex amp) {
    return from_pieces(level, {{n, amp}});
}

DyadicStep DyadicStep::haar_wavelet(long j, long long n) {
    // psi^H at level 1: +1 on [0,1/2), -1 on [1/2,1); then t -> 2^j t - n.
    double a = std::sqrt(two_pow(j));
    std::vector<Piece> ps = {{2 * n, Complex(a, 0.0)}, {2 * n + 1, Complex(-a, 0.0)}};
    return from_pieces(j + 1, std::move(ps));
}

DyadicStep DyadicStep::translated(long long n) const { return translated_dyadic(0, n); }

DyadicStep DyadicStep::translated_dyadic(long j, long long n) const {
    if (is_zero()) return *this;
    DyadicStep f = at_level(std::max(level_, j));
    long long step = n * (1LL << (f.level_ - j));
    for (auto& pc : f.pieces_) pc.offset += step;
    return f;
}

DyadicStep DyadicStep::dilated(long j) const {
    if (is_zero()) return *this;
    DyadicStep f = *this;
    f.level_ += j;
    return from_pieces(f.level_, std::move(f.pieces_));
}

DyadicStep DyadicStep::scaled(const Complex& c) const {
    DyadicStep f = *this;
    for (auto& pc : f.pieces_) pc.amp *= c;
    return from_pieces(f.level_, std::move(f.pieces_));
}

DyadicStep DyadicStep::conjugated() const {
    DyadicStep f = *this;
    for (auto& pc : f.pieces_) pc.amp = std::conj(pc.amp);
    return f;
}

DyadicStep DyadicStep::operator+(const DyadicStep& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    long lvl = std::max(level_, o.level_);
    DyadicStep a = at_level(lvl), b = o.at_level(lvl);
    std::vector<Piece> ps = a.pieces_;
    ps.insert(ps.end(), b.pieces_.begin(), b.pieces_.end());
    return from_pieces(lvl, std::move(ps));
}

DyadicStep DyadicStep::operator-(const DyadicStep& o) const {
    return *this + o.scaled(Complex(-1.0, 0.0));
}

DyadicStep DyadicStep::multiplied(const DyadicStep& o) const {
    if (is_zero() || o.is_zero()) return zero();
    long lvl = std::max(level_, o.level_);
    DyadicStep a = at_level(lvl), b = o.at_level(lvl);
    std::vector<Piece> ps;
    size_t i = 0, j = 0;
    while (i < a.pieces_.size() && j < b.pieces_.size()) {
        if (a.pieces_[i].offset < b.pieces_[j].offset)
            ++i;
        else if (b.pieces_[j].offset < a.pieces_[i].offset)
            ++j;
        else {
            ps.push_back({a.pieces_[i].offset, a.pieces_[i].amp * b.pieces_[j].amp});
            ++i;
            ++j;
        }
    }
    return from_pieces(lvl, std::move(ps));
}

Complex DyadicStep::integral() const {
    Complex acc = 0;
    double w = two_pow(-level_);
    for (const auto& pc : pieces_) acc += pc.amp * w;
    return acc;
}

Complex DyadicStep::moment(unsigned s) const {
    // integral over [n 2^{-L}, (n+1) 2^{-L}) of t^s dt, exactly in rationals
    Complex acc = 0;
    for (const auto& pc : pieces_) {
        Rat lo = Rat(static_cast<long>(pc.offset)) * rat_pow(2, -level_);
        Rat hi = Rat(static_cast<long>(pc.offset) + 1) * rat_pow(2, -level_);
        Rat hi_pow(1), lo_pow(1);
        for (unsigned k = 0; k <= s; ++k) {
            hi_pow *= hi;
            lo_pow *= lo;
        }
        Rat exact = (hi_pow - lo_pow) / Rat(s + 1);
        acc += pc.amp * to_double(exact);
    }
    return acc;
}

Complex DyadicStep::evaluate(const Rat& t) const {
    Rat scaled = t * rat_pow(2, level_);
    Int n;
    mpz_fdiv_q(n.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    if (!n.fits_slong_p()) return 0;
    long long off = n.get_si();
    for (const auto& pc : pieces_)
        if (pc.offset == off) return pc.amp;
    return 0;
}

double DyadicStep::norm() const {
    return std::sqrt(std::max(0.0, inner_product(*this, *this).real()));
}

Complex inner_product(const DyadicStep& f, const DyadicStep& g) {
    if (f.is_zero() || g.is_zero()) return 0;
    long lvl = std::max(f.level_, g.level_);
    DyadicStep a = f.at_level(lvl), b = g.at_level(lvl);
    Complex acc = 0;
    double w = two_pow(-lvl);
    size_t i = 0, j = 0;
    while (i < a.pieces_.size() && j < b.pieces_.size()) {
        if (a.pieces_[i].offset < b.pieces_[j].offset)
            ++i;
        else if (b.pieces_[j].offset < a.pieces_[i].offset)
            ++j;
        else {
            acc += a.pieces_[i].amp * std::conj(b.pieces_[j].amp) * w;
            ++i;
            ++j;
        }
    }
    return acc;
}

bool approx_equal(const DyadicStep& f, const DyadicStep& g, double tol) {
    if (f.is_zero() && g.is_zero()) return true;
    long lvl = std::max(f.level(), g.level());
    DyadicStep a = f.at_level(lvl), b = g.at_level(lvl);
    size_t i = 0, j = 0;
    while (i < a.pieces().size() || j < b.pieces().size()) {
        const bool ai = i < a.pieces().size();
        const bool bj = j < b.pieces().size();
        if (ai && (!bj || a.pieces()[i].offset < b.pieces()[j].offset)) {
            if (std::abs(a.pieces()[i].amp) > tol) return false;
            ++i;
        } else if (bj && (!ai || b.pieces()[j].offset < a.pieces()[i].offset)) {
            if (std::abs(b.pieces()[j].amp) > tol) return false;
            ++j;
        } else {
            if (std::abs(a.pieces()[i].amp - b.pieces()[j].amp) > tol) return false;
            ++i;
            ++j;
        }
    }
    return true;
}

}  // namespace adelion

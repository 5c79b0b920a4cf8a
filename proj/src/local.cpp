#include "adelion/local.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adelion {

namespace {

double p_power(Prime p, long e) { return std::pow(static_cast<double>(p), static_cast<double>(e)); }

/// Canonical ball, visible frequency; invisible frequency tail folds into
/// the phase through chi_p(tail * center).  Returns false for negligible amplitude.
bool normalize_term(Prime p, CharBallTerm& t) {
    if (t.ball.p != p) throw std::invalid_argument("LocalFunction: mixed primes in terms");
    t.ball = Ball::make(p, t.ball.center, t.ball.radius_exp);
    Rat visible = trunc_below(t.freq, p, t.ball.radius_exp);
    if (visible != t.freq) {
        t.phase *= chi((t.freq - visible) * t.ball.center, p);
        t.freq = visible;
    }
    return std::abs(t.amp) > config::amplitude_tolerance();
}

int term_order(const CharBallTerm& a, const CharBallTerm& b) {
    int c = compare(a.ball.center, b.ball.center);
    if (c != 0) return c;
    if (a.ball.radius_exp != b.ball.radius_exp) return a.ball.radius_exp < b.ball.radius_exp ? -1 : 1;
    return compare(a.freq, b.freq);
}

/// Merge terms sharing (ball, freq); exact phases are kept when they agree,
/// otherwise folded into the amplitude.
void merge_coincident(std::vector<CharBallTerm>& terms) {
    std::sort(terms.begin(), terms.end(),
              [](const CharBallTerm& a, const CharBallTerm& b) { return term_order(a, b) < 0; });
    std::vector<CharBallTerm> out;
    size_t i = 0;
    while (i < terms.size()) {
        size_t j = i + 1;
        while (j < terms.size() && terms[j].ball == terms[i].ball && terms[j].freq == terms[i].freq) ++j;
        CharBallTerm acc = terms[i];
        for (size_t k = i + 1; k < j; ++k) {
            if (terms[k].phase == acc.phase) {
                acc.amp += terms[k].amp;
            } else {
                acc.amp = acc.coefficient() + terms[k].coefficient();
                acc.phase = UnitPhase::one();
            }
        }
        if (std::abs(acc.amp) > config::amplitude_tolerance()) out.push_back(acc);
        i = j;
    }
    terms.swap(out);
}

void split_term(Prime p, const CharBallTerm& t, std::vector<CharBallTerm>& out) {
    for (long d = 0; d < p; ++d) {
        CharBallTerm c = t;
        c.ball = t.ball.child(d);
        normalize_term(p, c);  // frequency may turn invisible one level down
        out.push_back(c);
    }
}

/// Attempt to assemble p sibling terms of one frequency (one per child
/// slot) into a single term on the parent ball.  The sibling coefficients
/// must be proportional to a character of Z/p: z_d = Z * omega^{e d}.
bool try_merge_siblings(Prime p, const std::vector<const CharBallTerm*>& slot, const Ball& parent,
                        CharBallTerm& merged) {
    for (auto* s : slot)
        if (!s) return false;
    const Rat& freq = slot[0]->freq;

    const Rat step = rat_pow(p, parent.radius_exp - 1);  // the digit a merged frequency gains

    // Exact path: equal float amplitudes, phases following phase_0 * (e d / p).
    bool exact = true;
    for (auto* s : slot)
        if (s->amp != slot[0]->amp) exact = false;
    if (exact) {
        Rat delta = (slot.size() > 1 ? (slot[1]->phase * slot[0]->phase.conj()).turns() : Rat(0));
        Rat ep = delta * p;
        if (ep.get_den() == 1) {
            long e = static_cast<long>(ep.get_num().get_si());
            bool match = true;
            for (long d = 0; d < p; ++d) {
                UnitPhase want = slot[0]->phase * UnitPhase(make_rat(Int(e * d), Int(p)));
                if (slot[static_cast<size_t>(d)]->phase != want) {
                    match = false;
                    break;
                }
            }
            if (match) {
                merged.amp = slot[0]->amp;
                merged.phase = slot[0]->phase * chi(Rat(e) * step * parent.center, p).conj();
                merged.freq = freq + Rat(e) * step;
                merged.ball = parent;
                return true;
            }
        }
    }

    // Numeric path: discrete Fourier transform of the sibling coefficients
    // must concentrate on a single index.
    std::vector<Complex> z(static_cast<size_t>(p));
    double zmax = 0;
    for (long d = 0; d < p; ++d) {
        z[static_cast<size_t>(d)] = slot[static_cast<size_t>(d)]->coefficient();
        zmax = std::max(zmax, std::abs(z[static_cast<size_t>(d)]));
    }
    const double tol = config::amplitude_tolerance() * std::max(1.0, zmax);
    long found = -1;
    Complex found_coef;
    for (long e = 0; e < p; ++e) {
        Complex acc = 0;
        for (long d = 0; d < p; ++d)
            acc += z[static_cast<size_t>(d)] * UnitPhase(make_rat(Int(-e * d), Int(p))).value();
        acc /= static_cast<double>(p);
        if (std::abs(acc) > tol) {
            if (found >= 0) return false;  // more than one harmonic present
            found = e;
            found_coef = acc;
        }
    }
    if (found < 0) return false;  // all negligible; leave to the zero-drop pass
    merged.amp = found_coef;
    merged.phase = chi(Rat(found) * step * parent.center, p).conj();
    merged.freq = freq + Rat(found) * step;
    merged.ball = parent;
    return true;
}

}  // namespace

LocalFunction LocalFunction::from_terms(Prime p, std::vector<CharBallTerm> terms) {
    std::vector<CharBallTerm> work;
    work.reserve(terms.size());
    for (auto& t : terms)
        if (normalize_term(p, t)) work.push_back(std::move(t));

    // Disjointness: a properly nested pair splits the coarser ball one
    // level (only the child over the finer ball can split again, so the
    // growth is linear in the radius gap).  Equal balls with distinct
    // visible frequencies coexist: characters on one ball are orthogonal
    // and every operation handles them in closed form.
    bool changed = true;
    while (changed) {
        changed = false;
        merge_coincident(work);
        for (size_t i = 0; i < work.size() && !changed; ++i) {
            for (size_t j = i + 1; j < work.size() && !changed; ++j) {
                if (work[i].ball == work[j].ball) continue;
                BallRelation rel = ball_relation(work[i].ball, work[j].ball);
                if (rel == BallRelation::Disjoint) continue;
                size_t coarse = (rel == BallRelation::SecondInsideFirst) ? i : j;
                std::vector<CharBallTerm> next;
                for (size_t k = 0; k < work.size(); ++k) {
                    if (k == coarse)
                        split_term(p, work[k], next);
                    else
                        next.push_back(work[k]);
                }
                work.swap(next);
                changed = true;
            }
        }
    }

    // Upward pass: when all p children of a ball hold terms and every
    // frequency class assembles into a parent character term, merge the
    // whole group (partial merges would reintroduce nesting).
    bool merged_any = true;
    while (merged_any) {
        merged_any = false;
        for (size_t i = 0; i < work.size() && !merged_any; ++i) {
            Ball parent = Ball::make(p, work[i].ball.center, work[i].ball.radius_exp + 1);
            std::vector<size_t> members;
            for (size_t k = 0; k < work.size(); ++k) {
                if (work[k].ball.radius_exp == work[i].ball.radius_exp &&
                    parent.contains(work[k].ball.center))
                    members.push_back(k);
            }
            // partition the group by frequency; each class needs one term
            // per child slot
            std::vector<Rat> freqs;
            for (size_t k : members) {
                if (std::find(freqs.begin(), freqs.end(), work[k].freq) == freqs.end())
                    freqs.push_back(work[k].freq);
            }
            if (members.size() != freqs.size() * static_cast<size_t>(p)) continue;
            std::vector<CharBallTerm> merged_terms;
            bool ok = true;
            for (const Rat& fr : freqs) {
                std::vector<const CharBallTerm*> slot(static_cast<size_t>(p), nullptr);
                for (size_t k : members) {
                    if (work[k].freq != fr) continue;
                    Rat off = (work[k].ball.center - parent.center) * rat_pow(p, parent.radius_exp);
                    if (off.get_den() != 1 || off < 0 || off >= p) {
                        ok = false;
                        break;
                    }
                    slot[static_cast<size_t>(off.get_num().get_si())] = &work[k];
                }
                CharBallTerm m;
                if (!ok || !try_merge_siblings(p, slot, parent, m)) {
                    ok = false;
                    break;
                }
                merged_terms.push_back(std::move(m));
            }
            if (!ok) continue;
            std::vector<CharBallTerm> next;
            for (size_t k = 0; k < work.size(); ++k)
                if (std::find(members.begin(), members.end(), k) == members.end())
                    next.push_back(work[k]);
            for (auto& m : merged_terms)
                if (std::abs(m.amp) > config::amplitude_tolerance()) next.push_back(std::move(m));
            merge_coincident(next);  // merged frequencies may now coincide
            work.swap(next);
            merged_any = true;
        }
    }

    std::sort(work.begin(), work.end(),
              [](const CharBallTerm& a, const CharBallTerm& b) { return term_order(a, b) < 0; });
    LocalFunction f(p);
    f.terms_ = std::move(work);
    return f;
}

LocalFunction LocalFunction::indicator(const Ball& ball) {
    CharBallTerm t;
    t.ball = ball;
    t.freq = Rat(0);
    return from_terms(ball.p, {t});
}

LocalFunction LocalFunction::translated(const Rat& c) const {
    std::vector<CharBallTerm> out = terms_;
    for (auto& t : out) {
        t.phase *= chi(t.freq * c, p_).conj();
        t.ball = Ball::make(p_, t.ball.center + c, t.ball.radius_exp);
    }
    return from_terms(p_, std::move(out));
}

LocalFunction LocalFunction::dilated(long j) const {
    std::vector<CharBallTerm> out = terms_;
    for (auto& t : out) {
        t.ball = Ball{p_, t.ball.center * rat_pow(p_, -j), t.ball.radius_exp + j};
        t.freq *= rat_pow(p_, j);
    }
    return from_terms(p_, std::move(out));
}

LocalFunction LocalFunction::modulated(const Rat& b) const {
    std::vector<CharBallTerm> out = terms_;
    for (auto& t : out) t.freq += b;
    return from_terms(p_, std::move(out));
}

LocalFunction LocalFunction::reflected() const {
    std::vector<CharBallTerm> out = terms_;
    for (auto& t : out) {
        t.freq = -t.freq;
        t.ball = Ball::make(p_, -t.ball.center, t.ball.radius_exp);
    }
    return from_terms(p_, std::move(out));
}

LocalFunction LocalFunction::conjugated() const {
    std::vector<CharBallTerm> out = terms_;
    for (auto& t : out) {
        t.amp = std::conj(t.amp);
        t.phase = t.phase.conj();
        t.freq = -t.freq;
    }
    return from_terms(p_, std::move(out));
}

LocalFunction LocalFunction::scaled(const Complex& c) const {
    std::vector<CharBallTerm> out = terms_;
    for (auto& t : out) t.amp *= c;
    return from_terms(p_, std::move(out));
}

LocalFunction LocalFunction::scaled(const UnitPhase& ph) const {
    std::vector<CharBallTerm> out = terms_;
    for (auto& t : out) t.phase *= ph;
    return from_terms(p_, std::move(out));
}

LocalFunction LocalFunction::operator+(const LocalFunction& o) const {
    if (p_ != o.p_) throw std::invalid_argument("LocalFunction: mixed primes");
    std::vector<CharBallTerm> out = terms_;
    out.insert(out.end(), o.terms_.begin(), o.terms_.end());
    return from_terms(p_, std::move(out));
}

LocalFunction LocalFunction::operator-(const LocalFunction& o) const {
    return *this + o.scaled(Complex(-1.0, 0.0));
}

LocalFunction LocalFunction::multiplied(const LocalFunction& o) const {
    if (p_ != o.p_) throw std::invalid_argument("LocalFunction: mixed primes");
    std::vector<CharBallTerm> out;
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            BallRelation rel = ball_relation(a.ball, b.ball);
            if (rel == BallRelation::Disjoint) continue;
            CharBallTerm t;
            t.ball = (rel == BallRelation::FirstInsideSecond || rel == BallRelation::Equal) ? a.ball
                                                                                           : b.ball;
            t.freq = a.freq + b.freq;
            t.amp = a.amp * b.amp;
            t.phase = a.phase * b.phase;
            out.push_back(std::move(t));
        }
    }
    return from_terms(p_, std::move(out));
}

LocalFunction LocalFunction::fourier() const {
    // c chi(bx) 1_{B_gamma(a)}  ->  c p^gamma chi(ab) chi(a xi) 1_{B_{-gamma}(-b)}
    std::vector<CharBallTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        CharBallTerm s;
        s.amp = t.amp * p_power(p_, t.ball.radius_exp);
        s.phase = t.phase * chi(t.ball.center * t.freq, p_);
        s.freq = t.ball.center;
        s.ball = Ball::make(p_, -t.freq, -t.ball.radius_exp);
        out.push_back(std::move(s));
    }
    return from_terms(p_, std::move(out));
}

LocalFunction LocalFunction::inverse_fourier() const { return fourier().reflected(); }

Complex LocalFunction::integral() const {
    Complex acc = 0;
    for (const auto& t : terms_)
        if (t.freq == 0) acc += t.coefficient() * p_power(p_, t.ball.radius_exp);
    return acc;
}

Complex LocalFunction::evaluate(const Rat& x) const {
    Complex acc = 0;
    for (const auto& t : terms_)
        if (t.ball.contains(x)) acc += t.coefficient() * chi(t.freq * x, p_).value();
    return acc;
}

double LocalFunction::norm() const {
    return std::sqrt(std::max(0.0, inner_product(*this, *this).real()));
}

long LocalFunction::support_radius_exp() const {
    if (terms_.empty()) throw std::domain_error("support_radius_exp of zero function");
    long n = terms_.front().ball.radius_exp;
    for (const auto& t : terms_) {
        long enclosing = t.ball.radius_exp;  // smallest zero-centered ball covering the piece
        if (t.ball.center != 0) enclosing = std::max(enclosing, -valuation(t.ball.center, p_));
        n = std::max(n, enclosing);
    }
    return n;
}

long LocalFunction::constancy_exp() const {
    if (terms_.empty()) throw std::domain_error("constancy_exp of zero function");
    long l = kValuationInfinity;
    for (const auto& t : terms_) {
        long scale = (t.freq == 0) ? t.ball.radius_exp
                                   : std::min(t.ball.radius_exp, valuation(t.freq, p_));
        l = std::min(l, scale);
    }
    return l;
}

Complex inner_product(const LocalFunction& f, const LocalFunction& g) {
    if (f.prime() != g.prime()) throw std::invalid_argument("inner_product: mixed primes");
    const Prime p = f.prime();
    Complex acc = 0;
    for (const auto& a : f.terms()) {
        for (const auto& b : g.terms()) {
            BallRelation rel = ball_relation(a.ball, b.ball);
            if (rel == BallRelation::Disjoint) continue;
            const Ball& small =
                (rel == BallRelation::FirstInsideSecond || rel == BallRelation::Equal) ? a.ball
                                                                                       : b.ball;
            Rat db = a.freq - b.freq;
            if (db != 0 && valuation(db, p) < small.radius_exp) continue;  // oscillates: zero
            UnitPhase ph = a.phase * b.phase.conj() * chi(db * small.center, p);
            acc += a.amp * std::conj(b.amp) * ph.value() * p_power(p, small.radius_exp);
        }
    }
    return acc;
}

bool approx_equal(const LocalFunction& f, const LocalFunction& g, double tol) {
    if (f.prime() != g.prime()) return false;
    if (f.terms().size() != g.terms().size()) return false;
    for (size_t i = 0; i < f.terms().size(); ++i) {
        const auto& a = f.terms()[i];
        const auto& b = g.terms()[i];
        if (a.ball != b.ball || a.freq != b.freq) return false;
        if (std::abs(a.coefficient() - b.coefficient()) > tol) return false;
    }
    return true;
}

}  // namespace adelion

#include "adelion/adelic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace adelion {

namespace {

bool is_omega(const LocalFunction& f) {
    if (f.terms().size() != 1) return false;
    const auto& t = f.terms().front();
    return t.freq == 0 && t.ball == Ball::unit(f.prime()) &&
           std::abs(t.coefficient() - Complex(1, 0)) <= config::amplitude_tolerance();
}

bool is_prime_number(Prime p) {
    if (p < 2) return false;
    for (Prime d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void check_place(Prime p) {
    if (!is_prime_number(p)) throw std::invalid_argument("adelic: place must be a prime");
}

std::vector<Prime> primes_up_to(Prime m) {
    std::vector<Prime> out;
    for (Prime q = 2; q <= m; ++q)
        if (is_prime_number(q)) out.push_back(q);
    return out;
}

double p_power_half(Prime p, long j) {
    return std::pow(static_cast<double>(p), 0.5 * static_cast<double>(j));
}

int compare_place_index(const PlaceIndex& a, const PlaceIndex& b) {
    if (a.scaling != b.scaling) return a.scaling ? -1 : 1;
    if (a.k != b.k) return a.k < b.k ? -1 : 1;
    if (a.j != b.j) return a.j < b.j ? -1 : 1;
    return compare(a.a, b.a);
}

}  // namespace

AdelePoint AdelePoint::principal(const Rat& r) {
    AdelePoint a;
    a.real = r;
    Int den = r.get_den();
    for (Prime p = 2; den > 1; ++p) {
        if (!is_prime_number(p)) continue;
        Int pz(p);
        if (mpz_divisible_p(den.get_mpz_t(), pz.get_mpz_t())) {
            a.finite[p] = r;
            while (mpz_divisible_p(den.get_mpz_t(), pz.get_mpz_t()))
                mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
        }
    }
    return a;
}

AdelePoint AdelePoint::at_place(Prime p, const Rat& x) {
    check_place(p);
    AdelePoint a;
    a.finite[p] = x;
    return a;
}

UnitPhase adelic_character(const AdelePoint& a) {
    UnitPhase acc(-a.real);  // chi_inf(t) = e^{-2 pi i t}
    for (const auto& [p, x] : a.finite) acc *= chi(x, p);
    return acc;
}

AdelicTensor AdelicTensor::one(bool with_real) {
    AdelicTensor t;
    if (with_real) t.real_ = DyadicStep::haar_scaling();
    return t;
}

AdelicTensor AdelicTensor::make(std::optional<DyadicStep> real_factor,
                                std::map<Prime, LocalFunction> locals) {
    AdelicTensor t;
    t.real_ = std::move(real_factor);
    for (auto& [p, f] : locals) {
        check_place(p);
        if (f.prime() != p) throw std::invalid_argument("AdelicTensor: factor prime mismatch");
        if (f.is_zero()) t.zero_ = true;
        if (!is_omega(f)) t.locals_.emplace(p, std::move(f));
    }
    if (t.real_ && t.real_->is_zero()) t.zero_ = true;
    if (t.zero_) t.locals_.clear();
    return t;
}

LocalFunction AdelicTensor::local_factor(Prime q) const {
    auto it = locals_.find(q);
    if (it != locals_.end()) return it->second;
    return LocalFunction::unit_indicator(q);
}

Prime AdelicTensor::finiteness() const { return locals_.empty() ? 1 : locals_.rbegin()->first; }

AdelicTensor AdelicTensor::shifted(const AdelicShift& a) const {
    if (zero_) return *this;
    AdelicTensor t = *this;
    if (a.real && *a.real != 0) {
        if (!t.real_) throw std::invalid_argument("shift: real shift on a non-Archimedean function");
        t.real_ = t.real_->translated(*a.real);
    }
    for (const auto& [p, sh] : a.finite) {
        check_place(p);
        if (!is_shift_value(sh, p)) throw std::invalid_argument("shift: value not in I_p");
        if (sh == 0) continue;
        LocalFunction f = t.local_factor(p).translated(sh);
        t.locals_.erase(p);
        if (!is_omega(f)) t.locals_.emplace(p, std::move(f));
    }
    return t;
}

AdelicTensor AdelicTensor::multi_dilated(const MultiDilation& j) const {
    if (zero_) return *this;
    AdelicTensor t = *this;
    if (j.real != 0) {
        if (!t.real_)
            throw std::invalid_argument("multi_dilate: real dilation on a non-Archimedean function");
        t.real_ = t.real_->dilated(-j.real).scaled(Complex(std::sqrt(std::ldexp(1.0, -static_cast<int>(j.real))), 0));
    }
    for (const auto& [p, jp] : j.finite) {
        check_place(p);
        if (jp == 0) continue;
        LocalFunction f = t.local_factor(p).dilated(jp).scaled(Complex(p_power_half(p, -jp), 0));
        t.locals_.erase(p);
        if (!is_omega(f)) t.locals_.emplace(p, std::move(f));
    }
    return t;
}

AdelicTensor AdelicTensor::scaled(const Complex& c) const {
    AdelicTensor t = *this;
    if (std::abs(c) <= config::amplitude_tolerance()) {
        t.zero_ = true;
        t.locals_.clear();
        return t;
    }
    if (t.zero_) return t;
    if (t.real_) {
        t.real_ = t.real_->scaled(c);
    } else if (!t.locals_.empty()) {
        auto it = t.locals_.begin();
        LocalFunction f = it->second.scaled(c);
        Prime p = it->first;
        t.locals_.erase(it);
        if (!is_omega(f)) t.locals_.emplace(p, std::move(f));
    } else {
        // scale the implicit factor at the smallest place
        LocalFunction f = LocalFunction::unit_indicator(2).scaled(c);
        if (!is_omega(f)) t.locals_.emplace(2, std::move(f));
    }
    return t;
}

AdelicTensor AdelicTensor::conjugated() const {
    AdelicTensor t = *this;
    if (t.real_) t.real_ = t.real_->conjugated();
    for (auto& [p, f] : t.locals_) f = f.conjugated();
    return t;
}

Complex AdelicTensor::integral() const {
    if (zero_) return 0;
    Complex acc = 1;
    if (real_) acc *= real_->integral();
    for (const auto& [p, f] : locals_) acc *= f.integral();
    return acc;  // Omega factors integrate to 1
}

Complex inner_product(const AdelicTensor& f, const AdelicTensor& g) {
    if (f.has_real() != g.has_real())
        throw std::invalid_argument("adelic inner product: mixed A and non-Archimedean parts");
    if (f.is_zero() || g.is_zero()) return 0;
    Complex acc = 1;
    if (f.has_real()) acc *= inner_product(f.real_factor(), g.real_factor());
    std::set<Prime> places;
    for (const auto& [p, _] : f.locals()) places.insert(p);
    for (const auto& [p, _] : g.locals()) places.insert(p);
    for (Prime p : places) {
        acc *= inner_product(f.local_factor(p), g.local_factor(p));
        if (acc == Complex(0, 0)) return acc;
    }
    return acc;  // (Omega, Omega) = 1 beyond both parameters
}

AdelicFunction::AdelicFunction(const AdelicTensor& t) {
    if (!t.is_zero()) terms_.push_back(t);
}

bool AdelicFunction::has_real() const {
    if (terms_.empty()) return false;
    return terms_.front().has_real();
}

AdelicFunction AdelicFunction::operator+(const AdelicFunction& o) const {
    if (!terms_.empty() && !o.terms_.empty() && terms_.front().has_real() != o.terms_.front().has_real())
        throw std::invalid_argument("adelic sum: mixed A and non-Archimedean parts");
    AdelicFunction r = *this;
    for (const auto& t : o.terms_)
        if (!t.is_zero()) r.terms_.push_back(t);
    return r;
}

AdelicFunction AdelicFunction::operator-(const AdelicFunction& o) const {
    return *this + o.scaled(Complex(-1, 0));
}

AdelicFunction AdelicFunction::scaled(const Complex& c) const {
    AdelicFunction r;
    if (std::abs(c) <= config::amplitude_tolerance()) return r;
    for (const auto& t : terms_) r.terms_.push_back(t.scaled(c));
    return r;
}

AdelicFunction AdelicFunction::shifted(const AdelicShift& a) const {
    AdelicFunction r;
    for (const auto& t : terms_) r.terms_.push_back(t.shifted(a));
    return r;
}

AdelicFunction AdelicFunction::multi_dilated(const MultiDilation& j) const {
    AdelicFunction r;
    for (const auto& t : terms_) r.terms_.push_back(t.multi_dilated(j));
    return r;
}

double AdelicFunction::norm() const {
    return std::sqrt(std::max(0.0, inner_product(*this, *this).real()));
}

Complex inner_product(const AdelicFunction& f, const AdelicFunction& g) {
    Complex acc = 0;
    for (const auto& a : f.terms())
        for (const auto& b : g.terms()) acc += inner_product(a, b);
    return acc;
}

double quadrature_norm(const AdelicFunction& input) {
    AdelicFunction f;
    for (const auto& t : input.terms())
        if (!t.is_zero()) f = f + AdelicFunction(t);
    if (f.is_zero()) return 0;
    const auto& terms = f.terms();

    // real-place cells: union of supports at the finest level
    std::vector<Rat> real_points;
    double real_measure = 1.0;
    if (f.has_real()) {
        long level = 0;
        for (const auto& t : terms)
            if (!t.real_factor().is_zero()) level = std::max(level, t.real_factor().level());
        std::set<long long> offs;
        for (const auto& t : terms) {
            const DyadicStep& r = t.real_factor();
            if (r.is_zero()) continue;
            long shift = level - r.level();
            for (const auto& pc : r.pieces())
                for (long long k = 0; k < (1LL << shift); ++k)
                    offs.insert(pc.offset * (1LL << shift) + k);
        }
        for (long long n : offs)
            real_points.push_back(Rat(static_cast<long>(n)) * rat_pow(2, -level));
        real_measure = to_double(rat_pow(2, -level));
        if (real_points.empty()) return 0;
    }

    // per finite place: cells covering the union of factor supports, at a
    // scale where every factor is constant
    std::set<Prime> place_set;
    for (const auto& t : terms)
        for (const auto& [q, _] : t.locals()) place_set.insert(q);
    struct PlaceCells {
        Prime q;
        std::vector<Rat> points;
        double measure;
    };
    std::vector<PlaceCells> cells;
    for (Prime q : place_set) {
        long scale = 0;
        std::vector<Ball> balls{Ball::unit(q)};  // implicit factors live here
        for (const auto& t : terms) {
            auto it = t.locals().find(q);
            if (it == t.locals().end()) continue;
            scale = std::min(scale, it->second.constancy_exp());
            for (const auto& term : it->second.terms()) balls.push_back(term.ball);
        }
        std::set<Rat, bool (*)(const Rat&, const Rat&)> pts(
            [](const Rat& a, const Rat& b) { return compare(a, b) < 0; });
        for (const Ball& b : balls) {
            long levels = b.radius_exp - scale;
            if (levels < 0) {
                pts.insert(trunc_below(b.center, q, -scale));
                continue;
            }
            Int count = int_pow(q, static_cast<unsigned long>(levels));
            if (!count.fits_slong_p()) throw std::invalid_argument("quadrature_norm: too many cells");
            for (long c = 0; c < count.get_si(); ++c)
                pts.insert(trunc_below(b.center + Rat(c) * rat_pow(q, -b.radius_exp), q, -scale));
        }
        PlaceCells pc;
        pc.q = q;
        pc.points.assign(pts.begin(), pts.end());
        pc.measure = to_double(rat_pow(q, scale));
        cells.push_back(std::move(pc));
    }

    // cache per-term factor values on each cell
    const size_t nt = terms.size();
    std::vector<std::vector<Complex>> real_vals(nt);
    if (f.has_real())
        for (size_t i = 0; i < nt; ++i)
            for (const Rat& x : real_points) real_vals[i].push_back(terms[i].real_factor().evaluate(x));
    std::vector<std::vector<std::vector<Complex>>> vals(nt, std::vector<std::vector<Complex>>(cells.size()));
    for (size_t i = 0; i < nt; ++i)
        for (size_t c = 0; c < cells.size(); ++c) {
            LocalFunction factor = terms[i].local_factor(cells[c].q);
            for (const Rat& x : cells[c].points) vals[i][c].push_back(factor.evaluate(x));
        }

    // odometer over cell tuples
    double total_measure = real_measure;
    for (const auto& pc : cells) total_measure *= pc.measure;
    std::vector<size_t> pick(cells.size(), 0);
    double acc = 0;
    size_t real_count = f.has_real() ? real_points.size() : 1;
    for (size_t r = 0; r < real_count; ++r) {
        std::fill(pick.begin(), pick.end(), 0);
        while (true) {
            Complex value = 0;
            for (size_t i = 0; i < nt; ++i) {
                Complex v = f.has_real() ? real_vals[i][r] : Complex(1, 0);
                for (size_t c = 0; c < cells.size(); ++c) v *= vals[i][c][pick[c]];
                value += v;
            }
            acc += std::norm(value) * total_measure;
            size_t c = 0;
            for (; c < cells.size(); ++c) {
                if (++pick[c] < cells[c].points.size()) break;
                pick[c] = 0;
            }
            if (c == cells.size()) break;
        }
    }
    return std::sqrt(acc);
}

bool AdelicIndex::pure_wavelet() const {
    for (const auto& [p, e] : places)
        if (e.scaling) return false;
    return true;
}

bool AdelicIndex::operator<(const AdelicIndex& o) const {
    if (real.has_value() != o.real.has_value()) return !real.has_value();
    if (real) {
        if (real->scaling != o.real->scaling) return real->scaling;
        if (real->j != o.real->j) return real->j < o.real->j;
        if (real->n != o.real->n) return real->n < o.real->n;
    }
    auto it = places.begin();
    auto jt = o.places.begin();
    for (; it != places.end() && jt != o.places.end(); ++it, ++jt) {
        if (it->first != jt->first) return it->first < jt->first;
        int c = compare_place_index(it->second, jt->second);
        if (c != 0) return c < 0;
    }
    return it == places.end() && jt != o.places.end();
}

bool AdelicIndex::operator==(const AdelicIndex& o) const {
    return !(*this < o) && !(o < *this);
}

AdelicTensor adelic_wavelet(const AdelicIndex& idx, bool on_nonarch) {
    std::optional<DyadicStep> real_factor;
    if (on_nonarch) {
        if (idx.real) throw std::invalid_argument("adelic_wavelet: real index on non-Archimedean part");
    } else {
        if (!idx.real) throw std::invalid_argument("adelic_wavelet: missing real index");
        real_factor = idx.real->scaling ? DyadicStep::haar_scaling().translated(idx.real->n)
                                        : DyadicStep::haar_wavelet(idx.real->j, idx.real->n);
    }
    std::map<Prime, LocalFunction> locals;
    for (const auto& [p, e] : idx.places) {
        if (e.scaling) {
            locals.emplace(p, scaling_shift(p, e.a));
        } else {
            if (e.j < 0) throw std::invalid_argument("adelic_wavelet: wavelet level must be in Z_+");
            locals.emplace(p, kozyrev(p, e.k, e.j, e.a));
        }
    }
    return AdelicTensor::make(std::move(real_factor), std::move(locals));
}

bool MraPattern::all_scaling() const {
    if (real_wavelet) return false;
    for (const auto& [p, w] : wavelet_at)
        if (w) return false;
    return true;
}

AdelicTensor mra_scaling(const AdelicShift& a) {
    return AdelicTensor::one(true).shifted(a);
}

AdelicTensor mra_wavelet(const MraPattern& pattern, const std::map<Prime, long>& k_hat, long j,
                         const AdelicShift& a) {
    if (j < 0) throw std::invalid_argument("mra_wavelet: dilation level must be in Z_+");
    if (pattern.all_scaling())
        throw std::invalid_argument("mra_wavelet: all-scaling pattern is the scaling function");
    std::vector<Prime> places = primes_up_to(pattern.m);
    for (Prime q : places)
        if (!pattern.wavelet_at.count(q))
            throw std::invalid_argument("mra_wavelet: pattern must cover every prime up to m");
    for (const auto& [q, sh] : a.finite)
        if (q > pattern.m && sh != 0)
            throw std::invalid_argument("mra_wavelet: shift beyond the pattern prime");

    // generator: mixed psi/phi factors, undilated
    DyadicStep real_gen =
        pattern.real_wavelet ? DyadicStep::haar_wavelet(0, 0) : DyadicStep::haar_scaling();
    std::map<Prime, LocalFunction> locals;
    double prefactor = 2.0;  // the real place contributes 2^{j/2}
    for (Prime q : places) {
        prefactor *= static_cast<double>(q);
        if (pattern.wavelet_at.at(q)) {
            auto it = k_hat.find(q);
            if (it == k_hat.end())
                throw std::invalid_argument("mra_wavelet: missing k for a wavelet place");
            locals.emplace(q, kozyrev_generator(q, it->second));
        } else {
            locals.emplace(q, LocalFunction::unit_indicator(q));
        }
    }
    AdelicTensor gen = AdelicTensor::make(DyadicStep(real_gen), std::move(locals));

    // T_a then the uniform unnormalized dilation; one global normalizer.
    AdelicTensor shifted = gen.shifted(a);
    std::optional<DyadicStep> real_part = shifted.has_real()
                                              ? std::optional<DyadicStep>(shifted.real_factor().dilated(j))
                                              : std::nullopt;
    std::map<Prime, LocalFunction> dil;
    for (Prime q : places) dil.emplace(q, shifted.local_factor(q).dilated(-j));
    for (const auto& [q, f] : shifted.locals())
        if (q > pattern.m) dil.emplace(q, f);
    AdelicTensor out = AdelicTensor::make(std::move(real_part), std::move(dil));
    return out.scaled(Complex(std::pow(prefactor, 0.5 * static_cast<double>(j)), 0));
}

LizorkinReport lizorkin_check(const AdelicFunction& f, long real_moment_max) {
    LizorkinReport report;
    if (f.is_zero()) return report;

    // real place: moments of every term's real factor must vanish
    if (f.has_real()) {
        for (long s = 0; s <= real_moment_max && report.real_ok; ++s) {
            for (const auto& t : f.terms()) {
                if (std::abs(t.real_factor().moment(static_cast<unsigned>(s))) >
                    config::amplitude_tolerance()) {
                    report.real_ok = false;
                    report.first_failing_moment = s;
                    break;
                }
            }
        }
        report.pass = report.pass && report.real_ok;
    }

    // finite places: every place up to each term's parameter of finiteness
    // constrains it (interior Omega factors fail, by design: their integral is 1)
    std::set<Prime> places;
    for (const auto& t : f.terms())
        for (Prime q : primes_up_to(std::max<Prime>(t.finiteness(), 2))) places.insert(q);

    for (Prime q : places) {
        bool factor_ok = true;
        for (const auto& t : f.terms()) {
            // implicit Omega beyond P(term) is unconstrained; the smallest
            // admissible parameter of finiteness is the first prime
            if (q > std::max<Prime>(t.finiteness(), 2)) continue;
            Complex integral = t.local_factor(q).integral();
            if (std::abs(integral) > config::amplitude_tolerance()) {
                factor_ok = false;
                report.finite_integral[q] = integral;
            }
        }
        if (!factor_ok) {
            // second chance: the sum-level marginal over x_q may cancel.
            // || sum_t (int f_q^t) * rest_t ||^2 via pairwise inners without
            // place q; implicit factors contribute their unit integral.
            Complex norm2 = 0;
            for (const auto& s : f.terms()) {
                for (const auto& t : f.terms()) {
                    Complex c = s.local_factor(q).integral() * std::conj(t.local_factor(q).integral());
                    if (c == Complex(0, 0)) continue;
                    if (s.has_real()) c *= inner_product(s.real_factor(), t.real_factor());
                    std::set<Prime> rest;
                    for (const auto& [r, _] : s.locals()) rest.insert(r);
                    for (const auto& [r, _] : t.locals()) rest.insert(r);
                    rest.erase(q);
                    for (Prime r : rest) c *= inner_product(s.local_factor(r), t.local_factor(r));
                    norm2 += c;
                }
            }
            factor_ok = std::abs(norm2) <= config::amplitude_tolerance();
        }
        report.finite_ok[q] = factor_ok;
        if (!factor_ok) report.pass = false;
    }
    return report;
}

Decomposition decompose(const AdelicFunction& zeta, long widen) {
    if (zeta.has_real())
        throw std::invalid_argument("decompose: defined on the non-Archimedean part only");
    LizorkinReport rep = lizorkin_check(zeta, 0);
    for (const auto& [q, ok] : rep.finite_ok)
        if (!ok) throw NotLizorkinError(q, "decompose: input is not Lizorkin at place " +
                                               std::to_string(q));

    // Candidate index box from per-term support and constancy bounds.
    std::set<AdelicIndex> box;
    for (const auto& term : zeta.terms()) {
        if (term.is_zero()) continue;
        std::vector<Prime> places;
        std::vector<std::vector<PlaceIndex>> choices;
        bool empty_box = false;
        for (const auto& [q, g] : term.locals()) {
            long n_q = g.support_radius_exp();
            long l_q = g.constancy_exp();
            std::vector<PlaceIndex> c;
            long j_lo = std::max<long>(0, -n_q - widen);
            long j_hi = -l_q - 1 + widen;
            for (long j = j_lo; j <= j_hi; ++j) {
                long depth = std::max<long>(0, n_q + j) + widen;
                for (const Rat& a : enumerate_shifts(q, depth))
                    for (long k = 1; k < q; ++k) c.push_back(PlaceIndex::wavelet(k, j, a));
            }
            if (widen > 0) {
                // certification scan: include scaling-type entries as well
                // (a = 0 is the implicit stabilization, not a distinct index)
                for (const Rat& a : enumerate_shifts(q, std::max<long>(0, n_q) + widen))
                    if (a != 0) c.push_back(PlaceIndex::scaling_shift(a));
            }
            if (c.empty()) {
                empty_box = true;  // no wavelet index can see this factor
                break;
            }
            places.push_back(q);
            choices.push_back(std::move(c));
        }
        if (empty_box || places.empty()) continue;
        std::vector<size_t> pick(places.size(), 0);
        while (true) {
            AdelicIndex idx;
            for (size_t i = 0; i < places.size(); ++i) idx.places[places[i]] = choices[i][pick[i]];
            box.insert(idx);
            size_t i = 0;
            for (; i < places.size(); ++i) {
                if (++pick[i] < choices[i].size()) break;
                pick[i] = 0;
            }
            if (i == places.size()) break;
        }
    }

    Decomposition out;
    AdelicFunction reconstruction;
    for (const AdelicIndex& idx : box) {
        AdelicTensor basis = adelic_wavelet(idx, true);
        Complex c = inner_product(zeta, AdelicFunction(basis));
        if (std::abs(c) <= config::amplitude_tolerance()) continue;
        out.coefficients.emplace_back(idx, c);
        reconstruction = reconstruction + AdelicFunction(basis).scaled(c);
    }
    out.residual = quadrature_norm(zeta - reconstruction);
    return out;
}

}  // namespace adelion

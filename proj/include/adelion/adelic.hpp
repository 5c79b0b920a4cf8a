#ifndef ADELION_ADELIC_HPP
#define ADELION_ADELIC_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "adelion/dyadic.hpp"
#include "adelion/local.hpp"
#include "adelion/wavelets.hpp"

namespace adelion {

/// Raised when an operation needs a zero-integral factor at some place
/// and the input does not provide one.
class NotLizorkinError : public std::runtime_error {
public:
    NotLizorkinError(Prime place, const std::string& what)
        : std::runtime_error(what), place_(place) {}
    Prime place() const { return place_; }

private:
    Prime place_;
};

/**
 * A point of the adele ring with finite data: one rational real
 * coordinate plus finitely many explicit p-adic coordinates (absent
 * primes are zero, hence integral).  Principal adeles store the same
 * rational at every place; only the primes dividing its denominator
 * carry a nonzero fractional part, so the data stays finite.
 */
struct AdelePoint {
    Rat real;
    std::map<Prime, Rat> finite;

    static AdelePoint principal(const Rat& r);
    static AdelePoint at_place(Prime p, const Rat& x);
};

/// chi_0(a) = chi_inf(a_inf) prod_p chi_p(a_p) as an exact phase; the
/// product is finite because chi_p(a_p) = 1 on Z_p.  The real factor is
/// e^{-2 pi i a_inf}, which makes chi_0 trivial on principal adeles.
UnitPhase adelic_character(const AdelePoint& a);

struct AdelicShift {
    std::optional<long long> real;  // integer shift at the real place
    std::map<Prime, Rat> finite;    // values in I_p
};

struct MultiDilation {
    long real = 0;                 // j_inf
    std::map<Prime, long> finite;  // j_p
};

/**
 * An elementary adelic function: optional real step-function factor
 * (absent = the non-Archimedean part), finitely many explicit local
 * factors, and the implicit Omega(|x_p|_p) stabilization beyond the
 * parameter of finiteness.  Stored factors are canonical and never
 * equal to Omega (those normalize away, shrinking the parameter).
 */
class AdelicTensor {
public:
    /// Phi (with real phi^H factor) or its non-Archimedean version.
    static AdelicTensor one(bool with_real);
    static AdelicTensor make(std::optional<DyadicStep> real_factor,
                             std::map<Prime, LocalFunction> locals);

    bool has_real() const { return real_.has_value(); }
    const DyadicStep& real_factor() const { return *real_; }
    const std::map<Prime, LocalFunction>& locals() const { return locals_; }
    /// The factor at place q (implicit Omega when not stored).
    LocalFunction local_factor(Prime q) const;
    /// Parameter of finiteness: the largest prime carrying a non-Omega
    /// factor (1 when all factors are Omega).
    Prime finiteness() const;

    bool is_zero() const { return zero_; }

    AdelicTensor shifted(const AdelicShift& a) const;
    AdelicTensor multi_dilated(const MultiDilation& j) const;
    AdelicTensor scaled(const Complex& c) const;
    AdelicTensor conjugated() const;

    /// Elementary integral: product of factor integrals.
    Complex integral() const;

private:
    std::optional<DyadicStep> real_;
    std::map<Prime, LocalFunction> locals_;
    bool zero_ = false;
};

Complex inner_product(const AdelicTensor& f, const AdelicTensor& g);

/// A finite sum of elementary tensors.  Sums stay explicit; every
/// operation extends bilinearly.
class AdelicFunction {
public:
    AdelicFunction() = default;
    AdelicFunction(const AdelicTensor& t);

    static AdelicFunction zero() { return AdelicFunction(); }

    const std::vector<AdelicTensor>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool has_real() const;

    AdelicFunction operator+(const AdelicFunction& o) const;
    AdelicFunction operator-(const AdelicFunction& o) const;
    AdelicFunction scaled(const Complex& c) const;
    AdelicFunction shifted(const AdelicShift& a) const;
    AdelicFunction multi_dilated(const MultiDilation& j) const;

    double norm() const;

private:
    std::vector<AdelicTensor> terms_;
};

Complex inner_product(const AdelicFunction& f, const AdelicFunction& g);

/// The L^2 norm computed by exact cell decomposition and pointwise
/// evaluation.  Subtractions cancel per point, so near-zero residuals of
/// reconstructions come out at accumulation noise instead of the 1e-8
/// floor the bilinear expansion would leave.
double quadrature_norm(const AdelicFunction& f);

/// Index of one factor of a tensor wavelet at a finite place: either a
/// wavelet psi_{k;ja} (j in Z_+) or a scaling shift phi(.-a).
struct PlaceIndex {
    bool scaling = false;
    long k = 1;
    long j = 0;
    Rat a;

    static PlaceIndex wavelet(long k, long j, const Rat& a) { return {false, k, j, a}; }
    static PlaceIndex scaling_shift(const Rat& a) { return {true, 0, 0, a}; }
};

/// Real-place index: psi^H_{jn}, or phi^H(.-n) for the separable-MRA side.
struct RealIndex {
    bool scaling = false;
    long j = 0;
    long long n = 0;
};

struct AdelicIndex {
    std::optional<RealIndex> real;
    std::map<Prime, PlaceIndex> places;

    Prime m() const { return places.empty() ? 1 : places.rbegin()->first; }
    bool pure_wavelet() const;

    bool operator<(const AdelicIndex& o) const;
    bool operator==(const AdelicIndex& o) const;
};

/// The tensor-basis element for an index: real Haar factor, modified
/// Haar factors at the stored places, Omega beyond.  With on_nonarch
/// the index must have no real entry.
AdelicTensor adelic_wavelet(const AdelicIndex& idx, bool on_nonarch);

/// Separable-MRA pattern: which factor (wavelet or scaling) sits at the
/// real place and at each prime up to the pattern prime m.
struct MraPattern {
    Prime m = 2;
    bool real_wavelet = true;
    std::map<Prime, bool> wavelet_at;  // q <= m -> true: psi_{k_q}, false: phi

    bool all_scaling() const;
};

/// T_a Phi — the scaling-function shifts of the separable MRA.
AdelicTensor mra_scaling(const AdelicShift& a);

/// (2 * 2*3*...*m)^{j/2} M^{-j} T_a applied to the pattern generator;
/// k_hat supplies k_q for each wavelet place.  The all-scaling pattern
/// is rejected (that is mra_scaling).
AdelicTensor mra_wavelet(const MraPattern& pattern, const std::map<Prime, long>& k_hat, long j,
                         const AdelicShift& a);

struct LizorkinReport {
    bool pass = true;
    std::map<Prime, bool> finite_ok;
    std::map<Prime, Complex> finite_integral;  // the offending marginal where it failed
    bool real_ok = true;
    long first_failing_moment = -1;
};

/// Membership test for the Lizorkin space: per elementary term, the
/// factor integral vanishes at every stored place up to its parameter of
/// finiteness; terms that fail factor-wise get a second chance through
/// the sum-level marginal (cancellation across terms).  With a real
/// factor present, moments 0..real_moment_max must vanish as well.
LizorkinReport lizorkin_check(const AdelicFunction& f, long real_moment_max);

struct Decomposition {
    std::vector<std::pair<AdelicIndex, Complex>> coefficients;  // sorted, |c| above tolerance
    double residual = 0;
};

/// Finite wavelet decomposition on the non-Archimedean part: the search
/// box comes from each factor's support radius N_q and constancy l_q
/// (q^{-N_q} < q^{j_q+1} <= q^{-l_q}, shift denominators up to
/// q^{N_q+j_q}); widen enlarges the box for certification scans.
/// Rejects non-Lizorkin input naming the failing place.
Decomposition decompose(const AdelicFunction& zeta, long widen = 0);

}  // namespace adelion

#endif

#ifndef ADELION_DYADIC_HPP
#define ADELION_DYADIC_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "adelion/exact.hpp"

namespace adelion {

/**
 * A finite complex step function on dyadic half-open intervals
 * [n 2^{-L}, (n+1) 2^{-L}).  Canonical form keeps every piece at one
 * common level, sorted by offset, zero pieces dropped, and reduces the
 * level whenever both halves of a coarser interval carry the same value.
 *
 * This is the real factor of the adelic constructions; it supports the
 * Haar scaling/wavelet pair, exact moments, inner products, integer
 * shifts and dyadic dilations.  No real-place Fourier transform is
 * provided (transforms of steps are not steps).
 */
class DyadicStep {
public:
    struct Piece {
        long long offset;
        Complex amp;
    };

    DyadicStep() = default;

    static DyadicStep zero() { return DyadicStep(); }

    /// Single piece amp * 1_{[n 2^{-level}, (n+1) 2^{-level})}.
    static DyadicStep piece(long level, long long n, Complex amp);

    /// phi^H = 1 on [0,1).
    static DyadicStep haar_scaling() { return piece(0, 0, {1.0, 0.0}); }

    /// psi^H_{jn}(t) = 2^{j/2} psi^H(2^j t - n), norm 1.
    static DyadicStep haar_wavelet(long j, long long n);

    bool is_zero() const { return pieces_.empty(); }
    long level() const { return level_; }
    const std::vector<Piece>& pieces() const { return pieces_; }

    /// t -> f(t - n)
    DyadicStep translated(long long n) const;
    /// t -> f(t - n 2^{-j})
    DyadicStep translated_dyadic(long j, long long n) const;
    /// t -> f(2^j t)
    DyadicStep dilated(long j) const;
    DyadicStep scaled(const Complex& c) const;
    DyadicStep conjugated() const;

    DyadicStep operator+(const DyadicStep& o) const;
    DyadicStep operator-(const DyadicStep& o) const;
    DyadicStep multiplied(const DyadicStep& o) const;

    Complex integral() const;
    /// integral of t^s f(t) dt; the interval piece integrals are exact rationals.
    Complex moment(unsigned s) const;
    Complex evaluate(const Rat& t) const;
    double norm() const;

    friend Complex inner_product(const DyadicStep& f, const DyadicStep& g);
    friend bool approx_equal(const DyadicStep& f, const DyadicStep& g, double tol);

private:
    static DyadicStep from_pieces(long level, std::vector<Piece> pieces);
    DyadicStep at_level(long level) const;

    long level_ = 0;
    std::vector<Piece> pieces_;  // sorted by offset, nonzero
};

Complex inner_product(const DyadicStep& f, const DyadicStep& g);

bool approx_equal(const DyadicStep& f, const DyadicStep& g, double tol);

}  // namespace adelion

#endif

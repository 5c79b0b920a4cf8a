#ifndef ADELION_WAVELETS_HPP
#define ADELION_WAVELETS_HPP

#include <random>
#include <vector>

#include "adelion/local.hpp"

namespace adelion {

using Matrix = std::vector<std::vector<Complex>>;

/// psi_k(x) = chi_p(k x / p) Omega(|x|_p), 1 <= k <= p-1; norm 1, zero mean.
LocalFunction kozyrev_generator(Prime p, long k);

/// p^{j/2} psi_k(p^{-j} x - a): the full wavelet family over k, j, and
/// natural shifts a.  j >= 1 shrinks the support.
LocalFunction kozyrev(Prime p, long k, long j, const Rat& a);

/// phi(x - a) = Omega(|x - a|_p).
LocalFunction scaling_shift(Prime p, const Rat& a);

/**
 * Parameters of the compactly supported wavelet family on Q_p: a unitary
 * (p-1)x(p-1) matrix U and unimodular sigma_{mu m}, mu in 1..p-1,
 * m in 0..p^s-1; the generated psi_mu are supported in B_s.
 */
struct HaarFamilyParams {
    Prime p = 2;
    long s = 0;
    Matrix unitary;   // (p-1) x (p-1)
    Matrix sigma;     // (p-1) x p^s, |sigma| = 1
};

/// Validates the unitarity / unimodularity invariants within tol.
void validate(const HaarFamilyParams& params, double tol = 1e-10);

/// Coefficient array alpha^mu_{nu;k}, (p-1) x p^s, for one mu in 1..p-1.
/// Exact phase bookkeeping for the roots of unity; the resonant
/// 1/(1 - e^{2 pi i ...}) factor is numeric (its exponent is never an
/// integer for valid inputs; asserted).
Matrix family_coefficients(const HaarFamilyParams& params, long mu);

/// psi_mu = sum_nu sum_k alpha^mu_{nu;k} psi_nu(x - k/p^s); support in B_s.
LocalFunction family_wavelet(const HaarFamilyParams& params, long mu);

/// The p = 2 family: psi = sum_k alpha_k psi(x - k/2^s) with
/// alpha_k = 2^{-s} sum_r gamma_r e^{-i pi (2r-1) k / 2^s}, |gamma_r| = 1.
LocalFunction dyadic_family_wavelet(long s, const std::vector<Complex>& gamma);

/// Modified basis of L^2(Q_p): scaling shifts phi(.-a) plus wavelets
/// psi_{k;ja} with 0 <= j <= j_max, shifts of denominator up to p^depth.
std::vector<LocalFunction> modified_basis(Prime p, long j_max, long depth);

/// Orthogonal projection onto L^2(Z_p): f -> f * Omega.
LocalFunction restrict_to_unit_ball(const LocalFunction& f);

/// Gram matrix G_ij = (f_i, f_j) for any inner product.
template <typename T, typename Inner>
Matrix gram_matrix(const std::vector<T>& fns, Inner&& inner) {
    const size_t n = fns.size();
    Matrix g(n, std::vector<Complex>(n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i; j < n; ++j) {
            g[i][j] = inner(fns[i], fns[j]);
            if (j != i) g[j][i] = std::conj(g[i][j]);
        }
    }
    return g;
}

Matrix gram_matrix(const std::vector<LocalFunction>& fns);

/// max |G_ij - delta_ij|
double max_identity_deviation(const Matrix& g);

/// Seeded Haar-measure-ish unitary via Gram-Schmidt on complex Gaussians.
Matrix random_unitary(size_t n, std::mt19937& rng);

/// Seeded unimodular (p-1) x p^s sigma array.
Matrix random_unimodular(size_t rows, size_t cols, std::mt19937& rng);

}  // namespace adelion

#endif

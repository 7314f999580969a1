// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#ifndef OIA_CHANNEL_HPP
#define OIA_CHANNEL_HPP

#include "oia/rng.hpp"
#include "oia/types.hpp"

namespace oia {

/// The four channel matrices of the two-link interference channel.
/// h_ij maps transmitter j to receiver i; entries are i.i.d. circularly
/// symmetric complex Gaussian with variance 1/cols, so E[Trace(H H^H)]
/// equals the receive antenna count.
struct ChannelSet {
  ComplexMatrix h11;  // n1 x m1
  ComplexMatrix h12;  // n1 x m2
  ComplexMatrix h21;  // n2 x m1
  ComplexMatrix h22;  // n2 x m2
};

/// i.i.d. CN(0, 1/n_cols) matrix, Box-Muller on a counter-based stream:
/// the same (seed, stream) always reproduces the same matrix bit for bit.
ComplexMatrix draw_channel(RandomStream& rng, int n_rows, int n_cols);

ChannelSet draw_channel_set(RandomStream& rng, const Dimensions& dims);

/// SVD with singular values sorted non-increasing, A = U diag(s) V^H.
struct SortedSvd {
  ComplexMatrix u;             // rows x rows, unitary
  RealVector singular_values;  // min(rows, cols), non-increasing
  ComplexMatrix v;             // cols x cols, unitary

  /// Numerical rank: count of singular values above rank_tol * max singular
  /// value.  rank_tol < 0 selects the default threshold for this shape.
  int rank(double rank_tol = -1.0) const;
};

/// Default relative rank threshold for an m x n matrix: max(m,n) * eps * 64.
double default_rank_tol(int rows, int cols);

SortedSvd sorted_svd(const ComplexMatrix& a);

/// Orthonormal basis of Ker(A) as an n x k matrix (k = n - rank); the trailing
/// right singular vectors.  k = 0 yields an n x 0 matrix.
ComplexMatrix null_space_basis(const ComplexMatrix& a, double rank_tol = -1.0);

/// Squared singular values of A through the Gram matrix of the smaller side,
/// non-increasing, zero-padded to cols(A) and clamped to exact zero below the
/// rank threshold.  Much cheaper than a full SVD when only the spectrum is
/// needed.
RealVector gram_channel_eigenvalues(const ComplexMatrix& a);

/// Hermitian S with S Q S = I for Hermitian positive definite Q.
/// Throws NumericalError when an eigenvalue is not safely positive.
ComplexMatrix hermitian_inv_sqrt(const ComplexMatrix& q);

}  // namespace oia

#endif  // OIA_CHANNEL_HPP

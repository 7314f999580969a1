// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#ifndef OIA_PRECODING_HPP
#define OIA_PRECODING_HPP

#include "oia/primary.hpp"
#include "oia/types.hpp"

namespace oia {

/// Cross channel seen through the primary receive basis, split at the
/// boundary between the m1 reserved receive dimensions and the n1 - m1
/// unused ones.
struct EffectiveCrossChannel {
  ComplexMatrix full;    // n1 x m2, u_h11^H * h12
  ComplexMatrix top;     // m1 x m2, rows hitting reserved dimensions
  ComplexMatrix bottom;  // (n1 - m1) x m2
  int m1 = 0;
};

EffectiveCrossChannel effective_cross_channel(const ComplexMatrix& u_h11,
                                              const ComplexMatrix& h12, int m1);

enum class PrecoderKind { Oia, Zfbf };

/// Secondary precoder: v2 has orthonormal columns (m2 x l2).  l2 = 0 encodes
/// "no transmission", which is a valid outcome rather than an error.
struct PrecoderSolution {
  ComplexMatrix v2;
  int l2 = 0;
  PrecoderKind kind = PrecoderKind::Oia;
};

/// Null-space precoder over the reserved rows only: v2 spans Ker(top), taken
/// from the trailing right singular vectors, so interference lands exclusively
/// on the receive dimensions the primary leaves unused.
PrecoderSolution oia_precoder(const EffectiveCrossChannel& effective);

/// Zero-forcing baseline: v2 spans Ker(h12), annihilating the whole cross
/// channel.  Strictly more restrictive than the null-space precoder above.
PrecoderSolution zfbf_precoder(const ComplexMatrix& h12);

/// Interference-plus-noise covariance at the primary receiver, in the primary
/// receive basis: R = sigma1_sq I + u^H h12 v2 diag(p2) v2^H h12^H u.
ComplexMatrix primary_interference_cov(const ComplexMatrix& u_h11, const ComplexMatrix& h12,
                                       const ComplexMatrix& v2, const RealVector& p2,
                                       double sigma1_sq);

/// Relative mismatch between the primary single-user rate and its rate under
/// the interference covariance r.  Zero (up to rounding) certifies that the
/// secondary transmission is invisible to the primary link.
double verify_ia_condition(const PrimaryTransceiver& transceiver,
                           const WaterfillSolution& solution, const ComplexMatrix& r,
                           double sigma1_sq);

}  // namespace oia

#endif  // OIA_PRECODING_HPP

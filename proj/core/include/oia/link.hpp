// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#ifndef OIA_LINK_HPP
#define OIA_LINK_HPP

#include "oia/channel.hpp"
#include "oia/precoding.hpp"
#include "oia/primary.hpp"
#include "oia/rng.hpp"
#include "oia/secondary.hpp"
#include "oia/types.hpp"

namespace oia {

struct LinkConfig {
  Dimensions dims;
  PowerNoiseConfig power;
};

/// One Monte Carlo realization of the full two-link pipeline.  Structural
/// invariants (opportunity bounds, null-space dimension law, kernel nesting,
/// per-draw rate dominance) are checked on every draw; a violation throws
/// NumericalError rather than producing silently wrong statistics.
struct TrialResult {
  int m1 = 0;        // primary dimensions carrying power
  int s = 0;         // transmit opportunities n1 - m1
  int l2_oia = 0;    // aligned secondary dimensions
  int l2_zfbf = 0;   // zero-forcing secondary dimensions
  double beta = 0.0; // primary water level

  double rate_primary = 0.0;  // single-user primary rate, bits/s/Hz
  double rate_oia_upa = 0.0;
  double rate_oia_opa = 0.0;
  double rate_zfbf_upa = 0.0;
  double rate_zfbf_opa = 0.0;

  double ia_residual_upa = 0.0;  // relative primary-rate mismatch, uniform PA
  double ia_residual_opa = 0.0;
};

TrialResult simulate_trial(const LinkConfig& config, RandomStream& rng);

}  // namespace oia

#endif  // OIA_LINK_HPP

// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#ifndef OIA_ASYMPTOTICS_HPP
#define OIA_ASYMPTOTICS_HPP

#include "oia/types.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace oia {

/// Marchenko-Pastur law parametrized by its mean ("ratio"): continuous
/// density sqrt((x-a)(b-x)) / (2 pi x) on [a, b] with a = (1 - sqrt(ratio))^2,
/// b = (1 + sqrt(ratio))^2, plus an atom of mass (1 - ratio)+ at zero.
/// This is the limiting spectrum of H^H H for an n x m matrix H with i.i.d.
/// CN(0, 1/m) entries and n/m -> ratio.
struct MpLaw {
  double ratio = 1.0;
  double a = 0.0;
  double b = 4.0;
  double atom = 0.0;

  static MpLaw from_ratio(double ratio);

  /// Continuous part of the density (the atom is carried separately).
  double density(double lambda) const;
};

/// Expectation of f against the law, restricted to [max(a, lower_cut), b] on
/// the continuous part; the atom contributes f(0) * atom only when
/// lower_cut <= 0.  The edge square roots are removed by a sin^2 substitution
/// before the adaptive quadrature runs.
double mp_expectation(const MpLaw& law, const std::function<double(double)>& f, double lower_cut,
                      double abs_tol = 1e-10);

/// Water level of the large-system water-filling allocation: the unique beta
/// with E[(beta - sigma1_sq/lambda)+] = p1_max over the MP law of ratio
/// 1/alpha11.
double asymptotic_waterlevel(double alpha11, double p1_max, double sigma1_sq);

/// Fraction of transmit dimensions carrying power in the limit:
/// the MP mass above sigma1_sq / beta_inf.
double asymptotic_m1(double alpha11, double beta_inf, double sigma1_sq);

/// Transmit opportunities per primary transmit antenna: 1/alpha11 - m1_inf.
double asymptotic_to_fraction(double alpha11, double m1_inf);

/// Usable secondary dimensions per secondary transmit antenna:
/// (1 - alpha11/alpha12 * m1_inf)+.
double asymptotic_l2_fraction(double alpha11, double alpha12, double m1_inf);

/// Large-system model: antenna ratios alpha_ij = M_j / N_i, the power/noise
/// configuration, and the derived limits.
struct AsymptoticModel {
  double alpha11 = 1.0, alpha12 = 1.0, alpha21 = 1.0, alpha22 = 1.0;
  PowerNoiseConfig power;
  double beta_inf = 0.0;
  double m1_inf = 0.0;
  double s_inf = 0.0;
  double l2_inf = 0.0;

  static AsymptoticModel solve(double alpha11, double alpha12, double alpha21, double alpha22,
                               const PowerNoiseConfig& power);
  static AsymptoticModel solve(const Dimensions& dims, const PowerNoiseConfig& power);
};

/// Compactly supported power distribution: point atoms plus an optional
/// continuous part expressed as a transform of an MP law (the value map sends
/// a base eigenvalue to the power it carries).
struct LimitingPowerDistribution {
  struct Atom {
    double value = 0.0;
    double mass = 0.0;
  };
  struct Continuous {
    MpLaw law;
    double lower_cut = 0.0;
    std::function<double(double)> value_map;
    double mass = 0.0;
  };

  std::vector<Atom> atoms;
  std::optional<Continuous> continuous;

  double total_mass() const;
  double mean() const;
  double expectation(const std::function<double(double)>& f) const;

  static LimitingPowerDistribution point_mass(double value);
  static LimitingPowerDistribution from_atoms(std::vector<Atom> atoms);
  /// Spectrum of the primary allocation in the limit: an atom at zero for the
  /// unused dimensions plus the water-filling image of the MP law above the
  /// cut.
  static LimitingPowerDistribution primary_waterfill(double alpha11, double beta_inf,
                                                     double sigma1_sq);
  /// Spectrum of v2 P2 v2^H under the uniform allocation: {gamma, 0} with
  /// masses {l2_inf, 1 - l2_inf}.
  static LimitingPowerDistribution secondary_upa(double gamma, double l2_inf);
};

/// E[p / (1 + p u / alpha)]: the self-consistent load a power spectrum adds
/// inside the resolvent fixed points.  Exact for atomic distributions,
/// quadrature otherwise.
double resolvent_shift(const LimitingPowerDistribution& dist, double u, double alpha);

/// Stieltjes transform of the limiting interference spectrum at real z < 0:
/// G(z) = -1 / (z - shift_p1(G)), solved by damped fixed-point iteration.
double solve_gm1(double z, const LimitingPowerDistribution& p1, double alpha21);

/// Same fixed point with both the cross and direct secondary loads:
/// G(z) = -1 / (z - shift_p1(G) - shift_p2(G)).
double solve_gm(double z, const LimitingPowerDistribution& p1,
                const LimitingPowerDistribution& p2, double alpha21, double alpha22);

/// Secondary rate per receive antenna in the large-system limit, for any
/// secondary power spectrum independent of the noise level:
/// integral of G_m1(-z) - G_m(-z) over z in [sigma2_sq, inf) divided by ln 2.
double asymptotic_secondary_rate(const AsymptoticModel& model,
                                 const LimitingPowerDistribution& p1,
                                 const LimitingPowerDistribution& p2, double abs_tol = 1e-6);

/// Convenience wrapper building the water-filled primary spectrum and the
/// uniform secondary spectrum from the model.
double asymptotic_upa_rate(const AsymptoticModel& model);

/// Single-user primary water-filling rate per transmit antenna in the limit.
double asymptotic_primary_rate_per_tx(double alpha11, double beta_inf, double sigma1_sq);

}  // namespace oia

#endif  // OIA_ASYMPTOTICS_HPP

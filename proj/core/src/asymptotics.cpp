// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#include "oia/asymptotics.hpp"

#include "oia/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace oia {

MpLaw MpLaw::from_ratio(double ratio) {
  if (!(ratio > 0.0)) throw std::invalid_argument("MpLaw: ratio must be > 0");
  MpLaw law;
  law.ratio = ratio;
  const double s = std::sqrt(ratio);
  law.a = (1.0 - s) * (1.0 - s);
  law.b = (1.0 + s) * (1.0 + s);
  law.atom = std::max(0.0, 1.0 - ratio);
  return law;
}

double MpLaw::density(double lambda) const {
  if (lambda <= a || lambda >= b) return 0.0;
  return std::sqrt((lambda - a) * (b - lambda)) / (2.0 * std::numbers::pi * lambda);
}

double mp_expectation(const MpLaw& law, const std::function<double(double)>& f, double lower_cut,
                      double abs_tol) {
  double result = 0.0;
  if (lower_cut <= 0.0 && law.atom > 0.0) result += law.atom * f(0.0);

  const double cut = std::max(law.a, lower_cut);
  if (cut >= law.b) return result;

  // lambda = a + (b - a) sin^2(theta) absorbs the edge square roots, so the
  // transformed integrand is analytic up to f itself.
  const double width = law.b - law.a;
  const double theta_lo = std::asin(std::sqrt(std::clamp((cut - law.a) / width, 0.0, 1.0)));
  const double theta_hi = std::numbers::pi / 2.0;

  auto integrand = [&](double theta) {
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    const double lambda = law.a + width * st * st;
    if (lambda <= 0.0) return 0.0;
    return f(lambda) * width * width * st * st * ct * ct / (std::numbers::pi * lambda);
  };
  // the relative floor keeps large-magnitude integrands (water levels at high
  // SNR) from demanding sub-epsilon absolute accuracy
  result += integrate_adaptive(integrand, theta_lo, theta_hi, abs_tol, 1e-13).value;
  return result;
}

double asymptotic_waterlevel(double alpha11, double p1_max, double sigma1_sq) {
  if (!(alpha11 > 0.0) || !(p1_max > 0.0) || !(sigma1_sq > 0.0))
    throw std::invalid_argument("asymptotic_waterlevel: inputs must be > 0");
  const MpLaw law = MpLaw::from_ratio(1.0 / alpha11);

  auto excess = [&](double beta) {
    return mp_expectation(
               law, [&](double lam) { return beta - sigma1_sq / lam; }, sigma1_sq / beta) -
           p1_max;
  };

  // excess is strictly increasing in beta; it is negative as beta approaches
  // sigma1_sq / b from above and grows without bound.
  double lo = sigma1_sq / law.b * (1.0 + 1e-12);
  double hi = sigma1_sq / law.b + p1_max + sigma1_sq;
  int guard = 0;
  while (excess(hi) < 0.0) {
    hi *= 2.0;
    if (++guard > 200)
      throw NumericalError("asymptotic_waterlevel: bracketing failure, no saturating level");
  }
  return brent_root(excess, lo, hi, 1e-11 * hi);
}

double asymptotic_m1(double alpha11, double beta_inf, double sigma1_sq) {
  if (!(beta_inf > 0.0)) throw std::invalid_argument("asymptotic_m1: beta_inf must be > 0");
  const MpLaw law = MpLaw::from_ratio(1.0 / alpha11);
  return mp_expectation(
      law, [](double) { return 1.0; }, sigma1_sq / beta_inf);
}

double asymptotic_to_fraction(double alpha11, double m1_inf) { return 1.0 / alpha11 - m1_inf; }

double asymptotic_l2_fraction(double alpha11, double alpha12, double m1_inf) {
  return std::max(0.0, 1.0 - alpha11 / alpha12 * m1_inf);
}

AsymptoticModel AsymptoticModel::solve(double alpha11, double alpha12, double alpha21,
                                       double alpha22, const PowerNoiseConfig& power) {
  AsymptoticModel m;
  m.alpha11 = alpha11;
  m.alpha12 = alpha12;
  m.alpha21 = alpha21;
  m.alpha22 = alpha22;
  m.power = power;
  m.beta_inf = asymptotic_waterlevel(alpha11, power.p1_max, power.sigma1_sq);
  m.m1_inf = asymptotic_m1(alpha11, m.beta_inf, power.sigma1_sq);
  m.s_inf = asymptotic_to_fraction(alpha11, m.m1_inf);
  m.l2_inf = asymptotic_l2_fraction(alpha11, alpha12, m.m1_inf);

  const double tol = 1e-8;
  if (m.m1_inf < -tol || m.m1_inf > std::min(1.0, 1.0 / alpha11) + tol)
    throw NumericalError("AsymptoticModel: m1_inf outside [0, min(1, 1/alpha11)]");
  if (m.s_inf < std::max(0.0, 1.0 / alpha11 - 1.0) - tol || m.s_inf > 1.0 / alpha11 + tol)
    throw NumericalError("AsymptoticModel: s_inf outside its structural bounds");
  return m;
}

AsymptoticModel AsymptoticModel::solve(const Dimensions& d, const PowerNoiseConfig& power) {
  return solve(d.alpha11(), d.alpha12(), d.alpha21(), d.alpha22(), power);
}

double LimitingPowerDistribution::total_mass() const {
  double mass = 0.0;
  for (const Atom& atom : atoms) mass += atom.mass;
  if (continuous) mass += continuous->mass;
  return mass;
}

double LimitingPowerDistribution::expectation(const std::function<double(double)>& f) const {
  double value = 0.0;
  for (const Atom& atom : atoms) value += atom.mass * f(atom.value);
  if (continuous) {
    const auto& c = *continuous;
    value += mp_expectation(
        c.law, [&](double lam) { return f(c.value_map(lam)); }, c.lower_cut, 1e-11);
  }
  return value;
}

double LimitingPowerDistribution::mean() const {
  return expectation([](double p) { return p; });
}

LimitingPowerDistribution LimitingPowerDistribution::point_mass(double value) {
  LimitingPowerDistribution d;
  d.atoms.push_back({value, 1.0});
  return d;
}

LimitingPowerDistribution LimitingPowerDistribution::from_atoms(std::vector<Atom> atoms) {
  LimitingPowerDistribution d;
  d.atoms = std::move(atoms);
  double mass = 0.0;
  for (const Atom& atom : d.atoms) {
    if (atom.mass < 0.0 || atom.value < 0.0)
      throw std::invalid_argument("LimitingPowerDistribution: negative atom value or mass");
    mass += atom.mass;
  }
  if (std::abs(mass - 1.0) > 1e-10)
    throw std::invalid_argument("LimitingPowerDistribution: atom masses must sum to 1");
  return d;
}

LimitingPowerDistribution LimitingPowerDistribution::primary_waterfill(double alpha11,
                                                                       double beta_inf,
                                                                       double sigma1_sq) {
  const MpLaw law = MpLaw::from_ratio(1.0 / alpha11);
  const double cut = std::max(law.a, sigma1_sq / beta_inf);
  const double mass = asymptotic_m1(alpha11, beta_inf, sigma1_sq);

  LimitingPowerDistribution d;
  d.atoms.push_back({0.0, 1.0 - mass});
  Continuous c;
  c.law = law;
  c.lower_cut = cut;
  c.value_map = [beta_inf, sigma1_sq](double lam) {
    return std::max(0.0, beta_inf - sigma1_sq / lam);
  };
  c.mass = mass;
  d.continuous = std::move(c);
  return d;
}

LimitingPowerDistribution LimitingPowerDistribution::secondary_upa(double gamma, double l2_inf) {
  if (l2_inf <= 0.0) return point_mass(0.0);
  LimitingPowerDistribution d;
  d.atoms.push_back({gamma, l2_inf});
  d.atoms.push_back({0.0, 1.0 - l2_inf});
  return d;
}

double resolvent_shift(const LimitingPowerDistribution& dist, double u, double alpha) {
  return dist.expectation([&](double p) {
    const double denom = 1.0 + p * u / alpha;
    if (denom <= 0.0)
      throw NumericalError("resolvent_shift: singular integrand, 1 + p u / alpha <= 0");
    return p / denom;
  });
}

namespace {

double solve_fixed_point(double z, const std::function<double(double)>& shift, const char* op) {
  if (!(z < 0.0)) throw std::invalid_argument(std::string(op) + ": z must be < 0");
  // Damped Picard iteration; the map is a contraction for real negative z and
  // non-negative power spectra, damping guards near the spectrum edge.
  const double eta = 0.5;
  double g = -1.0 / z;
  double residual = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    const double next = -1.0 / (z - shift(g));
    residual = std::abs(next - g);
    if (residual <= 1e-12) return (1.0 - eta) * g + eta * next;
    g = (1.0 - eta) * g + eta * next;
  }
  std::ostringstream msg;
  msg << op << ": fixed point did not converge, residual " << residual;
  throw NumericalError(msg.str());
}

}  // namespace

double solve_gm1(double z, const LimitingPowerDistribution& p1, double alpha21) {
  return solve_fixed_point(
      z, [&](double g) { return resolvent_shift(p1, g, alpha21); }, "solve_gm1");
}

double solve_gm(double z, const LimitingPowerDistribution& p1,
                const LimitingPowerDistribution& p2, double alpha21, double alpha22) {
  return solve_fixed_point(
      z,
      [&](double g) {
        return resolvent_shift(p1, g, alpha21) + resolvent_shift(p2, g, alpha22);
      },
      "solve_gm");
}

double asymptotic_secondary_rate(const AsymptoticModel& model,
                                 const LimitingPowerDistribution& p1,
                                 const LimitingPowerDistribution& p2, double abs_tol) {
  const double sigma2_sq = model.power.sigma2_sq;
  const double secondary_load = p2.mean();  // first-moment gap between the two spectra
  if (secondary_load <= 0.0) return 0.0;

  auto integrand = [&](double z) {
    const double g1 = solve_gm1(-z, p1, model.alpha21);
    const double g = solve_gm(-z, p1, p2, model.alpha21, model.alpha22);
    const double diff = g1 - g;
    if (diff < -1e-9)
      throw NumericalError("asymptotic_secondary_rate: negative integrand, transforms inconsistent");
    return std::max(diff, 0.0);
  };

  // Truncate where the integrand has clearly entered its 1/z^2 tail, then add
  // the analytic first-order tail secondary_load / z_max.
  double z_max = std::max({10.0 * sigma2_sq, 100.0 * secondary_load, 100.0});
  int guard = 0;
  while (integrand(z_max) > 1e-9) {
    z_max *= 2.0;
    if (++guard > 60)
      throw NumericalError("asymptotic_secondary_rate: integrand tail not below tolerance");
  }

  const double body =
      integrate_adaptive(integrand, sigma2_sq, z_max, 0.5 * abs_tol * std::numbers::ln2).value;
  const double tail = secondary_load / z_max;
  return (body + tail) / std::numbers::ln2;
}

double asymptotic_upa_rate(const AsymptoticModel& model) {
  const LimitingPowerDistribution p1 = LimitingPowerDistribution::primary_waterfill(
      model.alpha11, model.beta_inf, model.power.sigma1_sq);
  if (model.l2_inf <= 0.0) return 0.0;
  const double gamma = model.power.p2_max / model.l2_inf;
  const LimitingPowerDistribution p2 =
      LimitingPowerDistribution::secondary_upa(gamma, model.l2_inf);
  return asymptotic_secondary_rate(model, p1, p2);
}

double asymptotic_primary_rate_per_tx(double alpha11, double beta_inf, double sigma1_sq) {
  const MpLaw law = MpLaw::from_ratio(1.0 / alpha11);
  return mp_expectation(
      law, [&](double lam) { return std::log2(beta_inf * lam / sigma1_sq); },
      sigma1_sq / beta_inf);
}

}  // namespace oia

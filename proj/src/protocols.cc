// Copyright 2026 The seqdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "seqdisc/protocols.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace seqdisc {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Degenerate overlaps: orthogonal or identical states clone with certainty.
CloneParams trivial_clone(const Scenario &scenario) {
  CloneParams c;
  c.s = scenario.s();
  c.omega = 1.0 / (1.0 + scenario.s());
  c.x = 1.0;
  c.y = 1.0;
  c.gamma1 = 1.0;
  c.gamma2 = 1.0;
  c.p_cl = 1.0;
  c.p1_of_omega = scenario.p1();
  c.p1_cl = scenario.p1();
  c.p2_cl = scenario.p2();
  return c;
}

// Prior P1 at which the conditional prior after cloning reaches
// s^2 / (1 + s^2), i.e. where the discrimination stages switch branch.
double cloning_branch_prior(double s) {
  const double target = s * s / (1.0 + s * s);
  const auto excess = [&](double p1) {
    return clone_optimal_for_prior(Scenario(s, p1)).p1_cl - target;
  };
  double lo = 1e-12;
  double hi = 0.5;
  if (excess(lo) >= 0.0) return 0.0;
  if (excess(hi) <= 0.0) return 0.5;
  for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double cloning_constraint_residual(double s, double gamma1, double gamma2) {
  return s - std::sqrt(gamma1 * gamma2) * s * s - std::sqrt((1.0 - gamma1) * (1.0 - gamma2));
}

PiecewiseResult protocol1_optimal(const Scenario &scenario) {
  PiecewiseResult out = single_observer_optimal(scenario.p1(), scenario.s());
  out.t = 1.0;
  return out;
}

ConditionalPriors conditional_priors_after_bob(const Scenario &scenario, double q1b) {
  const StrategyParams b = StrategyParams::from_q1(q1b, scenario.s());
  const double w1 = scenario.p1() * (1.0 - b.q1());
  const double w2 = scenario.p2() * (1.0 - b.q2());
  const double total = w1 + w2;
  if (!(total > 0.0)) {
    throw ConstraintError("degenerate strategy: Bob never succeeds (q1b=" + fmt(b.q1()) +
                          ", q2b=" + fmt(b.q2()) + ")");
  }
  if (b.q1() == 1.0) {
    return {0.0, 1.0};
  }
  return {w1 / total, w2 / total};
}

double protocol2_upper_critical_prior(double s) {
  const double s2 = s * s;
  const double s4 = s2 * s2;
  const double s6 = s4 * s2;
  return s2 * (s4 - (s2 - 1.0) * std::sqrt(s4 - 2.0 * s2 + 5.0) + 3.0) /
         (2.0 * (s6 - s4 + 3.0 * s2 + 1.0));
}

double protocol2_lower_critical_prior(double s) { return s * s / (1.0 + s * s); }

namespace {

double protocol2_case_one(double p1, double s) {
  const double p2 = 1.0 - p1;
  const double a = std::sqrt(p1 * p2) * s;
  const double p1c = (p1 - a) / (1.0 - 2.0 * a);
  const double p2c = (p2 - a) / (1.0 - 2.0 * a);
  return (1.0 - 2.0 * a) * (1.0 - 2.0 * std::sqrt(p1c * p2c) * s);
}

double protocol2_case_two(double p1, double s) {
  const double p2 = 1.0 - p1;
  return (p2 - std::sqrt(p1 * p2) * s) * (1.0 - s * s);
}

}  // namespace

PiecewiseResult protocol2_optimal(const Scenario &scenario) {
  const double s = scenario.s();
  const double p1 = scenario.p1();
  const double p2 = scenario.p2();
  const double upper = protocol2_upper_critical_prior(s);
  const double lower = protocol2_lower_critical_prior(s);

  // The two upper branches must meet at the closed-form critical prior.
  if (s > 0.0 && s < 1.0) {
    const double gap = protocol2_case_one(upper, s) - protocol2_case_two(upper, s);
    if (std::abs(gap) > 1e-9) {
      throw NumericError("protocol 2 branches disagree by " + fmt(gap) +
                         " at the critical prior " + fmt(upper));
    }
  }

  PiecewiseResult out;
  out.t = 1.0;
  out.boundary_priors = {lower, upper};
  if (p1 > upper) {
    const double a = std::sqrt(p1 * p2) * s;
    const double p1c = (p1 - a) / (1.0 - 2.0 * a);
    const double p2c = (p2 - a) / (1.0 - 2.0 * a);
    out.value = protocol2_case_one(p1, s);
    out.label = Case::kI;
    out.first = single_observer_optimal(p1, s).first;
    if (s == 0.0) {
      out.second = StrategyParams::from_q1(0.0, 0.0);
    } else {
      out.second = StrategyParams::from_pair(std::min(std::sqrt(p2c / p1c) * s, 1.0),
                                             std::sqrt(p1c / p2c) * s, s);
    }
  } else if (p1 >= lower) {
    out.value = protocol2_case_two(p1, s);
    out.label = Case::kII;
    out.first = StrategyParams::from_pair(std::min(std::sqrt(p2 / p1) * s, 1.0),
                                          std::sqrt(p1 / p2) * s, s);
    out.second = StrategyParams::from_q1(1.0, s);
  } else {
    out.value = p2 * (1.0 - s * s);
    out.label = Case::kIII;
    out.first = StrategyParams::from_q1(1.0, s);
  }
  return out;
}

CloneParams clone_params_of_omega(double omega, double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw DomainError("clone_params_of_omega requires 0 < s < 1; got s=" + fmt(s));
  }
  const double omega1 = 1.0 / (1.0 + s);
  const double omega2 = 1.0 / (1.0 + s * s);
  if (!(omega >= omega1 - kBoundaryTol && omega <= omega2 + kBoundaryTol)) {
    throw DomainError("omega=" + fmt(omega) + " outside [" + fmt(omega1) + ", " + fmt(omega2) +
                      "]");
  }
  omega = std::clamp(omega, omega1, omega2);

  CloneParams c;
  c.s = s;
  c.omega = omega;
  c.x = std::clamp((1.0 - (1.0 + s * s) * omega) / s, -1.0, 1.0);
  // 1 - y vanishes at omega1; form it from omega - omega1 to avoid cancellation.
  const double one_minus_y = std::clamp((1.0 - s * s) * (omega - omega1) / s, 0.0, 2.0);
  c.y = 1.0 - one_minus_y;
  const double sx = std::sqrt(1.0 - c.x * c.x);
  const double sy = std::sqrt(one_minus_y * (2.0 - one_minus_y));
  c.gamma1 = std::clamp(0.5 * (1.0 + c.x * c.y - sx * sy), 0.0, 1.0);
  c.gamma2 = std::clamp(0.5 * (1.0 + c.x * c.y + sx * sy), 0.0, 1.0);

  // d gamma_i / d omega carries a 1/sqrt(1-y^2) factor that diverges at
  // omega1. The ratios below only need the derivatives scaled by sqrt(1-y^2),
  // which stay finite on the closed range.
  const double c1 = std::sqrt(c.gamma1 * (1.0 - c.gamma1)) / s;
  const double c2 = std::sqrt(c.gamma2 * (1.0 - c.gamma2)) / s;
  const double lead = (1.0 + s * s) * sy / sx;
  const double scaled1 = c1 * (-lead - (1.0 - s * s));
  const double scaled2 = c2 * (-lead + (1.0 - s * s));
  if (sy > 0.0) {
    c.dgamma1 = scaled1 / sy;
    c.dgamma2 = scaled2 / sy;
  } else {
    c.dgamma1 = -kInf;
    c.dgamma2 = kInf;
  }
  const double denom = scaled2 - scaled1;
  c.p1_of_omega = std::clamp(scaled2 / denom, 0.0, 0.5);
  c.p_cl = (scaled2 * c.gamma1 - scaled1 * c.gamma2) / denom;
  const double achieved = c.p1_of_omega * c.gamma1 + (1.0 - c.p1_of_omega) * c.gamma2;
  c.p1_cl = c.p1_of_omega * c.gamma1 / achieved;
  c.p2_cl = (1.0 - c.p1_of_omega) * c.gamma2 / achieved;
  return c;
}

CloneParams clone_optimal_for_prior(const Scenario &scenario) {
  const double s = scenario.s();
  const double p1 = scenario.p1();
  if (s == 0.0 || s == 1.0) {
    return trivial_clone(scenario);
  }
  const double omega1 = 1.0 / (1.0 + s);
  const double omega2 = 1.0 / (1.0 + s * s);

  CloneParams c;
  if (p1 == 0.5) {
    c = clone_params_of_omega(omega1, s);
  } else {
    // p1_of_omega behaves like 1/2 - k sqrt(omega - omega1) near omega1, so
    // bisect in u with omega = omega1 + (omega2 - omega1) u^2.
    const auto omega_of = [&](double u) { return omega1 + (omega2 - omega1) * u * u; };
    const auto excess = [&](double u) { return clone_params_of_omega(omega_of(u), s).p1_of_omega - p1; };
    double lo = 0.0;
    double hi = 1.0;
    if (!(excess(lo) > 0.0 && excess(hi) < 0.0)) {
      throw NumericError("cannot bracket omega for p1=" + fmt(p1) + ", s=" + fmt(s));
    }
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (excess(mid) > 0.0 ? lo : hi) = mid;
    }
    c = clone_params_of_omega(omega_of(0.5 * (lo + hi)), s);
    if (std::abs(c.p1_of_omega - p1) > 1e-9) {
      throw NumericError("omega inversion missed p1=" + fmt(p1) + " (reached " +
                         fmt(c.p1_of_omega) + ")");
    }
  }
  // Report the success and conditional priors for the scenario's exact prior.
  c.p_cl = p1 * c.gamma1 + scenario.p2() * c.gamma2;
  c.p1_cl = p1 * c.gamma1 / c.p_cl;
  c.p2_cl = scenario.p2() * c.gamma2 / c.p_cl;
  return c;
}

CloningResult protocol3_optimal(const Scenario &scenario) {
  const double s = scenario.s();
  CloningResult out;
  out.clone = clone_optimal_for_prior(scenario);
  const PiecewiseResult stage = single_observer_optimal(out.clone.p1_cl, s);
  out.result = stage;
  out.result.value = out.clone.p_cl * stage.value * stage.value;
  out.result.second = stage.first;
  out.result.boundary_priors.clear();
  if (s > 0.0 && s < 1.0) {
    out.result.boundary_priors = {cloning_branch_prior(s)};
  }
  return out;
}

PiecewiseResult at_least_one_ssd(const Scenario &scenario) {
  PiecewiseResult out = protocol1_optimal(scenario);
  out.second = StrategyParams::from_q1(1.0, 1.0);

  const double s = scenario.s();
  if (s > 0.0 && s < 1.0) {
    // Feasible (t, q1b, q1c) with q1b = r^(2(1-v)), q1c = t^(2(1-w)).
    constexpr int kT = 17;
    constexpr int kQ = 33;
    for (int i = 0; i < kT; ++i) {
      const double t = s + (1.0 - s) * i / (kT - 1);
      const double r = s / t;
      for (int j = 0; j < kQ; ++j) {
        const double v = static_cast<double>(j) / (kQ - 1);
        const double q1b = std::pow(r, 2.0 * (1.0 - v));
        const double q2b = std::pow(r, 2.0 * v);
        for (int k = 0; k < kQ; ++k) {
          const double w = static_cast<double>(k) / (kQ - 1);
          const double q1c = std::pow(t, 2.0 * (1.0 - w));
          const double q2c = std::pow(t, 2.0 * w);
          const double v_at = 1.0 - scenario.p1() * q1b * q1c - scenario.p2() * q2b * q2c;
          if (v_at > out.value + 1e-9) {
            throw NumericError("at-least-one SSD point t=" + fmt(t) + " beats the closed form: " +
                               fmt(v_at) + " > " + fmt(out.value));
          }
        }
      }
    }
  }
  return out;
}

CloningResult at_least_one_protocol3(const Scenario &scenario) {
  const double s = scenario.s();
  CloningResult out;
  out.clone = clone_optimal_for_prior(scenario);
  const double p1c = out.clone.p1_cl;
  const double p2c = out.clone.p2_cl;
  const PiecewiseResult stage = single_observer_optimal(p1c, s);
  out.result = stage;
  out.result.second = stage.first;
  if (stage.label == Case::kI) {
    out.result.value = out.clone.p_cl * (1.0 - 4.0 * p1c * p2c * s * s);
  } else {
    const double miss = p1c + p2c * s * s;
    out.result.value = out.clone.p_cl * (1.0 - miss * miss);
  }
  out.result.boundary_priors.clear();
  if (s > 0.0 && s < 1.0) {
    out.result.boundary_priors = {cloning_branch_prior(s)};
  }
  return out;
}

}  // namespace seqdisc

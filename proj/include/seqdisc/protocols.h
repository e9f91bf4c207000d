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

#ifndef SEQDISC_PROTOCOLS_H_
#define SEQDISC_PROTOCOLS_H_

#include "seqdisc/core.h"
#include "seqdisc/ssd.h"

namespace seqdisc {

// Priors of the two states conditioned on Bob's success.
struct ConditionalPriors {
  double p1_prime = 0.0;
  double p2_prime = 1.0;
};

/// Optimal probabilistic cloning, parametrized by omega in
/// [1/(1+s), 1/(1+s^2)]. Every field is a function of (omega, s); the prior
/// for which omega is optimal is `p1_of_omega`.
struct CloneParams {
  double s = 0.0;
  double omega = 0.0;
  // x = cos(theta1 + theta2), y = cos(theta1 - theta2), sin(theta_i)^2 = 1 - gamma_i.
  double x = 0.0;
  double y = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  // d gamma_i / d omega. Infinite at omega = 1/(1+s).
  double dgamma1 = 0.0;
  double dgamma2 = 0.0;
  double p_cl = 0.0;
  double p1_of_omega = 0.0;
  double p1_cl = 0.0;
  double p2_cl = 0.0;
};

// Residual of s = sqrt(g1 g2) s^2 + sqrt((1-g1)(1-g2)) (equal success flags).
double cloning_constraint_residual(double s, double gamma1, double gamma2);

/// Bob discriminates optimally with t = 1 and reports to Charlie; both learn
/// the state iff Bob succeeds.
PiecewiseResult protocol1_optimal(const Scenario &scenario);

/// Priors after Bob's success: P_i (1 - q_i) / (P1 (1 - q1) + P2 (1 - q2)),
/// with q2 = s^2 / q1. Throws ConstraintError when Bob can never succeed.
ConditionalPriors conditional_priors_after_bob(const Scenario &scenario, double q1b);

// s^2 [s^4 - (s^2-1) sqrt(s^4 - 2 s^2 + 5) + 3] / (2 (s^6 - s^4 + 3 s^2 + 1)).
double protocol2_upper_critical_prior(double s);
// s^2 / (1 + s^2).
double protocol2_lower_critical_prior(double s);

/// Bob discriminates optimally and resends the identified state; Charlie then
/// discriminates optimally for the conditional priors. Three branches:
///   CaseI   (P1 > Pc1):        (1 - 2 sqrt(P1 P2) s)(1 - 2 sqrt(P1c P2c) s)
///   CaseII  (Pc2 <= P1 <= Pc1): (P2 - sqrt(P1 P2) s)(1 - s^2)
///   CaseIII (P1 < Pc2):        P2 (1 - s^2)
/// In CaseIII Charlie knows he holds Psi2 and `second` is empty.
PiecewiseResult protocol2_optimal(const Scenario &scenario);

/// Requires 0 < s < 1 and omega in [1/(1+s), 1/(1+s^2)].
CloneParams clone_params_of_omega(double omega, double s);

/// Inverse of p1_of_omega: the optimal cloning parameters for the scenario's
/// prior, located by bisection on omega.
CloneParams clone_optimal_for_prior(const Scenario &scenario);

struct CloningResult {
  PiecewiseResult result;
  CloneParams clone;
};

/// Bob clones with optimal success probability, then Bob and Charlie each
/// discriminate optimally with the post-cloning conditional priors.
CloningResult protocol3_optimal(const Scenario &scenario);

/// At least one of Bob and Charlie succeeds in SSD. Equal to
/// protocol1_optimal; a coarse grid over (t, q1b, q1c) re-checks that on
/// every call and throws NumericError if any feasible point beats it.
PiecewiseResult at_least_one_ssd(const Scenario &scenario);

/// At least one of Bob and Charlie succeeds after cloning:
///   CaseI  (P1cl >= s^2/(1+s^2)): Pcl (1 - 4 P1cl P2cl s^2)
///   CaseII otherwise:             Pcl (1 - (P1cl + P2cl s^2)^2)
CloningResult at_least_one_protocol3(const Scenario &scenario);

}  // namespace seqdisc

#endif  // SEQDISC_PROTOCOLS_H_

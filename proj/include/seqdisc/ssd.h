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

#ifndef SEQDISC_SSD_H_
#define SEQDISC_SSD_H_

#include <optional>
#include <string_view>
#include <vector>

#include "seqdisc/core.h"

namespace seqdisc {

enum class Case { kI, kII, kIII };

std::string_view to_string(Case c);

/// Optimal value of one piecewise closed form together with the branch that
/// produced it and the optimizing strategy.
struct PiecewiseResult {
  double value = 0.0;
  Case label = Case::kI;
  // Overlap of the first observer's post-measurement states, when it is a
  // free variable of the problem.
  std::optional<double> t;
  // Strategy of the first observer (Bob, or the only observer).
  std::optional<StrategyParams> first;
  // Strategy of the second observer (Charlie).
  std::optional<StrategyParams> second;
  // Critical priors separating the branches, ascending.
  std::vector<double> boundary_priors;
};

/// Optimal unambiguous discrimination of two states with overlap `overlap` by
/// a single observer, priors (p1, 1 - p1) with 0 <= p1 <= 1/2:
///   CaseI  (p1 >= o^2/(1+o^2)): 1 - 2 sqrt(p1 p2) o, q1 = sqrt(p2/p1) o
///   CaseII otherwise:           p2 (1 - o^2),        q1 = 1
/// At the boundary both branches coincide and CaseI is reported.
PiecewiseResult single_observer_optimal(double p1, double overlap);

// Bob's average success P1 (1 - q1b) + P2 (1 - q2b) with q1b q2b = s^2/t^2.
double bob_success(const Scenario &scenario, double t, double q1b);

PiecewiseResult bob_optimal(const Scenario &scenario, double t);

PiecewiseResult charlie_optimal(const Scenario &scenario, double t);

/// Probability that both Bob and Charlie identify the state:
/// P1 (1-q1b)(1-q1c) + P2 (1-q2b)(1-q2c), q1b q2b = s^2/t^2, q1c q2c = t^2.
double joint_success(const Scenario &scenario, double t, double q1b, double q1c);

/// Root of P1 q^4 - P1 q^3 + P2 s q - P2 s^2 in [s, 1] that maximizes
/// P1 (1-q)^2 + P2 (1 - s/q)^2. Requires 0 < s < 1.
double solve_q_star(const Scenario &scenario);

// Joint objective at t = sqrt(s), q1b = q1c = q* (the interior branch).
double joint_case_one_value(const Scenario &scenario);
// Joint objective at q1b = q1c = 1: P2 (1 - s)^2.
double joint_case_two_value(const Scenario &scenario);

PiecewiseResult joint_optimal(const Scenario &scenario);

struct CriticalPrior {
  double value = 0.5;
  // True when s >= 3 - 2 sqrt(2): the interior branch never wins on (0, 1/2]
  // and `value` is the sentinel 1/2.
  bool case_one_vanishes = false;
};

/// Prior P_C at which the two branches of the joint optimum exchange, found
/// by bisection on P1 with q* re-solved at every iterate. Requires 0 < s < 1.
CriticalPrior critical_prior(double s);

}  // namespace seqdisc

#endif  // SEQDISC_SSD_H_

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

#ifndef SEQDISC_CORRELATIONS_H_
#define SEQDISC_CORRELATIONS_H_

#include <optional>

#include "seqdisc/core.h"

namespace seqdisc {

/// Bob's system-ancilla state
///   rho_AB = P1 |phi1 a1><phi1 a1| + P2 |phi2 a2><phi2 a2|
/// is fixed up to local unitaries by the prior and the two overlaps
/// t = <phi1|phi2> (qubit A) and r = <a1|a2> = s/t (ancilla B).
class CorrelationInput {
 public:
  CorrelationInput(double p1, double t, double r);
  // From the SSD variables: r = s / t.
  static CorrelationInput from_overlaps(double p1, double s, double t);

  double p1() const { return p1_; }
  double p2() const { return 1.0 - p1_; }
  double t() const { return t_; }
  double r() const { return r_; }
  double s() const { return t_ * r_; }

  CorrelationInput swapped() const { return CorrelationInput(p1_, r_, t_); }

 private:
  double p1_;
  double t_;
  double r_;
};

// Tangles of the purification sqrt(P1)|phi1 a1 0> + sqrt(P2)|phi2 a2 1>.
struct Tangles {
  double tau_abe = 0.0;   // residual three-way tangle
  double tau_a_be = 0.0;  // A versus BE
  double tau_b_ae = 0.0;  // B versus AE
  double tau_e_ab = 0.0;  // E versus AB
};

struct CorrelationReport {
  Tangles tangles;
  double d_right = 0.0;  // D_AB, measurement on the ancilla B
  double d_left = 0.0;   // D_BA, measurement on the qubit A
  // Undefined (empty) when both discords vanish.
  std::optional<double> prop_left;
  std::optional<double> prop_right;
  double d_symm = 0.0;
};

Tangles tangles(const CorrelationInput &input);

/// Koashi-Winter form D_AB = H(tau_B|AE) - H(tau_E|AB) + H(tau_A|BE - tau_ABE), bits.
double discord_right(const CorrelationInput &input);

/// D_BA: discord_right with t and r exchanged.
double discord_left(const CorrelationInput &input);

CorrelationReport correlation_report(const CorrelationInput &input);

/// Left discord computed from its definition on an explicit rho_AB: the
/// post-measurement conditional entropy of B is minimized over rank-1
/// projective measurements on A on a 181 x 361 (polar, azimuth) grid, followed
/// by one golden-section pass per angle. Independent of the tangle route.
double left_discord_measurement_oracle(const CorrelationInput &input);

}  // namespace seqdisc

#endif  // SEQDISC_CORRELATIONS_H_

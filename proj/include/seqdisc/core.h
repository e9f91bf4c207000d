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

#ifndef SEQDISC_CORE_H_
#define SEQDISC_CORE_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "seqdisc/errors.h"

namespace seqdisc {

// Floating-point slack absorbed at interval boundaries.
inline constexpr double kBoundaryTol = 1e-12;

// Overlap 3 - 2*sqrt(2) above which the joint optimum ignores one state even
// at equal priors.
inline constexpr double kSymmetryBreakingOverlap = 0.17157287525380990239662255158060;

/// Problem instance: two real pure states with overlap s = <Psi1|Psi2>,
/// prepared with priors p1 and p2 = 1 - p1.
///
/// The constructor enforces 0 <= s <= 1 and 0 < p1 <= 1/2. Priors above 1/2
/// must be handled by relabelling the states.
class Scenario {
 public:
  Scenario(double s, double p1);

  double s() const { return s_; }
  double p1() const { return p1_; }
  double p2() const { return 1.0 - p1_; }

 private:
  double s_;
  double p1_;
};

/// Real pure state with unit norm (checked to 1e-12 on construction).
class PureState {
 public:
  explicit PureState(std::vector<double> amplitudes);

  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const double> amplitudes() const { return amplitudes_; }
  double operator[](std::size_t i) const { return amplitudes_[i]; }

  double inner(const PureState &other) const;

 private:
  std::vector<double> amplitudes_;
};

// Kronecker product a (x) b; index of a is major.
PureState tensor(const PureState &a, const PureState &b);

/// Failure parameters (q1, q2) of one unambiguous discrimination stage,
/// constrained by q1 * q2 = r^2 with r^2 <= q1, q2 <= 1.
class StrategyParams {
 public:
  // Derives q2 = r^2 / q1. When r = 0 the product constraint leaves q2 free
  // and q2 = 0 is taken.
  static StrategyParams from_q1(double q1, double r);
  // Both parameters explicit; the product must equal r^2 within 1e-12.
  static StrategyParams from_pair(double q1, double q2, double r);

  double q1() const { return q1_; }
  double q2() const { return q2_; }
  double r() const { return r_; }

 private:
  StrategyParams(double q1, double q2, double r) : q1_(q1), q2_(q2), r_(r) {}

  double q1_;
  double q2_;
  double r_;
};

/// Two states cos(theta) e0 +/- sin(theta) e1 embedded in dimension `dim`,
/// with cos(2 theta) = s so that their overlap is s.
std::pair<PureState, PureState> make_state_pair(double s, std::size_t dim);

/// Shannon entropy of a two-outcome distribution (p, 1-p), in bits.
double binary_entropy(double p);

/// H(x) = h((1 + sqrt(1 - x)) / 2): entropy of formation of a two-qubit state
/// with squared concurrence x, and the von Neumann entropy of a qubit with
/// tangle x. Inputs within 1e-12 outside [0,1] are clamped.
double entropy_H(double x);

}  // namespace seqdisc

#endif  // SEQDISC_CORE_H_

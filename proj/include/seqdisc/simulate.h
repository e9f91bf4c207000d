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

#ifndef SEQDISC_SIMULATE_H_
#define SEQDISC_SIMULATE_H_

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <utility>

#include "seqdisc/core.h"

namespace seqdisc {

using Matrix6 = Eigen::Matrix<double, 6, 6>;

/// Real orthogonal operator on qubit (x) qutrit, basis index 3 * qubit + qutrit.
class JointUnitary {
 public:
  // Throws NumericError unless |M^T M - I|_max < 1e-12.
  explicit JointUnitary(const Matrix6 &matrix);

  const Matrix6 &matrix() const { return matrix_; }
  PureState apply(const PureState &state) const;
  double unitarity_residual() const;

 private:
  Matrix6 matrix_;
};

/// Orthogonal U with U inputs[i] = targets[i], all vectors of dimension 6.
/// Both pairs are orthonormalized in order and completed by the standard
/// basis, so the result is deterministic. Throws ConstraintError when the
/// Gram matrices differ by more than 1e-10.
JointUnitary build_discrimination_unitary(const std::pair<PureState, PureState> &inputs,
                                          const std::pair<PureState, PureState> &targets);

/// One discrimination stage: states with overlap `in_overlap` and ancilla |0>
/// go to |phi_i> (x) (sqrt(q_i)|0> + sqrt(1 - q_i)|i>), where the phi_i have
/// overlap `out_overlap` and q1 q2 = (in_overlap / out_overlap)^2.
JointUnitary stage_unitary(double in_overlap, double out_overlap, double q1);

struct TrialSummary {
  std::int64_t n_trials = 0;
  std::uint64_t seed = 0;
  // counts[state][bob succeeded][charlie succeeded]
  std::array<std::array<std::array<std::int64_t, 2>, 2>, 2> counts{};
  // Declarations naming the wrong state; zero by construction.
  std::int64_t error_count = 0;

  std::int64_t bob_successes() const;
  std::int64_t charlie_successes() const;
  std::int64_t joint_successes() const;
  std::int64_t total() const;
};

struct ExpectedRates {
  double bob = 0.0;
  double charlie = 0.0;
  double joint = 0.0;
};

ExpectedRates expected_rates(const Scenario &scenario, double t, double q1b, double q1c);

/// Monte Carlo of the Bob -> Charlie chain. Bob applies stage_unitary(s, t,
/// q1b) and measures his qutrit; the qubit, in whatever state that leaves it,
/// goes through Charlie's stage_unitary(t, 1, q1c). Trial k draws from a
/// counter-based stream keyed by (seed, k), so the summary does not depend on
/// `threads`.
TrialSummary run_ssd_trials(const Scenario &scenario, double t, double q1b, double q1c,
                            std::int64_t n, std::uint64_t seed, int threads = 1);

/// |count/n - p| <= sigmas * sqrt(p (1-p) / n); for p in {0, 1} the count
/// must be exact.
bool within_binomial_sigmas(std::int64_t count, std::int64_t n, double p, double sigmas = 5.0);

}  // namespace seqdisc

#endif  // SEQDISC_SIMULATE_H_

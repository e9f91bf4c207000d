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

#include "seqdisc/simulate.h"

#include <gtest/gtest.h>

#include <cmath>

#include "seqdisc/ssd.h"

namespace seqdisc {
namespace {

TEST(UnitaryTest, StageMapsInputsToTargets) {
  const double s = 0.36, t = 0.6, q1 = 0.6;
  const JointUnitary u = stage_unitary(s, t, q1);
  EXPECT_LT(u.unitarity_residual(), 1e-12);
  const auto [psi1, psi2] = make_state_pair(s, 2);
  const auto [phi1, phi2] = make_state_pair(t, 2);
  const PureState zero = PureState::basis(3, 0);
  const PureState out1 = u.apply(tensor(psi1, zero));
  const PureState out2 = u.apply(tensor(psi2, zero));
  const double q = std::sqrt(q1), f = std::sqrt(1 - q1);
  const PureState a1({q, f, 0.0});
  const PureState a2({q, 0.0, f});
  const PureState y1 = tensor(phi1, a1);
  const PureState y2 = tensor(phi2, a2);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_NEAR(out1[i], y1[i], 1e-10);
    EXPECT_NEAR(out2[i], y2[i], 1e-10);
  }
}

TEST(UnitaryTest, IdentityOnQubitWhenPostOverlapIsOne) {
  const JointUnitary u = stage_unitary(0.3, 1.0, 0.5);
  EXPECT_LT(u.unitarity_residual(), 1e-12);
}

TEST(UnitaryTest, RejectsGramMismatch) {
  const auto [psi1, psi2] = make_state_pair(0.3, 2);
  const auto [phi1, phi2] = make_state_pair(0.5, 2);
  const auto [a1, a2] = make_state_pair(0.5, 3);
  const PureState zero = PureState::basis(3, 0);
  try {
    build_discrimination_unitary({tensor(psi1, zero), tensor(psi2, zero)},
                                 {tensor(phi1, a1), tensor(phi2, a2)});
    FAIL() << "expected ConstraintError";
  } catch (const ConstraintError &e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("input Gram"), std::string::npos);
    EXPECT_NE(msg.find("target Gram"), std::string::npos);
  }
}

TEST(UnitaryTest, RejectsNonOrthogonalMatrix) {
  Matrix6 m = Matrix6::Identity();
  m(0, 1) = 1e-6;
  EXPECT_THROW(JointUnitary{m}, NumericError);
}

TEST(TrialsTest, JointSuccessAtEqualPriorOptimum) {
  const Scenario sc(0.04, 0.5);
  const TrialSummary sum = run_ssd_trials(sc, 0.2, 0.2, 0.2, 1000000, 42);
  EXPECT_EQ(sum.total(), 1000000);
  EXPECT_EQ(sum.error_count, 0);
  EXPECT_TRUE(within_binomial_sigmas(sum.joint_successes(), sum.n_trials, 0.64));
  const ExpectedRates r = expected_rates(sc, 0.2, 0.2, 0.2);
  EXPECT_TRUE(within_binomial_sigmas(sum.bob_successes(), sum.n_trials, r.bob));
  EXPECT_TRUE(within_binomial_sigmas(sum.charlie_successes(), sum.n_trials, r.charlie));
}

TEST(TrialsTest, DeterministicAcrossThreadCounts) {
  const Scenario sc(0.2, 0.3);
  const TrialSummary a = run_ssd_trials(sc, 0.5, 0.3, 0.5, 20000, 7, 1);
  const TrialSummary b = run_ssd_trials(sc, 0.5, 0.3, 0.5, 20000, 7, 3);
  const TrialSummary c = run_ssd_trials(sc, 0.5, 0.3, 0.5, 20000, 8, 1);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_NE(a.counts, c.counts);
}

TEST(TrialsTest, NoInformationWhenOverlapUnchanged) {
  const TrialSummary sum = run_ssd_trials(Scenario(0.3, 0.4), 0.3, 1.0, 0.5, 10000, 1);
  EXPECT_EQ(sum.bob_successes(), 0);
}

TEST(TrialsTest, NeverMisidentifiesAcrossParameters) {
  std::uint64_t seed = 100;
  for (double s : {0.0, 0.1, 0.5, 0.9}) {
    for (double p1 : {0.1, 0.5}) {
      const Scenario sc(s, p1);
      for (double t : {0.2, 0.6, 1.0}) {
        if (t < s) continue;
        const double r2 = (s / t) * (s / t);
        for (double fb : {0.0, 0.5, 1.0}) {
          const double q1b = r2 + (1.0 - r2) * fb;
          const double q1c = t * t + (1.0 - t * t) * 0.3;
          const TrialSummary sum = run_ssd_trials(sc, t, q1b, q1c, 20000, ++seed);
          EXPECT_EQ(sum.error_count, 0);
          const ExpectedRates r = expected_rates(sc, t, q1b, q1c);
          EXPECT_TRUE(within_binomial_sigmas(sum.bob_successes(), sum.n_trials, r.bob));
          EXPECT_TRUE(within_binomial_sigmas(sum.joint_successes(), sum.n_trials, r.joint));
        }
      }
    }
  }
}

TEST(TrialsTest, SingleTrialAndBadInputs) {
  const TrialSummary one = run_ssd_trials(Scenario(0.2, 0.5), 0.5, 0.4, 0.5, 1, 3);
  EXPECT_EQ(one.total(), 1);
  EXPECT_THROW(run_ssd_trials(Scenario(0.2, 0.5), 0.5, 0.4, 0.5, 0, 3), ConstraintError);
  EXPECT_THROW(run_ssd_trials(Scenario(0.2, 0.5), 0.5, 0.01, 0.5, 10, 3), ConstraintError);
  EXPECT_THROW(run_ssd_trials(Scenario(0.2, 0.5), 0.1, 0.5, 0.5, 10, 3), ConstraintError);
}

TEST(BinomialCheckTest, DegenerateProbabilities) {
  EXPECT_TRUE(within_binomial_sigmas(0, 10, 0.0));
  EXPECT_FALSE(within_binomial_sigmas(1, 10, 0.0));
  EXPECT_TRUE(within_binomial_sigmas(10, 10, 1.0));
  EXPECT_FALSE(within_binomial_sigmas(500, 1000, 0.4));
}

}  // namespace
}  // namespace seqdisc

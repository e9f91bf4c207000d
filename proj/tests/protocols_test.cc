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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "seqdisc/oracle.h"

namespace seqdisc {
namespace {

TEST(Protocol1Test, Examples) {
  EXPECT_NEAR(protocol1_optimal(Scenario(0.04, 0.5)).value, 0.96, 1e-15);
  EXPECT_EQ(protocol1_optimal(Scenario(0.0, 0.5)).value, 1.0);
  const PiecewiseResult r = protocol1_optimal(Scenario(0.2, 0.001));
  EXPECT_EQ(r.label, Case::kII);
  EXPECT_NEAR(r.value, 0.95904, 1e-14);
}

TEST(ConditionalPriorsTest, Examples) {
  const ConditionalPriors eq = conditional_priors_after_bob(Scenario(0.04, 0.5), 0.04);
  EXPECT_NEAR(eq.p1_prime, 0.5, 1e-15);
  EXPECT_NEAR(eq.p2_prime, 0.5, 1e-15);

  const ConditionalPriors ignore = conditional_priors_after_bob(Scenario(0.1, 0.3), 1.0);
  EXPECT_EQ(ignore.p1_prime, 0.0);
  EXPECT_EQ(ignore.p2_prime, 1.0);

  const double p1 = 0.3, p2 = 0.7, s = 0.1;
  const double a = std::sqrt(p1 * p2) * s;
  const ConditionalPriors c =
      conditional_priors_after_bob(Scenario(s, p1), std::sqrt(p2 / p1) * s);
  EXPECT_NEAR(c.p1_prime, (p1 - a) / (1.0 - 2.0 * a), 1e-14);
  EXPECT_NEAR(c.p1_prime + c.p2_prime, 1.0, 1e-12);
}

TEST(ConditionalPriorsTest, DegenerateStrategyThrows) {
  EXPECT_THROW(conditional_priors_after_bob(Scenario(1.0, 0.3), 1.0), ConstraintError);
  EXPECT_THROW(conditional_priors_after_bob(Scenario(0.5, 0.3), 0.1), ConstraintError);
}

TEST(Protocol2Test, EqualPriors) {
  const PiecewiseResult r = protocol2_optimal(Scenario(0.04, 0.5));
  EXPECT_NEAR(r.value, 0.9216, 1e-14);
  EXPECT_EQ(r.label, Case::kI);
}

TEST(Protocol2Test, JumpAtLowerCriticalPrior) {
  const double s = 0.2;
  const double pc2 = protocol2_lower_critical_prior(s);
  const double below = pc2 * (1.0 - 1e-9);
  const PiecewiseResult left = protocol2_optimal(Scenario(s, below));
  EXPECT_EQ(left.label, Case::kIII);
  EXPECT_NEAR(left.value, 0.96 * (1.0 - below), 1e-15);
  EXPECT_FALSE(left.second.has_value());
  const PiecewiseResult right = protocol2_optimal(Scenario(s, pc2));
  EXPECT_EQ(right.label, Case::kII);
  EXPECT_GT(left.value - right.value, 1e-3);
}

TEST(Protocol2Test, ContinuousAtUpperCriticalPrior) {
  for (double s : {0.05, 0.2, 0.5, 0.8}) {
    const double pc1 = protocol2_upper_critical_prior(s);
    EXPECT_LE(protocol2_lower_critical_prior(s), pc1);
    const double above = protocol2_optimal(Scenario(s, std::min(0.5, pc1 * (1 + 1e-12)))).value;
    const double at = protocol2_optimal(Scenario(s, pc1)).value;
    EXPECT_NEAR(above, at, 1e-9);
  }
}

TEST(Protocol2Test, CriticalPriorsOrderedOnDenseGrid) {
  for (int i = 1; i < 1000; ++i) {
    const double s = i / 1000.0;
    EXPECT_LE(protocol2_lower_critical_prior(s), protocol2_upper_critical_prior(s) + 1e-15);
  }
}

TEST(Protocol2Test, UpperCriticalPriorMakesConditionalPriorHitBoundary) {
  for (double s : {0.1, 0.2, 0.6}) {
    const double p1 = protocol2_upper_critical_prior(s);
    const double a = std::sqrt(p1 * (1.0 - p1)) * s;
    EXPECT_NEAR((p1 - a) / (1.0 - 2.0 * a), s * s / (1.0 + s * s), 1e-12);
  }
}

TEST(Protocol2Test, MatchesSequentialOracleAcrossBranches) {
  const double s = 0.2;
  const double pc2 = protocol2_lower_critical_prior(s);
  const double pc1 = protocol2_upper_critical_prior(s);
  for (double p1 : {0.5 * pc2, 0.999 * pc2, pc2 * 1.001, 0.5 * (pc1 + pc2), 0.3, 0.5}) {
    const Scenario sc(s, p1);
    EXPECT_NEAR(protocol2_optimal(sc).value, grid_maximize_protocol2(sc).value, 1e-5)
        << "p1=" << p1;
  }
}

TEST(CloneParamsTest, EqualPriorEndpoint) {
  const double s = 0.36;
  const CloneParams c = clone_params_of_omega(1.0 / (1.0 + s), s);
  EXPECT_NEAR(c.gamma1, 1.0 / (1.0 + s), 1e-12);
  EXPECT_NEAR(c.gamma2, 1.0 / (1.0 + s), 1e-12);
  EXPECT_NEAR(c.gamma1, 0.7353, 1e-4);
  EXPECT_NEAR(c.p1_of_omega, 0.5, 1e-12);
  EXPECT_NEAR(c.y, 1.0, 1e-15);
  EXPECT_NEAR(c.x, (1.0 - s) / (1.0 + s), 1e-15);
}

TEST(CloneParamsTest, VanishingPriorEndpoint) {
  const double s = 0.36;
  const CloneParams c = clone_params_of_omega(1.0 / (1.0 + s * s), s);
  EXPECT_NEAR(c.x, 0.0, 1e-15);
  EXPECT_NEAR(c.gamma1, s * s / (1.0 + s * s), 1e-12);
  EXPECT_NEAR(c.gamma2, 1.0 / (1.0 + s * s), 1e-12);
  EXPECT_NEAR(c.p1_of_omega, 0.0, 1e-12);
}

TEST(CloneParamsTest, InteriorInvariants) {
  for (double s : {0.04, 0.2, 0.36, 0.8}) {
    const double w1 = 1.0 / (1.0 + s);
    const double w2 = 1.0 / (1.0 + s * s);
    double prev = 1.0;
    for (int i = 1; i < 1000; ++i) {
      const CloneParams c = clone_params_of_omega(w1 + (w2 - w1) * i / 1000.0, s);
      EXPECT_LT(std::abs(cloning_constraint_residual(s, c.gamma1, c.gamma2)), 1e-10);
      EXPECT_NEAR(c.p1_cl + c.p2_cl, 1.0, 1e-12);
      EXPECT_LE(std::abs(c.x), 1.0);
      EXPECT_LE(std::abs(c.y), 1.0);
      EXPECT_LT(c.p1_of_omega, prev);
      prev = c.p1_of_omega;
    }
  }
}

TEST(CloneParamsTest, RejectsOutOfRange) {
  EXPECT_THROW(clone_params_of_omega(0.5, 0.36), DomainError);
  EXPECT_THROW(clone_params_of_omega(0.9, 0.0), DomainError);
}

TEST(CloneOptimalTest, InversionHitsPrior) {
  for (double s : {0.04, 0.36, 0.9}) {
    for (double p1 : {1e-4, 0.1, 0.3, 0.49, 0.5}) {
      const CloneParams c = clone_optimal_for_prior(Scenario(s, p1));
      EXPECT_NEAR(c.p1_of_omega, p1, 1e-9);
    }
  }
}

TEST(Protocol3Test, Examples) {
  EXPECT_NEAR(protocol3_optimal(Scenario(0.04, 0.5)).result.value, 0.96 * 0.96 / 1.04, 1e-12);
  EXPECT_NEAR(protocol3_optimal(Scenario(0.04, 0.5)).result.value, 0.8862, 1e-4);
  EXPECT_EQ(protocol3_optimal(Scenario(0.0, 0.5)).result.value, 1.0);
  const Scenario sc(0.04, 0.4);
  EXPECT_NEAR(protocol3_optimal(sc).result.value, grid_maximize_protocol3(sc).value, 1e-6);
}

TEST(Protocol3Test, CloningAgreesWithManifoldOracle) {
  for (double s : {0.2, 0.36}) {
    for (double p1 : {0.3, 0.5}) {
      const Scenario sc(s, p1);
      EXPECT_NEAR(clone_optimal_for_prior(sc).p_cl, grid_maximize_cloning(sc).value, 1e-6);
    }
  }
}

TEST(AtLeastOneTest, SsdExamples) {
  EXPECT_NEAR(at_least_one_ssd(Scenario(0.36, 0.5)).value, 0.64, 1e-15);
  EXPECT_EQ(at_least_one_ssd(Scenario(0.0, 0.5)).value, 1.0);
  EXPECT_NEAR(at_least_one_ssd(Scenario(0.36, 0.2)).value, 0.712, 1e-15);
}

TEST(AtLeastOneTest, SsdEqualsProtocol1ForRandomScenarios) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> us(0.0, 1.0);
  std::uniform_real_distribution<double> up(1e-3, 0.5);
  for (int i = 0; i < 1000; ++i) {
    const Scenario sc(us(rng), up(rng));
    EXPECT_NEAR(at_least_one_ssd(sc).value, protocol1_optimal(sc).value, 1e-12);
  }
}

TEST(AtLeastOneTest, Protocol3EqualPriors) {
  const double s = 0.36;
  const CloningResult r = at_least_one_protocol3(Scenario(s, 0.5));
  EXPECT_EQ(r.result.label, Case::kI);
  EXPECT_NEAR(r.result.value, (1.0 - s * s) / (1.0 + s), 1e-12);
  EXPECT_GT(r.result.value, at_least_one_ssd(Scenario(s, 0.5)).value - 1e-12);
}

TEST(AtLeastOneTest, Protocol3SmallPriorLimit) {
  const double s = 0.36;
  const CloningResult r = at_least_one_protocol3(Scenario(s, 1e-9));
  EXPECT_EQ(r.result.label, Case::kII);
  EXPECT_NEAR(r.result.value, r.clone.p_cl * (1.0 - std::pow(s, 4)), 1e-7);
}

TEST(AtLeastOneTest, Protocol3DominatesSsdAtS036) {
  for (int i = 1; i < 100; ++i) {
    const Scenario sc(0.36, 0.005 * i);
    EXPECT_GE(at_least_one_protocol3(sc).result.value, at_least_one_ssd(sc).value);
  }
}

TEST(OrderingTest, ProtocolsBeatSsdAtS004) {
  for (int i = 1; i <= 200; ++i) {
    const Scenario sc(0.04, 0.0025 * i);
    const double p1 = protocol1_optimal(sc).value;
    const double p2 = protocol2_optimal(sc).value;
    const double p3 = protocol3_optimal(sc).result.value;
    const double ssd = joint_optimal(sc).value;
    EXPECT_GE(p1, p2 - 1e-9);
    EXPECT_GE(p2, p3 - 1e-9);
    EXPECT_GE(p3, ssd - 1e-9);
  }
}

TEST(OrderingTest, OptimaNonincreasingInPrior) {
  for (double s : {0.04, 0.36}) {
    double prev[6] = {2, 2, 2, 2, 2, 2};
    for (int i = 1; i <= 100; ++i) {
      const Scenario sc(s, 0.005 * i);
      const double v[6] = {protocol1_optimal(sc).value,         protocol2_optimal(sc).value,
                           protocol3_optimal(sc).result.value, joint_optimal(sc).value,
                           at_least_one_ssd(sc).value, at_least_one_protocol3(sc).result.value};
      for (int k = 0; k < 6; ++k) {
        EXPECT_LE(v[k], prev[k] + 1e-12) << "quantity " << k << " s=" << s;
        prev[k] = v[k];
      }
    }
  }
}

}  // namespace
}  // namespace seqdisc

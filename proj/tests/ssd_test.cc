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

#include "seqdisc/ssd.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace seqdisc {
namespace {

double quartic(const Scenario &sc, double q) {
  const double s = sc.s();
  return sc.p1() * std::pow(q, 4) - sc.p1() * std::pow(q, 3) + sc.p2() * s * q -
         sc.p2() * s * s;
}

TEST(BobSuccessTest, DirectArithmetic) {
  EXPECT_EQ(bob_success(Scenario(0.05, 0.5), 0.05, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(bob_success(Scenario(0.05, 0.5), 0.1, 0.5), 0.5);
  EXPECT_NEAR(bob_success(Scenario(0.05, 0.2), 0.1, 1.0), 0.6, 1e-15);
}

TEST(BobSuccessTest, RejectsInfeasibleArguments) {
  const Scenario sc(0.05, 0.5);
  EXPECT_THROW(bob_success(sc, 0.04, 1.0), DomainError);
  EXPECT_THROW(bob_success(sc, 1.1, 1.0), DomainError);
  EXPECT_THROW(bob_success(sc, 0.1, 0.2), ConstraintError);
}

TEST(BobOptimalTest, Examples) {
  const PiecewiseResult a = bob_optimal(Scenario(0.05, 0.5), 0.1);
  EXPECT_NEAR(a.value, 0.5, 1e-15);
  EXPECT_EQ(a.label, Case::kI);
  const PiecewiseResult b = bob_optimal(Scenario(0.05, 0.1), 0.06);
  EXPECT_NEAR(b.value, 0.9 * (1.0 - std::pow(0.05 / 0.06, 2)), 1e-15);
  EXPECT_NEAR(b.value, 0.2750, 5e-5);
  EXPECT_EQ(b.label, Case::kII);
  EXPECT_EQ(b.first->q1(), 1.0);
  for (double p1 : {0.1, 0.3, 0.5}) {
    EXPECT_EQ(bob_optimal(Scenario(0.2, p1), 0.2).value, 0.0);
  }
}

TEST(BobOptimalTest, ArgmaxReproducesValueAndBeatsGrid) {
  for (double s : {0.0, 0.05, 0.3, 0.7}) {
    for (double p1 : {0.01, 0.1, 0.25, 0.4, 0.5}) {
      const Scenario sc(s, p1);
      for (double t : {0.1, 0.4, 0.8, 1.0}) {
        if (t < s) continue;
        const PiecewiseResult r = bob_optimal(sc, t);
        EXPECT_NEAR(bob_success(sc, t, r.first->q1()), r.value, 1e-12);
        const double lo = std::pow(s / t, 2);
        for (int i = 0; i <= 1000; ++i) {
          const double q1 = lo + (1.0 - lo) * i / 1000.0;
          EXPECT_LE(bob_success(sc, t, q1), r.value + 1e-9);
        }
      }
    }
  }
}

TEST(BobCharlieTest, TradeOffInPostOverlap) {
  for (double s : {0.05, 0.2, 0.5}) {
    for (double p1 : {0.05, 0.2, 0.5}) {
      const Scenario sc(s, p1);
      double prev_b = -1.0;
      double prev_c = 2.0;
      for (int i = 0; i <= 200; ++i) {
        const double t = s + (1.0 - s) * i / 200.0;
        const double b = bob_optimal(sc, t).value;
        const double c = charlie_optimal(sc, t).value;
        EXPECT_GE(b, prev_b - 1e-15);
        EXPECT_LE(c, prev_c + 1e-15);
        prev_b = b;
        prev_c = c;
      }
    }
  }
}

TEST(BobOptimalTest, GrowsAsPriorsBecomeUnequal) {
  const double s = 0.05;
  const double t = 0.1;
  double prev = -1.0;
  for (int i = 0; i < 100; ++i) {
    const double p1 = 0.5 - 0.0049 * i;
    const double v = bob_optimal(Scenario(s, p1), t).value;
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(BobCharlieTest, ContinuousAtCaseBoundary) {
  const double s = 0.05;
  const double t = 0.1;
  const double pb = s * s / (s * s + t * t);
  EXPECT_NEAR(bob_optimal(Scenario(s, pb), t).value,
              bob_optimal(Scenario(s, pb * (1 - 1e-12)), t).value, 1e-9);
  const double pc = t * t / (1 + t * t);
  EXPECT_NEAR(charlie_optimal(Scenario(s, pc), t).value,
              charlie_optimal(Scenario(s, pc * (1 - 1e-12)), t).value, 1e-9);
  // Both branch formulas agree at the boundary.
  const double p2 = 1.0 - pb;
  EXPECT_NEAR(1.0 - 2.0 * std::sqrt(pb * p2) * s / t, p2 * (1.0 - s * s / (t * t)), 1e-12);
}

TEST(CharlieOptimalTest, Examples) {
  EXPECT_NEAR(charlie_optimal(Scenario(0.3, 0.5), 1.0).value, 0.0, 1e-15);
  const PiecewiseResult a = charlie_optimal(Scenario(0.04, 0.5), 0.2);
  EXPECT_NEAR(a.value, 0.8, 1e-15);
  EXPECT_EQ(a.label, Case::kI);
  EXPECT_FALSE(a.first.has_value());
  ASSERT_TRUE(a.second.has_value());
  const PiecewiseResult b = charlie_optimal(Scenario(0.04, 0.02), 0.2);
  EXPECT_NEAR(b.value, 0.9408, 1e-15);
  EXPECT_EQ(b.label, Case::kII);
  EXPECT_EQ(b.second->q1(), 1.0);
}

TEST(JointSuccessTest, Examples) {
  EXPECT_EQ(joint_success(Scenario(0.3, 0.4), 1.0, 0.5, 1.0), 0.0);
  EXPECT_NEAR(joint_success(Scenario(0.04, 0.5), 0.2, 0.2, 0.2), 0.64, 1e-15);
  EXPECT_NEAR(joint_success(Scenario(0.04, 0.5), 0.2, 1.0, 1.0), 0.4608, 1e-15);
  EXPECT_THROW(joint_success(Scenario(0.04, 0.5), 0.2, 0.2, 0.01), ConstraintError);
}

TEST(SolveQStarTest, EqualPriorRootIsSqrtS) {
  EXPECT_NEAR(solve_q_star(Scenario(0.04, 0.5)), 0.2, 1e-13);
  EXPECT_NEAR(solve_q_star(Scenario(0.09, 0.5)), 0.3, 1e-13);
}

TEST(SolveQStarTest, UnequalPriorRootHasSmallResidual) {
  const Scenario sc(0.04, 0.4);
  const double q = solve_q_star(sc);
  EXPECT_GE(q, 0.04);
  EXPECT_LE(q, 1.0);
  EXPECT_LT(std::abs(0.4 * std::pow(q, 4) - 0.4 * std::pow(q, 3) + 0.024 * q - 0.00096), 1e-12);
}

TEST(SolveQStarTest, RandomScenarios) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> us(1e-4, 1.0 - 1e-4);
  std::uniform_real_distribution<double> up(1e-4, 0.5);
  for (int i = 0; i < 1000; ++i) {
    const Scenario sc(us(rng), up(rng));
    const double q = solve_q_star(sc);
    EXPECT_GE(q, sc.s());
    EXPECT_LE(q, 1.0);
    EXPECT_LT(std::abs(quartic(sc, q)), 1e-12) << "s=" << sc.s() << " p1=" << sc.p1();
  }
}

TEST(SolveQStarTest, RejectsDegenerateOverlap) {
  EXPECT_THROW(solve_q_star(Scenario(0.0, 0.3)), DomainError);
  EXPECT_THROW(solve_q_star(Scenario(1.0, 0.3)), DomainError);
}

TEST(JointOptimalTest, Examples) {
  const PiecewiseResult a = joint_optimal(Scenario(0.04, 0.5));
  EXPECT_NEAR(a.value, 0.64, 1e-12);
  EXPECT_EQ(a.label, Case::kI);
  EXPECT_NEAR(*a.t, 0.2, 1e-15);
  const PiecewiseResult b = joint_optimal(Scenario(0.36, 0.5));
  EXPECT_NEAR(b.value, 0.2048, 1e-15);
  EXPECT_EQ(b.label, Case::kII);
  const PiecewiseResult c = joint_optimal(Scenario(0.04, 1e-9));
  EXPECT_NEAR(c.value, 0.9216, 1e-8);
  EXPECT_EQ(c.label, Case::kII);
  EXPECT_EQ(joint_optimal(Scenario(0.0, 0.3)).value, 1.0);
}

TEST(JointOptimalTest, ArgmaxReproducesValue) {
  for (double s : {0.01, 0.04, 0.1, 0.3}) {
    for (double p1 : {0.05, 0.2, 0.35, 0.5}) {
      const Scenario sc(s, p1);
      const PiecewiseResult r = joint_optimal(sc);
      EXPECT_NEAR(joint_success(sc, *r.t, r.first->q1(), r.second->q1()), r.value, 1e-12);
    }
  }
}

TEST(JointOptimalTest, DominatesThreeDimensionalGrid) {
  constexpr int kN = 25;
  for (double s : {0.04, 0.15, 0.36}) {
    for (double p1 : {0.1, 0.3, 0.5}) {
      const Scenario sc(s, p1);
      const double best = joint_optimal(sc).value;
      for (int i = 0; i < kN; ++i) {
        const double t = s + (1.0 - s) * i / (kN - 1);
        const double rb = (s / t) * (s / t);
        for (int j = 0; j < kN; ++j) {
          const double q1b = rb + (1.0 - rb) * j / (kN - 1);
          for (int k = 0; k < kN; ++k) {
            const double q1c = t * t + (1.0 - t * t) * k / (kN - 1);
            EXPECT_LE(joint_success(sc, t, q1b, q1c), best + 1e-9);
          }
        }
      }
    }
  }
}

TEST(CriticalPriorTest, ThresholdOverlapGivesHalf) {
  const CriticalPrior pc = critical_prior(kSymmetryBreakingOverlap);
  EXPECT_NEAR(pc.value, 0.5, 1e-6);
  const CriticalPrior below = critical_prior(kSymmetryBreakingOverlap - 1e-6);
  EXPECT_FALSE(below.case_one_vanishes);
  EXPECT_NEAR(below.value, 0.5, 1e-3);
}

TEST(CriticalPriorTest, BranchesMeetAtCriticalPrior) {
  for (double s : {0.01, 0.04, 0.1}) {
    const CriticalPrior pc = critical_prior(s);
    EXPECT_FALSE(pc.case_one_vanishes);
    EXPECT_GT(pc.value, 0.0);
    EXPECT_LT(pc.value, 0.5);
    const Scenario sc(s, pc.value);
    EXPECT_NEAR(joint_case_one_value(sc), joint_case_two_value(sc), 1e-9);
    EXPECT_EQ(joint_optimal(Scenario(s, pc.value * (1 + 1e-6))).label, Case::kI);
    EXPECT_EQ(joint_optimal(Scenario(s, pc.value * (1 - 1e-6))).label, Case::kII);
  }
}

TEST(CriticalPriorTest, AboveThresholdIsFlaggedSentinel) {
  const CriticalPrior pc = critical_prior(0.36);
  EXPECT_TRUE(pc.case_one_vanishes);
  EXPECT_GE(pc.value, 0.5);
  for (double p1 : {0.01, 0.2, 0.5}) {
    EXPECT_EQ(joint_optimal(Scenario(0.36, p1)).label, Case::kII);
  }
  EXPECT_THROW(critical_prior(0.0), DomainError);
}

}  // namespace
}  // namespace seqdisc

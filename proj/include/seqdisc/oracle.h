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

#ifndef SEQDISC_ORACLE_H_
#define SEQDISC_ORACLE_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqdisc/core.h"

namespace seqdisc {

/// Resolution of a brute-force search. For one-dimensional searches each
/// refinement pass is a golden-section search around a grid maximum; for the
/// three-dimensional searches each pass is one level of box zooming.
struct GridSpec {
  int points_per_axis = 2001;
  int refinement_passes = 2;
  double tolerance = 1e-6;

  // Throws ConstraintError unless points_per_axis >= 100 and tolerance > 0.
  void validate() const;
};

GridSpec default_grid();
// 301 points per axis, 40 zoom levels.
GridSpec default_joint_grid();

struct StageMax {
  double value = 0.0;
  double q1 = 1.0;
  double q2 = 1.0;
};

struct JointMax {
  double value = 0.0;
  double t = 1.0;
  double q1b = 1.0;
  double q2b = 1.0;
  double q1c = 1.0;
  double q2c = 1.0;
};

struct Protocol2Max {
  double value = 0.0;
  double q1b = 1.0;
  double q1c = 1.0;
  // Set when Bob's success leaves only Psi2 possible, so Charlie is certain.
  bool charlie_certain = false;
};

struct CloningMax {
  double value = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

struct Protocol3Max {
  double value = 0.0;
  CloningMax cloning;
  double p1_cl = 0.0;
  StageMax stage;
};

/// Single observer, any prior p1 in [0, 1] and overlap o: maximizes
/// p1 (1-q1) + (1-p1)(1-q2) over q1 q2 = o^2 with o^2 <= q1, q2 <= 1.
StageMax grid_maximize_single(double p1, double overlap, const GridSpec &spec = default_grid());

StageMax grid_maximize_bob(const Scenario &scenario, double t,
                           const GridSpec &spec = default_grid());
StageMax grid_maximize_charlie(const Scenario &scenario, double t,
                               const GridSpec &spec = default_grid());

/// Both observers succeed; searched over (t, q1b, q1c).
JointMax grid_maximize_joint(const Scenario &scenario,
                             const GridSpec &spec = default_joint_grid());

/// At least one observer succeeds; same feasible set as grid_maximize_joint.
JointMax grid_maximize_at_least_one_ssd(const Scenario &scenario,
                                        const GridSpec &spec = default_joint_grid());

/// Bob maximizes his own success at t = 1 and resends; Charlie then maximizes
/// his success for the priors conditioned on Bob's success.
Protocol2Max grid_maximize_protocol2(const Scenario &scenario,
                                     const GridSpec &spec = default_grid());

/// P1 g1 + P2 g2 along s = sqrt(g1 g2) s^2 + sqrt((1-g1)(1-g2)), with g2
/// solved from g1. Samples with no solution are skipped.
CloningMax grid_maximize_cloning(const Scenario &scenario, const GridSpec &spec = default_grid());

/// Cloning followed by two independent discriminations with the conditional
/// priors; both must succeed.
Protocol3Max grid_maximize_protocol3(const Scenario &scenario,
                                     const GridSpec &spec = default_grid());
/// As grid_maximize_protocol3, at least one discrimination must succeed.
Protocol3Max grid_maximize_at_least_one_protocol3(const Scenario &scenario,
                                                  const GridSpec &spec = default_grid());

struct CertificationGrid {
  std::vector<double> s_values = {0.04, 0.1716, 0.2, 0.36, 0.6};
  std::vector<double> p1_values = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
};

struct CertificationCase {
  std::string quantity;
  double s = 0.0;
  double p1 = 0.0;
  std::optional<double> t;
  double closed_form = 0.0;
  double oracle = 0.0;
  double gap() const;
};

struct QuantitySummary {
  std::string quantity;
  int cases = 0;
  double worst_gap = 0.0;
  CertificationCase worst;
  bool pass = true;
};

struct CertificationReport {
  double tolerance = 0.0;
  std::vector<QuantitySummary> quantities;
  std::vector<CertificationCase> cases;
  bool pass = true;
};

/// bob, charlie, joint, protocol1, protocol2, cloning, protocol3,
/// at_least_one_ssd, at_least_one_protocol3.
const std::vector<std::string> &certification_quantities();

/// Compares each closed form with its oracle over the grid. An empty
/// selection certifies every quantity; unknown names throw ConstraintError.
/// bob and charlie are checked at t in {s, sqrt(s), s^(1/4), 1}.
CertificationReport certify(std::span<const std::string> quantities, double tolerance,
                            const CertificationGrid &grid = {});

}  // namespace seqdisc

#endif  // SEQDISC_ORACLE_H_

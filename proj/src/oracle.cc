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

#include "seqdisc/oracle.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "seqdisc/protocols.h"
#include "seqdisc/ssd.h"

namespace seqdisc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Local maxima of the coarse grid that are refined.
constexpr std::size_t kCandidates1d = 4;
constexpr std::size_t kCandidates3d = 6;
constexpr int kZoomPoints = 9;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double finite_or_neg_inf(double v) { return std::isfinite(v) ? v : kNegInf; }

struct Max1 {
  double value = kNegInf;
  double x = 0.0;
};

// Golden-section maximization on [lo, hi]; the bracket ends compete too so
// boundary maxima are returned exactly.
template <typename F>
Max1 golden_max(const F &f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  Max1 best{finite_or_neg_inf(f(lo)), lo};
  const double fhi = finite_or_neg_inf(f(hi));
  if (fhi > best.value) best = {fhi, hi};
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = finite_or_neg_inf(f(x1));
  double f2 = finite_or_neg_inf(f(x2));
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = finite_or_neg_inf(f(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = finite_or_neg_inf(f(x2));
    }
  }
  const double mid = 0.5 * (a + b);
  const double fm = finite_or_neg_inf(f(mid));
  if (fm > best.value) best = {fm, mid};
  return best;
}

// Maximum of f over [0, 1]: uniform grid with both ends, the best local
// maxima refined by golden-section passes of shrinking width.
template <typename F>
Max1 maximize_unit(const F &f, const GridSpec &spec) {
  const int n = spec.points_per_axis;
  const double step = 1.0 / (n - 1);
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) {
    vals[i] = finite_or_neg_inf(f(i == n - 1 ? 1.0 : step * i));
  }
  std::vector<int> cand;
  for (int i = 0; i < n; ++i) {
    if (vals[i] == kNegInf) continue;
    if ((i == 0 || vals[i] >= vals[i - 1]) && (i == n - 1 || vals[i] >= vals[i + 1])) {
      cand.push_back(i);
    }
  }
  std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) { return vals[a] > vals[b]; });
  if (cand.size() > kCandidates1d) cand.resize(kCandidates1d);

  Max1 best;
  for (int c : cand) {
    const double xc = (c == n - 1) ? 1.0 : step * c;
    if (vals[c] > best.value) best = {vals[c], xc};
    Max1 local{vals[c], xc};
    double half = step;
    for (int pass = 0; pass < spec.refinement_passes; ++pass) {
      const Max1 r =
          golden_max(f, std::max(0.0, local.x - half), std::min(1.0, local.x + half));
      if (r.value > local.value) local = r;
      half *= 1e-3;
    }
    if (local.value > best.value) best = local;
  }
  return best;
}

// q1 = o^(2(1-v)), q2 = o^(2v) sweeps the whole feasible segment.
std::pair<double, double> stage_params(double overlap, double v) {
  return {std::pow(overlap, 2.0 * (1.0 - v)), std::pow(overlap, 2.0 * v)};
}

struct Point3 {
  double value = kNegInf;
  std::array<double, 3> x{};
};

struct TwoStage {
  double t, q1b, q2b, q1c, q2c;
};

TwoStage two_stage_point(double s, double u, double v, double w) {
  const double t = s + (1.0 - s) * u;
  const double r = t > 0.0 ? std::min(s / t, 1.0) : 0.0;
  const auto [q1b, q2b] = stage_params(r, v);
  const auto [q1c, q2c] = stage_params(t, w);
  return {t, q1b, q2b, q1c, q2c};
}

// Maximizes obj(q1b, q2b, q1c, q2c) over the two-stage feasible set
// parametrized by the unit cube (u, v, w): t = s + (1 - s) u.
template <typename Obj>
JointMax maximize_two_stage(const Scenario &scenario, const GridSpec &spec, const Obj &obj) {
  spec.validate();
  const double s = scenario.s();
  const int n = spec.points_per_axis;
  const double step = 1.0 / (n - 1);
  const auto coord = [&](int i) { return i == n - 1 ? 1.0 : step * i; };

  std::vector<double> qv1(n), qv2(n), qw1(n), qw2(n);
  std::array<std::vector<double>, 3> slices;
  for (auto &sl : slices) sl.assign(static_cast<std::size_t>(n) * n, kNegInf);

  // Best local maxima, kept sorted by descending value.
  std::vector<std::pair<double, std::array<int, 3>>> top;
  const auto consider = [&](int i) {
    const auto &cur = slices[i % 3];
    const std::vector<double> *prev = i > 0 ? &slices[(i - 1) % 3] : nullptr;
    const std::vector<double> *next = i < n - 1 ? &slices[(i + 1) % 3] : nullptr;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double val = cur[static_cast<std::size_t>(j) * n + k];
        if (val == kNegInf) continue;
        if (top.size() == kCandidates3d && val <= top.back().first) continue;
        bool is_max = true;
        for (int dj = -1; dj <= 1 && is_max; ++dj) {
          const int jj = j + dj;
          if (jj < 0 || jj >= n) continue;
          for (int dk = -1; dk <= 1 && is_max; ++dk) {
            const int kk = k + dk;
            if (kk < 0 || kk >= n) continue;
            const std::size_t idx = static_cast<std::size_t>(jj) * n + kk;
            if ((dj != 0 || dk != 0) && cur[idx] > val) is_max = false;
            if (prev != nullptr && (*prev)[idx] > val) is_max = false;
            if (next != nullptr && (*next)[idx] > val) is_max = false;
          }
        }
        if (!is_max) continue;
        auto pos = std::upper_bound(top.begin(), top.end(), val,
                                    [](double v, const auto &e) { return v > e.first; });
        top.insert(pos, {val, {i, j, k}});
        if (top.size() > kCandidates3d) top.pop_back();
      }
    }
  };

  for (int i = 0; i < n; ++i) {
    const double t = s + (1.0 - s) * coord(i);
    const double r = t > 0.0 ? std::min(s / t, 1.0) : 0.0;
    for (int j = 0; j < n; ++j) {
      std::tie(qv1[j], qv2[j]) = stage_params(r, coord(j));
      std::tie(qw1[j], qw2[j]) = stage_params(t, coord(j));
    }
    auto &sl = slices[i % 3];
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        sl[static_cast<std::size_t>(j) * n + k] =
            finite_or_neg_inf(obj(qv1[j], qv2[j], qw1[k], qw2[k]));
      }
    }
    if (i >= 1) consider(i - 1);
  }
  consider(n - 1);

  const auto eval = [&](const std::array<double, 3> &x) {
    const TwoStage p = two_stage_point(s, x[0], x[1], x[2]);
    return finite_or_neg_inf(obj(p.q1b, p.q2b, p.q1c, p.q2c));
  };

  Point3 best;
  for (const auto &[val, idx] : top) {
    Point3 local{val, {coord(idx[0]), coord(idx[1]), coord(idx[2])}};
    double half = step;
    for (int pass = 0; pass < spec.refinement_passes; ++pass) {
      Point3 level = local;
      const double h = 2.0 * half / (kZoomPoints - 1);
      std::array<double, 3> lo{};
      for (int d = 0; d < 3; ++d) lo[d] = local.x[d] - half;
      for (int a = 0; a < kZoomPoints; ++a) {
        for (int b = 0; b < kZoomPoints; ++b) {
          for (int c = 0; c < kZoomPoints; ++c) {
            std::array<double, 3> x{lo[0] + h * a, lo[1] + h * b, lo[2] + h * c};
            bool inside = true;
            for (double xd : x) inside = inside && xd >= 0.0 && xd <= 1.0;
            if (!inside) continue;
            const double v = eval(x);
            if (v > level.value) level = {v, x};
          }
        }
      }
      local = level;
      half *= 0.5;
    }
    if (local.value > best.value) best = local;
  }

  JointMax out;
  if (best.value == kNegInf) return out;
  const TwoStage p = two_stage_point(s, best.x[0], best.x[1], best.x[2]);
  out.value = best.value;
  out.t = p.t;
  out.q1b = p.q1b;
  out.q2b = p.q2b;
  out.q1c = p.q1c;
  out.q2c = p.q2c;
  return out;
}

// Largest gamma2 with s = sqrt(g1 g2) s^2 + sqrt((1-g1)(1-g2)), or -1 when the
// constraint has no solution. With cos(phi) = sqrt(g2) the constraint reads
// A cos(phi) + B sin(phi) = s, phi in [0, pi/2].
double solve_gamma2(double s, double gamma1) {
  const double a = std::sqrt(gamma1) * s * s;
  const double b = std::sqrt(1.0 - gamma1);
  const double radius = std::hypot(a, b);
  if (radius == 0.0) return s == 0.0 ? 1.0 : -1.0;
  if (radius < s - 1e-15) return -1.0;
  const double delta = std::atan2(b, a);
  const double alpha = std::acos(std::min(s / radius, 1.0));
  const double half_pi = std::acos(0.0);
  for (double phi : {delta - alpha, delta + alpha}) {
    if (phi >= -1e-12 && phi <= half_pi + 1e-12) {
      const double c = std::cos(std::clamp(phi, 0.0, half_pi));
      return c * c;
    }
  }
  return -1.0;
}

double stage_success(double p1, double q1, double q2) {
  return p1 * (1.0 - q1) + (1.0 - p1) * (1.0 - q2);
}

template <typename Combine>
Protocol3Max protocol3_like(const Scenario &scenario, const GridSpec &spec,
                            const Combine &combine) {
  Protocol3Max out;
  out.cloning = grid_maximize_cloning(scenario, spec);
  if (out.cloning.value <= 0.0) return out;
  out.p1_cl = scenario.p1() * out.cloning.gamma1 / out.cloning.value;
  out.stage = grid_maximize_single(out.p1_cl, scenario.s(), spec);
  out.value = out.cloning.value * combine(out.stage.value);
  return out;
}

}  // namespace

void GridSpec::validate() const {
  if (points_per_axis < 100) {
    throw ConstraintError("grid needs at least 100 points per axis; got " +
                          std::to_string(points_per_axis));
  }
  if (!(tolerance > 0.0)) {
    throw ConstraintError("grid tolerance must be positive; got " + fmt(tolerance));
  }
  if (refinement_passes < 0) {
    throw ConstraintError("refinement passes must be non-negative");
  }
}

GridSpec default_grid() { return {2001, 2, 1e-6}; }

GridSpec default_joint_grid() { return {301, 40, 1e-6}; }

StageMax grid_maximize_single(double p1, double overlap, const GridSpec &spec) {
  spec.validate();
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(overlap >= 0.0 && overlap <= 1.0)) {
    throw DomainError("single-stage oracle needs p1 and overlap in [0, 1]; got p1=" + fmt(p1) +
                      ", overlap=" + fmt(overlap));
  }
  const auto f = [&](double v) {
    const auto [q1, q2] = stage_params(overlap, v);
    return stage_success(p1, q1, q2);
  };
  const Max1 m = maximize_unit(f, spec);
  const auto [q1, q2] = stage_params(overlap, m.x);
  return {m.value, q1, q2};
}

StageMax grid_maximize_bob(const Scenario &scenario, double t, const GridSpec &spec) {
  if (!(t > 0.0 && t >= scenario.s() - kBoundaryTol && t <= 1.0)) {
    throw DomainError("post-measurement overlap must satisfy s <= t <= 1; got t=" + fmt(t));
  }
  return grid_maximize_single(scenario.p1(), std::min(scenario.s() / t, 1.0), spec);
}

StageMax grid_maximize_charlie(const Scenario &scenario, double t, const GridSpec &spec) {
  if (!(t > 0.0 && t >= scenario.s() - kBoundaryTol && t <= 1.0)) {
    throw DomainError("post-measurement overlap must satisfy s <= t <= 1; got t=" + fmt(t));
  }
  return grid_maximize_single(scenario.p1(), t, spec);
}

JointMax grid_maximize_joint(const Scenario &scenario, const GridSpec &spec) {
  const double p1 = scenario.p1();
  const double p2 = scenario.p2();
  return maximize_two_stage(scenario, spec, [=](double q1b, double q2b, double q1c, double q2c) {
    return p1 * (1.0 - q1b) * (1.0 - q1c) + p2 * (1.0 - q2b) * (1.0 - q2c);
  });
}

JointMax grid_maximize_at_least_one_ssd(const Scenario &scenario, const GridSpec &spec) {
  const double p1 = scenario.p1();
  const double p2 = scenario.p2();
  return maximize_two_stage(scenario, spec, [=](double q1b, double q2b, double q1c, double q2c) {
    return 1.0 - p1 * q1b * q1c - p2 * q2b * q2c;
  });
}

Protocol2Max grid_maximize_protocol2(const Scenario &scenario, const GridSpec &spec) {
  const double s = scenario.s();
  const StageMax bob = grid_maximize_single(scenario.p1(), s, spec);
  Protocol2Max out;
  out.q1b = bob.q1;
  if (bob.value <= 0.0) return out;
  const double p1_prime = scenario.p1() * (1.0 - bob.q1) / bob.value;
  if (p1_prime == 0.0) {
    out.charlie_certain = true;
    out.q1c = 1.0;
    out.value = bob.value;
    return out;
  }
  const StageMax charlie = grid_maximize_single(p1_prime, s, spec);
  out.q1c = charlie.q1;
  out.value = bob.value * charlie.value;
  return out;
}

CloningMax grid_maximize_cloning(const Scenario &scenario, const GridSpec &spec) {
  spec.validate();
  const double s = scenario.s();
  const double p1 = scenario.p1();
  const double p2 = scenario.p2();
  const auto f = [&](double g1) {
    const double g2 = solve_gamma2(s, g1);
    return g2 < 0.0 ? kNegInf : p1 * g1 + p2 * g2;
  };
  const Max1 m = maximize_unit(f, spec);
  CloningMax out;
  if (m.value == kNegInf) return out;
  out.value = m.value;
  out.gamma1 = m.x;
  out.gamma2 = solve_gamma2(s, m.x);
  return out;
}

Protocol3Max grid_maximize_protocol3(const Scenario &scenario, const GridSpec &spec) {
  return protocol3_like(scenario, spec, [](double stage) { return stage * stage; });
}

Protocol3Max grid_maximize_at_least_one_protocol3(const Scenario &scenario,
                                                  const GridSpec &spec) {
  return protocol3_like(scenario, spec,
                        [](double stage) { return 1.0 - (1.0 - stage) * (1.0 - stage); });
}

double CertificationCase::gap() const { return std::abs(closed_form - oracle); }

const std::vector<std::string> &certification_quantities() {
  static const std::vector<std::string> kNames = {
      "bob",       "charlie",  "joint",     "protocol1",        "protocol2",
      "cloning",   "protocol3", "at_least_one_ssd", "at_least_one_protocol3"};
  return kNames;
}

CertificationReport certify(std::span<const std::string> quantities, double tolerance,
                            const CertificationGrid &grid) {
  if (!(tolerance > 0.0)) {
    throw ConstraintError("certification tolerance must be positive; got " + fmt(tolerance));
  }
  const auto &known = certification_quantities();
  std::vector<std::string> selected;
  if (quantities.empty()) {
    selected = known;
  } else {
    for (const auto &q : quantities) {
      if (std::find(known.begin(), known.end(), q) == known.end()) {
        throw ConstraintError("unknown certification quantity '" + q + "'");
      }
      if (std::find(selected.begin(), selected.end(), q) == selected.end()) {
        selected.push_back(q);
      }
    }
  }

  CertificationReport report;
  report.tolerance = tolerance;
  const GridSpec g1 = default_grid();
  const GridSpec g3 = default_joint_grid();
  for (const auto &name : selected) {
    QuantitySummary summary;
    summary.quantity = name;
    for (double s : grid.s_values) {
      for (double p1 : grid.p1_values) {
        const Scenario sc(s, p1);
        std::vector<CertificationCase> cases;
        const auto add = [&](double closed, double oracle, std::optional<double> t) {
          cases.push_back({name, s, p1, t, closed, oracle});
        };
        if (name == "bob" || name == "charlie") {
          for (double t : {s, std::sqrt(s), std::sqrt(std::sqrt(s)), 1.0}) {
            if (name == "bob") {
              add(bob_optimal(sc, t).value, grid_maximize_bob(sc, t, g1).value, t);
            } else {
              add(charlie_optimal(sc, t).value, grid_maximize_charlie(sc, t, g1).value, t);
            }
          }
        } else if (name == "joint") {
          const JointMax m = grid_maximize_joint(sc, g3);
          add(joint_optimal(sc).value, m.value, m.t);
        } else if (name == "protocol1") {
          add(protocol1_optimal(sc).value, grid_maximize_bob(sc, 1.0, g1).value, 1.0);
        } else if (name == "protocol2") {
          add(protocol2_optimal(sc).value, grid_maximize_protocol2(sc, g1).value, 1.0);
        } else if (name == "cloning") {
          add(clone_optimal_for_prior(sc).p_cl, grid_maximize_cloning(sc, g1).value, {});
        } else if (name == "protocol3") {
          add(protocol3_optimal(sc).result.value, grid_maximize_protocol3(sc, g1).value, {});
        } else if (name == "at_least_one_ssd") {
          const JointMax m = grid_maximize_at_least_one_ssd(sc, g3);
          add(at_least_one_ssd(sc).value, m.value, m.t);
        } else {
          add(at_least_one_protocol3(sc).result.value,
              grid_maximize_at_least_one_protocol3(sc, g1).value, {});
        }
        for (auto &c : cases) {
          ++summary.cases;
          if (summary.cases == 1 || c.gap() > summary.worst_gap) {
            summary.worst_gap = c.gap();
            summary.worst = c;
          }
          report.cases.push_back(std::move(c));
        }
      }
    }
    summary.pass = summary.worst_gap <= tolerance;
    report.pass = report.pass && summary.pass;
    report.quantities.push_back(std::move(summary));
  }
  return report;
}

}  // namespace seqdisc

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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace seqdisc {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Ties between branches within this margin are labelled CaseI.
constexpr double kTieTol = 1e-12;

constexpr int kQuarticScanIntervals = 1000;
constexpr double kQuarticRootWidth = 1e-14;

void check_post_overlap(const Scenario &scenario, double t) {
  if (!(t >= scenario.s() - kBoundaryTol && t <= 1.0)) {
    throw DomainError("post-measurement overlap t must satisfy s <= t <= 1; got t=" + fmt(t) +
                      ", s=" + fmt(scenario.s()));
  }
  if (!(t > 0.0)) {
    throw DomainError("post-measurement overlap t must be positive");
  }
}

double ratio_overlap(const Scenario &scenario, double t) {
  return std::min(scenario.s() / t, 1.0);
}

struct Quartic {
  double p1;
  double p2;
  double s;

  double operator()(double q) const { return ((p1 * q - p1) * q * q + p2 * s) * q - p2 * s * s; }
  double derivative(double q) const { return (4.0 * p1 * q - 3.0 * p1) * q * q + p2 * s; }
};

double joint_objective(const Scenario &sc, double q) {
  const double a = 1.0 - q;
  const double b = 1.0 - sc.s() / q;
  return sc.p1() * a * a + sc.p2() * b * b;
}

// Bisection for a sign change of `f` on [lo, hi]; f(lo) and f(hi) must have
// opposite signs (or one of them vanish).
template <typename F>
double bisect(const F &f, double lo, double hi, double width) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  if (f(hi) == 0.0) return hi;
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(Case c) {
  switch (c) {
    case Case::kI:
      return "CaseI";
    case Case::kII:
      return "CaseII";
    case Case::kIII:
      return "CaseIII";
  }
  return "?";
}

PiecewiseResult single_observer_optimal(double p1, double overlap) {
  if (!(p1 >= 0.0 && p1 <= 0.5 + kBoundaryTol)) {
    throw DomainError("prior must lie in [0, 1/2]; got p1=" + fmt(p1));
  }
  if (!(overlap >= 0.0 && overlap <= 1.0 + kBoundaryTol)) {
    throw DomainError("overlap must lie in [0, 1]; got " + fmt(overlap));
  }
  p1 = std::min(p1, 0.5);
  overlap = std::min(overlap, 1.0);
  const double p2 = 1.0 - p1;
  const double o2 = overlap * overlap;

  PiecewiseResult out;
  out.boundary_priors = {o2 / (1.0 + o2)};
  if (overlap == 0.0) {
    out.value = 1.0;
    out.label = Case::kI;
    out.first = StrategyParams::from_q1(0.0, 0.0);
    return out;
  }

  const double ignore_value = p2 * (1.0 - o2);
  if (p1 > 0.0) {
    const double q1 = std::sqrt(p2 / p1) * overlap;
    if (q1 <= 1.0 + kBoundaryTol) {
      const double interior_value = 1.0 - 2.0 * std::sqrt(p1 * p2) * overlap;
      if (interior_value >= ignore_value - kTieTol) {
        out.value = interior_value;
        out.label = Case::kI;
        out.first = StrategyParams::from_pair(std::min(q1, 1.0), std::sqrt(p1 / p2) * overlap,
                                              overlap);
        return out;
      }
    }
  }
  out.value = ignore_value;
  out.label = Case::kII;
  out.first = StrategyParams::from_q1(1.0, overlap);
  return out;
}

double bob_success(const Scenario &scenario, double t, double q1b) {
  check_post_overlap(scenario, t);
  const StrategyParams b = StrategyParams::from_q1(q1b, ratio_overlap(scenario, t));
  return scenario.p1() * (1.0 - b.q1()) + scenario.p2() * (1.0 - b.q2());
}

PiecewiseResult bob_optimal(const Scenario &scenario, double t) {
  check_post_overlap(scenario, t);
  PiecewiseResult out = single_observer_optimal(scenario.p1(), ratio_overlap(scenario, t));
  out.t = t;
  return out;
}

PiecewiseResult charlie_optimal(const Scenario &scenario, double t) {
  check_post_overlap(scenario, t);
  PiecewiseResult out = single_observer_optimal(scenario.p1(), t);
  out.t = t;
  out.second = out.first;
  out.first.reset();
  return out;
}

double joint_success(const Scenario &scenario, double t, double q1b, double q1c) {
  check_post_overlap(scenario, t);
  const StrategyParams b = StrategyParams::from_q1(q1b, ratio_overlap(scenario, t));
  const StrategyParams c = StrategyParams::from_q1(q1c, t);
  return scenario.p1() * (1.0 - b.q1()) * (1.0 - c.q1()) +
         scenario.p2() * (1.0 - b.q2()) * (1.0 - c.q2());
}

double solve_q_star(const Scenario &scenario) {
  const double s = scenario.s();
  if (!(s > 0.0 && s < 1.0)) {
    throw DomainError("solve_q_star requires 0 < s < 1; got s=" + fmt(s));
  }
  const Quartic f{scenario.p1(), scenario.p2(), s};

  // Breakpoints: a uniform scan of [s, 1] plus the stationary points of f.
  // f'' = 6 p1 q (2q - 1), so f' is monotone on [s, 1/2] and on [1/2, 1] and
  // has at most one root on each; with them included f is monotone between
  // consecutive breakpoints and every root (double roots too) is bracketed.
  std::vector<double> knots;
  knots.reserve(kQuarticScanIntervals + 4);
  for (int i = 0; i <= kQuarticScanIntervals; ++i) {
    knots.push_back(s + (1.0 - s) * static_cast<double>(i) / kQuarticScanIntervals);
  }
  knots.back() = 1.0;
  const auto df = [&f](double q) { return f.derivative(q); };
  const auto add_stationary = [&](double lo, double hi) {
    if (lo >= hi) return;
    if ((df(lo) <= 0.0) != (df(hi) <= 0.0)) {
      knots.push_back(bisect(df, lo, hi, kQuarticRootWidth));
    }
  };
  if (s < 0.5) {
    add_stationary(s, 0.5);
    add_stationary(0.5, 1.0);
    knots.push_back(0.5);
  } else {
    add_stationary(s, 1.0);
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    const double fa = f(a);
    const double fb = f(b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
      roots.push_back(bisect(f, a, b, kQuarticRootWidth));
    }
  }
  if (f(knots.back()) == 0.0) roots.push_back(knots.back());
  if (roots.empty()) {
    throw NumericError("quartic " + fmt(f.p1) + " q^4 - " + fmt(f.p1) + " q^3 + " +
                       fmt(f.p2 * s) + " q - " + fmt(f.p2 * s * s) + " has no real root in [" +
                       fmt(s) + ", 1]");
  }
  double best = roots.front();
  double best_value = joint_objective(scenario, best);
  for (double q : roots) {
    const double v = joint_objective(scenario, q);
    if (v > best_value) {
      best = q;
      best_value = v;
    }
  }
  return best;
}

double joint_case_one_value(const Scenario &scenario) {
  if (scenario.s() == 0.0) return 1.0;
  if (scenario.s() == 1.0) return 0.0;
  return joint_objective(scenario, solve_q_star(scenario));
}

double joint_case_two_value(const Scenario &scenario) {
  const double a = 1.0 - scenario.s();
  return scenario.p2() * a * a;
}

PiecewiseResult joint_optimal(const Scenario &scenario) {
  const double s = scenario.s();
  PiecewiseResult out;
  if (s == 0.0) {
    out.value = 1.0;
    out.label = Case::kI;
    out.t = 0.0;
    out.first = StrategyParams::from_q1(0.0, 0.0);
    out.second = StrategyParams::from_q1(0.0, 0.0);
    out.boundary_priors = {0.0};
    return out;
  }
  const double t = std::sqrt(s);
  out.t = t;

  bool interior = false;
  double q = 1.0;
  double interior_value = 0.0;
  if (s < kSymmetryBreakingOverlap) {
    q = solve_q_star(scenario);
    interior_value = joint_objective(scenario, q);
    interior = interior_value >= joint_case_two_value(scenario) - kTieTol;
    out.boundary_priors = {critical_prior(s).value};
  } else {
    out.boundary_priors = {0.5};
  }

  if (interior) {
    out.value = interior_value;
    out.label = Case::kI;
    // Both stages carry overlap ratio sqrt(s): s/t for Bob and t for Charlie.
    out.first = StrategyParams::from_pair(q, s / q, t);
    out.second = StrategyParams::from_pair(q, s / q, t);
  } else {
    out.value = joint_case_two_value(scenario);
    out.label = Case::kII;
    out.first = StrategyParams::from_q1(1.0, t);
    out.second = StrategyParams::from_q1(1.0, t);
  }
  return out;
}

CriticalPrior critical_prior(double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw DomainError("critical_prior requires 0 < s < 1; got s=" + fmt(s));
  }
  if (s >= kSymmetryBreakingOverlap) {
    return {0.5, true};
  }
  const auto gap = [s](double p1) {
    const Scenario sc(s, p1);
    return joint_case_one_value(sc) - joint_case_two_value(sc);
  };
  double lo = 1e-9;
  double hi = 0.5;
  if (gap(hi) <= 0.0) {
    // Only reachable within rounding of the threshold overlap.
    return {0.5, false};
  }
  if (gap(lo) >= 0.0) {
    throw NumericError("cannot bracket the critical prior on (1e-9, 1/2] for s=" + fmt(s));
  }
  double g = 1.0;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    g = gap(mid);
    if (std::abs(g) < 1e-13 || hi - lo < 1e-16) break;
    if (g < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (std::abs(g) > 1e-10) {
    throw NumericError("critical prior bisection stalled at p1=" + fmt(mid) + " with branch gap " +
                       fmt(g));
  }
  return {mid, false};
}

}  // namespace seqdisc

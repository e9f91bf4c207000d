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

#include "seqdisc/core.h"

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

}  // namespace

Scenario::Scenario(double s, double p1) : s_(s), p1_(p1) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("overlap s must lie in [0, 1]; got s=" + fmt(s));
  }
  if (!(p1 > 0.0 && p1 <= 0.5)) {
    throw DomainError("prior p1 must lie in (0, 1/2]; got p1=" + fmt(p1));
  }
}

PureState::PureState(std::vector<double> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) {
    throw DomainError("state must have at least one amplitude");
  }
  double norm2 = 0.0;
  for (double a : amplitudes_) {
    norm2 += a * a;
  }
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) {
    throw DomainError("state is not normalized; norm=" + fmt(std::sqrt(norm2)));
  }
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw DomainError("basis index " + std::to_string(index) + " out of range for dim " +
                      std::to_string(dim));
  }
  std::vector<double> amps(dim, 0.0);
  amps[index] = 1.0;
  return PureState(std::move(amps));
}

double PureState::inner(const PureState &other) const {
  if (other.dim() != dim()) {
    throw DomainError("inner product of states with different dimensions");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    acc += amplitudes_[i] * other.amplitudes_[i];
  }
  return acc;
}

PureState tensor(const PureState &a, const PureState &b) {
  std::vector<double> amps;
  amps.reserve(a.dim() * b.dim());
  for (double x : a.amplitudes()) {
    for (double y : b.amplitudes()) {
      amps.push_back(x * y);
    }
  }
  return PureState(std::move(amps));
}

StrategyParams StrategyParams::from_q1(double q1, double r) {
  if (!(r >= 0.0 && r <= 1.0 + kBoundaryTol)) {
    throw DomainError("overlap ratio r must lie in [0, 1]; got r=" + fmt(r));
  }
  r = std::min(r, 1.0);
  const double lower = r * r;
  if (!(q1 >= lower - kBoundaryTol)) {
    throw ConstraintError("q1=" + fmt(q1) + " violates lower bound q1 >= r^2=" + fmt(lower));
  }
  if (!(q1 <= 1.0 + kBoundaryTol)) {
    throw ConstraintError("q1=" + fmt(q1) + " violates upper bound q1 <= 1");
  }
  q1 = std::clamp(q1, lower, 1.0);
  const double q2 = (r == 0.0) ? 0.0 : lower / q1;
  return StrategyParams(q1, std::clamp(q2, lower, 1.0), r);
}

StrategyParams StrategyParams::from_pair(double q1, double q2, double r) {
  StrategyParams p = from_q1(q1, r);
  if (!(q2 >= r * r - kBoundaryTol && q2 <= 1.0 + kBoundaryTol)) {
    throw ConstraintError("q2=" + fmt(q2) + " violates r^2 <= q2 <= 1");
  }
  if (std::abs(q1 * q2 - r * r) > 1e-12) {
    throw ConstraintError("q1*q2=" + fmt(q1 * q2) + " differs from r^2=" + fmt(r * r));
  }
  p.q2_ = std::clamp(q2, r * r, 1.0);
  return p;
}

std::pair<PureState, PureState> make_state_pair(double s, std::size_t dim) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("overlap s must lie in [0, 1]; got s=" + fmt(s));
  }
  if (dim < 2) {
    throw DomainError("state pair needs dimension >= 2; got " + std::to_string(dim));
  }
  const double theta = 0.5 * std::acos(s);
  std::vector<double> a(dim, 0.0);
  std::vector<double> b(dim, 0.0);
  a[0] = b[0] = std::cos(theta);
  a[1] = std::sin(theta);
  b[1] = -a[1];
  return {PureState(std::move(a)), PureState(std::move(b))};
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) {
    return 0.0;
  }
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double entropy_H(double x) {
  if (!(x >= -kBoundaryTol && x <= 1.0 + kBoundaryTol)) {
    throw DomainError("entropy_H argument must lie in [0, 1]; got x=" + fmt(x));
  }
  x = std::clamp(x, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - x)));
}

}  // namespace seqdisc

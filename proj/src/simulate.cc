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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "seqdisc/ssd.h"

namespace seqdisc {

namespace {

using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix62 = Eigen::Matrix<double, 6, 2>;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string gram_string(const Eigen::Matrix2d &g) {
  return "[[" + fmt(g(0, 0)) + ", " + fmt(g(0, 1)) + "], [" + fmt(g(1, 0)) + ", " +
         fmt(g(1, 1)) + "]]";
}

Vector6 to_vector(const PureState &state) {
  if (state.dim() != 6) {
    throw DomainError("joint states live in dimension 6; got " + std::to_string(state.dim()));
  }
  Vector6 v;
  for (int i = 0; i < 6; ++i) v[i] = state[i];
  return v;
}

// Modified Gram-Schmidt over the given columns followed by e0..e5; columns
// that are numerically dependent are skipped.
Matrix6 completed_basis(const Matrix62 &leading) {
  Matrix6 basis = Matrix6::Zero();
  int filled = 0;
  const auto push = [&](Vector6 v) {
    if (filled == 6) return;
    for (int j = 0; j < filled; ++j) v -= basis.col(j).dot(v) * basis.col(j);
    for (int j = 0; j < filled; ++j) v -= basis.col(j).dot(v) * basis.col(j);
    const double norm = v.norm();
    if (norm < 1e-8) return;
    basis.col(filled++) = v / norm;
  };
  push(leading.col(0));
  push(leading.col(1));
  for (int i = 0; i < 6; ++i) push(Vector6::Unit(i));
  return basis;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) for draw `counter` of the stream keyed by `key`.
double uniform(std::uint64_t key, std::uint64_t counter) {
  const std::uint64_t bits = splitmix(key + counter * 0x9e3779b97f4a7c15ULL);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Outcome probabilities of the qutrit after `u` acts on `input` (x) |0>, with
// the qubit state left behind by each outcome.
struct StageOutcome {
  std::array<double, 3> prob{};
  std::array<Eigen::Vector2d, 3> qubit{};
};

StageOutcome measure_stage(const JointUnitary &u, const Eigen::Vector2d &qubit) {
  Vector6 in = Vector6::Zero();
  in[0] = qubit[0];
  in[3] = qubit[1];
  const Vector6 out = u.matrix() * in;
  StageOutcome r;
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector2d a(out[k], out[3 + k]);
    double p = a.squaredNorm();
    // Amplitudes that vanish exactly in the ideal map come out at rounding level.
    if (p < 1e-20) p = 0.0;
    r.prob[k] = p;
    r.qubit[k] = p > 0.0 ? Eigen::Vector2d(a / std::sqrt(p)) : Eigen::Vector2d::Zero();
    total += p;
  }
  for (double &p : r.prob) p /= total;
  return r;
}

int sample(const std::array<double, 3> &prob, double u) {
  double acc = 0.0;
  for (int k = 0; k < 2; ++k) {
    acc += prob[k];
    if (u < acc) return k;
  }
  return prob[2] > 0.0 ? 2 : (prob[1] > 0.0 ? 1 : 0);
}

struct ChainTables {
  double p1 = 0.5;
  // bob[i]: Bob's outcome distribution for state i;
  // charlie[i][k]: Charlie's distribution after Bob saw k.
  std::array<std::array<double, 3>, 2> bob{};
  std::array<std::array<std::array<double, 3>, 3>, 2> charlie{};
};

void run_range(const ChainTables &tab, std::uint64_t key, std::int64_t begin, std::int64_t end,
               TrialSummary &acc) {
  for (std::int64_t trial = begin; trial < end; ++trial) {
    const std::uint64_t c = static_cast<std::uint64_t>(trial) * 4;
    const int state = uniform(key, c) < tab.p1 ? 0 : 1;
    const int kb = sample(tab.bob[state], uniform(key, c + 1));
    const int kc = sample(tab.charlie[state][kb], uniform(key, c + 2));
    const bool bob_ok = kb != 0;
    const bool charlie_ok = kc != 0;
    if ((bob_ok && kb - 1 != state) || (charlie_ok && kc - 1 != state)) ++acc.error_count;
    ++acc.counts[state][bob_ok][charlie_ok];
  }
}

}  // namespace

JointUnitary::JointUnitary(const Matrix6 &matrix) : matrix_(matrix) {
  const double res = unitarity_residual();
  if (!(res < 1e-12)) {
    throw NumericError("matrix is not orthogonal: |U^T U - I|_max = " + fmt(res));
  }
}

PureState JointUnitary::apply(const PureState &state) const {
  const Vector6 out = matrix_ * to_vector(state);
  return PureState(std::vector<double>(out.data(), out.data() + 6));
}

double JointUnitary::unitarity_residual() const {
  return (matrix_.transpose() * matrix_ - Matrix6::Identity()).cwiseAbs().maxCoeff();
}

JointUnitary build_discrimination_unitary(const std::pair<PureState, PureState> &inputs,
                                          const std::pair<PureState, PureState> &targets) {
  Matrix62 x;
  Matrix62 y;
  x.col(0) = to_vector(inputs.first);
  x.col(1) = to_vector(inputs.second);
  y.col(0) = to_vector(targets.first);
  y.col(1) = to_vector(targets.second);
  const Eigen::Matrix2d gx = x.transpose() * x;
  const Eigen::Matrix2d gy = y.transpose() * y;
  if ((gx - gy).cwiseAbs().maxCoeff() > 1e-10) {
    throw ConstraintError("no isometry maps the inputs to the targets: input Gram " +
                          gram_string(gx) + ", target Gram " + gram_string(gy));
  }
  const Matrix6 bx = completed_basis(x);
  const Matrix6 by = completed_basis(y);
  return JointUnitary(by * bx.transpose());
}

JointUnitary stage_unitary(double in_overlap, double out_overlap, double q1) {
  if (!(out_overlap > 0.0 && out_overlap <= 1.0 && in_overlap >= 0.0 &&
        in_overlap <= out_overlap + kBoundaryTol)) {
    throw ConstraintError("stage needs 0 <= in_overlap <= out_overlap <= 1, out_overlap > 0; got " +
                          fmt(in_overlap) + ", " + fmt(out_overlap));
  }
  const StrategyParams q =
      StrategyParams::from_q1(q1, std::min(in_overlap / out_overlap, 1.0));
  const auto [psi1, psi2] = make_state_pair(in_overlap, 2);
  const auto [phi1, phi2] = make_state_pair(out_overlap, 2);
  const PureState zero = PureState::basis(3, 0);
  const auto ancilla = [](double qi, std::size_t index) {
    std::vector<double> a(3, 0.0);
    a[0] = std::sqrt(qi);
    a[index] = std::sqrt(1.0 - qi);
    return PureState(a);
  };
  return build_discrimination_unitary(
      {tensor(psi1, zero), tensor(psi2, zero)},
      {tensor(phi1, ancilla(q.q1(), 1)), tensor(phi2, ancilla(q.q2(), 2))});
}

std::int64_t TrialSummary::bob_successes() const {
  std::int64_t n = 0;
  for (const auto &c : counts) n += c[1][0] + c[1][1];
  return n;
}

std::int64_t TrialSummary::charlie_successes() const {
  std::int64_t n = 0;
  for (const auto &c : counts) n += c[0][1] + c[1][1];
  return n;
}

std::int64_t TrialSummary::joint_successes() const {
  std::int64_t n = 0;
  for (const auto &c : counts) n += c[1][1];
  return n;
}

std::int64_t TrialSummary::total() const {
  std::int64_t n = 0;
  for (const auto &c : counts)
    for (const auto &b : c)
      for (std::int64_t v : b) n += v;
  return n;
}

ExpectedRates expected_rates(const Scenario &scenario, double t, double q1b, double q1c) {
  const StrategyParams c = StrategyParams::from_q1(q1c, t);
  ExpectedRates r;
  r.bob = bob_success(scenario, t, q1b);
  r.charlie = scenario.p1() * (1.0 - c.q1()) + scenario.p2() * (1.0 - c.q2());
  r.joint = joint_success(scenario, t, q1b, q1c);
  return r;
}

TrialSummary run_ssd_trials(const Scenario &scenario, double t, double q1b, double q1c,
                            std::int64_t n, std::uint64_t seed, int threads) {
  if (n < 1) {
    throw ConstraintError("number of trials must be at least 1; got " + std::to_string(n));
  }
  if (!(t > 0.0 && t >= scenario.s() - kBoundaryTol && t <= 1.0)) {
    throw ConstraintError("post-measurement overlap must satisfy s <= t <= 1, t > 0; got t=" +
                          fmt(t));
  }
  const JointUnitary ub = stage_unitary(scenario.s(), t, q1b);
  const JointUnitary uc = stage_unitary(t, 1.0, q1c);

  ChainTables tab;
  tab.p1 = scenario.p1();
  const auto [psi1, psi2] = make_state_pair(scenario.s(), 2);
  for (int i = 0; i < 2; ++i) {
    const PureState &psi = i == 0 ? psi1 : psi2;
    const StageOutcome bob = measure_stage(ub, Eigen::Vector2d(psi[0], psi[1]));
    tab.bob[i] = bob.prob;
    for (int k = 0; k < 3; ++k) {
      tab.charlie[i][k] =
          bob.prob[k] > 0.0 ? measure_stage(uc, bob.qubit[k]).prob : std::array<double, 3>{1, 0, 0};
    }
  }

  const std::uint64_t key = splitmix(seed);
  const int workers = static_cast<int>(std::clamp<std::int64_t>(threads, 1, n));
  std::vector<TrialSummary> parts(workers);
  std::vector<std::thread> pool;
  const std::int64_t chunk = n / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = chunk * w;
    const std::int64_t end = w == workers - 1 ? n : begin + chunk;
    if (workers == 1) {
      run_range(tab, key, begin, end, parts[w]);
    } else {
      pool.emplace_back([&, begin, end, w] { run_range(tab, key, begin, end, parts[w]); });
    }
  }
  for (auto &th : pool) th.join();

  TrialSummary out;
  out.n_trials = n;
  out.seed = seed;
  for (const auto &p : parts) {
    out.error_count += p.error_count;
    for (int i = 0; i < 2; ++i)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) out.counts[i][b][c] += p.counts[i][b][c];
  }
  return out;
}

bool within_binomial_sigmas(std::int64_t count, std::int64_t n, double p, double sigmas) {
  if (n < 1) throw ConstraintError("binomial check needs n >= 1");
  if (p <= 0.0) return count == 0;
  if (p >= 1.0) return count == n;
  const double rate = static_cast<double>(count) / static_cast<double>(n);
  return std::abs(rate - p) <= sigmas * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace seqdisc

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

#include "seqdisc/correlations.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
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

// Discords below zero by less than this are rounding and reported as 0.
constexpr double kDiscordFloor = 1e-10;

double floor_discord(double d) { return (d < 0.0 && d > -kDiscordFloor) ? 0.0 : d; }

}  // namespace

CorrelationInput::CorrelationInput(double p1, double t, double r) : p1_(p1), t_(t), r_(r) {
  if (!(p1 > 0.0 && p1 <= 0.5)) {
    throw DomainError("prior p1 must lie in (0, 1/2]; got p1=" + fmt(p1));
  }
  if (!(t >= 0.0 && t <= 1.0) || !(r >= 0.0 && r <= 1.0)) {
    throw DomainError("overlaps t and r must lie in [0, 1]; got t=" + fmt(t) + ", r=" + fmt(r));
  }
}

CorrelationInput CorrelationInput::from_overlaps(double p1, double s, double t) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("overlap s must lie in [0, 1]; got s=" + fmt(s));
  }
  if (!(t > 0.0 && t >= s && t <= 1.0)) {
    throw DomainError("post-measurement overlap must satisfy s <= t <= 1, t > 0; got t=" + fmt(t));
  }
  return CorrelationInput(p1, t, std::min(s / t, 1.0));
}

Tangles tangles(const CorrelationInput &in) {
  const double k = 4.0 * in.p1() * in.p2();
  const double t2 = in.t() * in.t();
  const double r2 = in.r() * in.r();
  Tangles out;
  out.tau_abe = k * (1.0 - t2) * (1.0 - r2);
  out.tau_a_be = k * (1.0 - t2);
  out.tau_b_ae = k * (1.0 - r2);
  out.tau_e_ab = k * (1.0 - t2 * r2);
  return out;
}

double discord_right(const CorrelationInput &in) {
  const Tangles tg = tangles(in);
  // tau_A|BE - tau_ABE, written out so that it stays exactly representable.
  const double k = 4.0 * in.p1() * in.p2();
  const double ae_concurrence2 = k * (1.0 - in.t() * in.t()) * in.r() * in.r();
  return floor_discord(entropy_H(tg.tau_b_ae) - entropy_H(tg.tau_e_ab) +
                       entropy_H(ae_concurrence2));
}

double discord_left(const CorrelationInput &in) { return discord_right(in.swapped()); }

CorrelationReport correlation_report(const CorrelationInput &in) {
  CorrelationReport out;
  out.tangles = tangles(in);
  out.d_right = discord_right(in);
  out.d_left = discord_left(in);
  const double total = out.d_left + out.d_right;
  if (total > 0.0) {
    out.prop_left = out.d_left / total;
    out.prop_right = out.d_right / total;
  }
  out.d_symm = std::sqrt(out.d_left * out.d_right);
  return out;
}

namespace {

double von_neumann_entropy_unnormalized(const Eigen::VectorXd &eigenvalues) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double l = eigenvalues[i];
    if (l > 1e-300) acc -= l * std::log2(l);
  }
  return acc;
}

class LeftMeasurement {
 public:
  explicit LeftMeasurement(const CorrelationInput &in) {
    const auto [phi1, phi2] = make_state_pair(in.t(), 2);
    const auto [a1, a2] = make_state_pair(in.r(), 3);
    const PureState v1 = tensor(phi1, a1);
    const PureState v2 = tensor(phi2, a2);
    Eigen::Matrix<double, 6, 1> e1;
    Eigen::Matrix<double, 6, 1> e2;
    for (int i = 0; i < 6; ++i) {
      e1[i] = v1[i];
      e2[i] = v2[i];
    }
    rho_ = in.p1() * e1 * e1.transpose() + in.p2() * e2 * e2.transpose();
  }

  const Eigen::Matrix<double, 6, 6> &rho() const { return rho_; }

  double entropy_ab() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(rho_, Eigen::EigenvaluesOnly);
    return von_neumann_entropy_unnormalized(es.eigenvalues());
  }

  double entropy_a() const {
    Eigen::Matrix2d ra = Eigen::Matrix2d::Zero();
    for (int a = 0; a < 2; ++a)
      for (int ap = 0; ap < 2; ++ap)
        for (int b = 0; b < 3; ++b) ra(a, ap) += rho_(3 * a + b, 3 * ap + b);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(ra, Eigen::EigenvaluesOnly);
    return von_neumann_entropy_unnormalized(es.eigenvalues());
  }

  // Sum_k p_k S(rho_B|k) for the projective measurement along the Bloch
  // direction (polar, azimuth) on qubit A.
  double conditional_entropy(double polar, double azimuth) const {
    using C = std::complex<double>;
    const C phase = std::polar(1.0, azimuth);
    const double c = std::cos(0.5 * polar);
    const double s = std::sin(0.5 * polar);
    const C m[2][2] = {{C(c), phase * s}, {-std::conj(phase) * s, C(c)}};
    double total = 0.0;
    for (const auto &mk : m) {
      Eigen::Matrix3cd rb = Eigen::Matrix3cd::Zero();
      for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap) {
          const C w = std::conj(mk[a]) * mk[ap];
          for (int b = 0; b < 3; ++b)
            for (int bp = 0; bp < 3; ++bp) rb(b, bp) += w * rho_(3 * a + b, 3 * ap + bp);
        }
      const double p = rb.trace().real();
      if (p <= 1e-300) continue;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(rb, Eigen::EigenvaluesOnly);
      total += von_neumann_entropy_unnormalized(es.eigenvalues()) + p * std::log2(p);
    }
    return total;
  }

 private:
  Eigen::Matrix<double, 6, 6> rho_;
};

template <typename F>
double golden_min(const F &f, double lo, double hi, double &arg) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  arg = 0.5 * (a + b);
  return f(arg);
}

}  // namespace

double left_discord_measurement_oracle(const CorrelationInput &in) {
  const LeftMeasurement lm(in);
  constexpr int kPolar = 181;
  constexpr int kAzimuth = 361;
  constexpr double kPi = std::numbers::pi;
  const double d_polar = kPi / (kPolar - 1);
  const double d_azimuth = 2.0 * kPi / (kAzimuth - 1);

  double best = std::numeric_limits<double>::infinity();
  double best_polar = 0.0;
  double best_azimuth = 0.0;
  for (int i = 0; i < kPolar; ++i) {
    const double polar = d_polar * i;
    for (int j = 0; j < kAzimuth; ++j) {
      const double azimuth = d_azimuth * j;
      const double v = lm.conditional_entropy(polar, azimuth);
      if (v < best) {
        best = v;
        best_polar = polar;
        best_azimuth = azimuth;
      }
    }
  }

  double arg = best_polar;
  double refined = golden_min([&](double p) { return lm.conditional_entropy(p, best_azimuth); },
                              best_polar - d_polar, best_polar + d_polar, arg);
  if (refined < best) {
    best = refined;
    best_polar = arg;
  }
  refined = golden_min([&](double a) { return lm.conditional_entropy(best_polar, a); },
                       best_azimuth - d_azimuth, best_azimuth + d_azimuth, arg);
  best = std::min(best, refined);

  return floor_discord(lm.entropy_a() - lm.entropy_ab() + best);
}

}  // namespace seqdisc

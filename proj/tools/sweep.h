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

#ifndef SEQDISC_TOOLS_SWEEP_H_
#define SEQDISC_TOOLS_SWEEP_H_

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace seqdisc::cli {

// "%.12g" with '.' as decimal separator.
std::string format_number(double v);

/// A number, or a power of the current overlap written "s^<exponent>".
struct ParamValue {
  double value = 0.0;
  bool power_of_s = false;

  static ParamValue parse(std::string_view text);
  double resolve(double s) const;
  std::string text() const;
};

/// Column identifier such as "Pb_max(t=0.06)" or "D_symm(t=s^0.5)": a
/// quantity id plus parameter overrides applied on top of the sweep point.
/// Overrides may be separated by ',' or ';'.
struct Quantity {
  std::string id;
  std::vector<std::pair<std::string, ParamValue>> overrides;

  static Quantity parse(std::string_view text);
  std::string label() const;
};

enum class SweepVariable { kP1, kS, kT };

std::string_view to_string(SweepVariable v);
SweepVariable parse_sweep_variable(std::string_view text);

struct SweepSpec {
  SweepVariable variable = SweepVariable::kP1;
  double start = 0.0;
  double stop = 0.5;
  int steps = 2;
  // Keys P1, s, t.
  std::map<std::string, ParamValue> fixed;
  std::vector<Quantity> quantities;

  // Throws ConstraintError on an empty or reversed range, steps < 2, a range
  // outside the variable's domain or an unknown quantity.
  void validate() const;
  double point(int i) const;
};

struct PointParams {
  std::optional<double> p1;
  std::optional<double> s;
  std::optional<double> t;
};

const std::vector<std::string> &quantity_ids();

/// Value of quantity `id` at the given parameters, or empty when the point
/// is outside the quantity's domain (for instance t < s) or the quantity is
/// undefined there (proportions of two vanishing discords). Throws
/// ConstraintError when a parameter the quantity needs is missing.
std::optional<double> evaluate_quantity(std::string_view id, const PointParams &params);

const std::vector<std::string> &figure_names();
SweepSpec figure_preset(std::string_view name);

/// Header row then one row per grid point; undefined values are empty cells.
void write_sweep_csv(const SweepSpec &spec, std::ostream &out);

}  // namespace seqdisc::cli

#endif  // SEQDISC_TOOLS_SWEEP_H_

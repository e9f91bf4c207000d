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

#include "sweep.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>

#include "seqdisc/correlations.h"
#include "seqdisc/errors.h"
#include "seqdisc/protocols.h"
#include "seqdisc/ssd.h"

namespace seqdisc::cli {

namespace {

std::string_view trim(std::string_view v) {
  while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
  while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
  return v;
}

double parse_double(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConstraintError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::string normalize_key(std::string_view key) {
  key = trim(key);
  if (key == "P1" || key == "p1") return "P1";
  if (key == "s") return "s";
  if (key == "t") return "t";
  throw ConstraintError("unknown parameter '" + std::string(key) + "'; expected P1, s or t");
}

enum Needs : unsigned { kNeedP1 = 1, kNeedS = 2, kNeedT = 4 };

struct Resolved {
  double p1 = 0.0;
  double s = 0.0;
  double t = 0.0;
};

struct QuantityDef {
  unsigned needs;
  std::function<std::optional<double>(const Resolved &)> eval;
};

CorrelationInput correlation_input(const Resolved &r) {
  return CorrelationInput::from_overlaps(r.p1, r.s, r.t);
}

const std::map<std::string, QuantityDef, std::less<>> &definitions() {
  static const std::map<std::string, QuantityDef, std::less<>> kDefs = [] {
    std::map<std::string, QuantityDef, std::less<>> d;
    const unsigned ps = kNeedP1 | kNeedS;
    const unsigned pst = kNeedP1 | kNeedS | kNeedT;
    const auto sc = [](const Resolved &r) { return Scenario(r.s, r.p1); };
    d["Pb_max"] = {pst, [=](const Resolved &r) -> std::optional<double> {
                     return bob_optimal(sc(r), r.t).value;
                   }};
    d["Pc_max"] = {pst, [=](const Resolved &r) -> std::optional<double> {
                     return charlie_optimal(sc(r), r.t).value;
                   }};
    d["P_SSD"] = {ps, [=](const Resolved &r) -> std::optional<double> {
                    return joint_optimal(sc(r)).value;
                  }};
    d["P_C"] = {kNeedS, [](const Resolved &r) -> std::optional<double> {
                  return critical_prior(r.s).value;
                }};
    d["P1_max"] = {ps, [=](const Resolved &r) -> std::optional<double> {
                     return protocol1_optimal(sc(r)).value;
                   }};
    d["P2_max"] = {ps, [=](const Resolved &r) -> std::optional<double> {
                     return protocol2_optimal(sc(r)).value;
                   }};
    d["P3_max"] = {ps, [=](const Resolved &r) -> std::optional<double> {
                     return protocol3_optimal(sc(r)).result.value;
                   }};
    d["Pcl_max"] = {ps, [=](const Resolved &r) -> std::optional<double> {
                      return clone_optimal_for_prior(sc(r)).p_cl;
                    }};
    d["SSD_star"] = {ps, [=](const Resolved &r) -> std::optional<double> {
                       return at_least_one_ssd(sc(r)).value;
                     }};
    d["P3_star"] = {ps, [=](const Resolved &r) -> std::optional<double> {
                      return at_least_one_protocol3(sc(r)).result.value;
                    }};
    d["D_left"] = {pst, [](const Resolved &r) -> std::optional<double> {
                     return discord_left(correlation_input(r));
                   }};
    d["D_right"] = {pst, [](const Resolved &r) -> std::optional<double> {
                      return discord_right(correlation_input(r));
                    }};
    d["D_left_prop"] = {pst, [](const Resolved &r) {
                          return correlation_report(correlation_input(r)).prop_left;
                        }};
    d["D_right_prop"] = {pst, [](const Resolved &r) {
                           return correlation_report(correlation_input(r)).prop_right;
                         }};
    d["D_symm"] = {pst, [](const Resolved &r) -> std::optional<double> {
                     return correlation_report(correlation_input(r)).d_symm;
                   }};
    d["tau_ABE"] = {pst, [](const Resolved &r) -> std::optional<double> {
                      return tangles(correlation_input(r)).tau_abe;
                    }};
    d["tau_A_BE"] = {pst, [](const Resolved &r) -> std::optional<double> {
                       return tangles(correlation_input(r)).tau_a_be;
                     }};
    d["tau_B_AE"] = {pst, [](const Resolved &r) -> std::optional<double> {
                       return tangles(correlation_input(r)).tau_b_ae;
                     }};
    d["tau_E_AB"] = {pst, [](const Resolved &r) -> std::optional<double> {
                       return tangles(correlation_input(r)).tau_e_ab;
                     }};
    return d;
  }();
  return kDefs;
}

const QuantityDef &definition(std::string_view id) {
  const auto &defs = definitions();
  const auto it = defs.find(id);
  if (it == defs.end()) {
    throw ConstraintError("unknown quantity '" + std::string(id) + "'");
  }
  return it->second;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string out(buf);
  // Decimal separator is always the point.
  std::replace(out.begin(), out.end(), ',', '.');
  return out;
}

ParamValue ParamValue::parse(std::string_view text) {
  text = trim(text);
  if (text.size() > 2 && text.substr(0, 2) == "s^") {
    return {parse_double(text.substr(2)), true};
  }
  return {parse_double(text), false};
}

double ParamValue::resolve(double s) const { return power_of_s ? std::pow(s, value) : value; }

std::string ParamValue::text() const {
  return power_of_s ? "s^" + format_number(value) : format_number(value);
}

Quantity Quantity::parse(std::string_view text) {
  text = trim(text);
  Quantity q;
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    q.id = std::string(text);
  } else {
    if (text.back() != ')') {
      throw ConstraintError("quantity '" + std::string(text) + "' lacks a closing parenthesis");
    }
    q.id = std::string(trim(text.substr(0, open)));
    std::string_view body = text.substr(open + 1, text.size() - open - 2);
    while (!trim(body).empty()) {
      const auto sep = body.find_first_of(",;");
      const std::string_view item = body.substr(0, sep);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw ConstraintError("override '" + std::string(item) + "' is not key=value");
      }
      q.overrides.emplace_back(normalize_key(item.substr(0, eq)),
                               ParamValue::parse(item.substr(eq + 1)));
      if (sep == std::string_view::npos) break;
      body.remove_prefix(sep + 1);
    }
  }
  definition(q.id);
  return q;
}

std::string Quantity::label() const {
  if (overrides.empty()) return id;
  std::string out = id + "(";
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    if (i > 0) out += ";";
    out += overrides[i].first + "=" + overrides[i].second.text();
  }
  return out + ")";
}

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::kP1:
      return "P1";
    case SweepVariable::kS:
      return "s";
    case SweepVariable::kT:
      return "t";
  }
  return "?";
}

SweepVariable parse_sweep_variable(std::string_view text) {
  const std::string key = normalize_key(text);
  if (key == "P1") return SweepVariable::kP1;
  if (key == "s") return SweepVariable::kS;
  return SweepVariable::kT;
}

void SweepSpec::validate() const {
  if (steps < 2) {
    throw ConstraintError("a sweep needs at least 2 steps; got " + std::to_string(steps));
  }
  if (!(start < stop)) {
    throw ConstraintError("sweep start must be below stop; got " + format_number(start) +
                          " and " + format_number(stop));
  }
  bool ok = false;
  switch (variable) {
    case SweepVariable::kP1:
      ok = start > 0.0 && stop <= 0.5;
      break;
    case SweepVariable::kS:
      ok = start >= 0.0 && stop <= 1.0;
      break;
    case SweepVariable::kT:
      ok = start > 0.0 && stop <= 1.0;
      break;
  }
  if (!ok) {
    throw ConstraintError("sweep range [" + format_number(start) + ", " + format_number(stop) +
                          "] leaves the domain of " + std::string(to_string(variable)));
  }
  if (quantities.empty()) throw ConstraintError("a sweep needs at least one quantity");
  for (const auto &q : quantities) definition(q.id);
  for (const auto &[key, value] : fixed) normalize_key(key);
}

double SweepSpec::point(int i) const {
  if (i == steps - 1) return stop;
  return start + (stop - start) * i / (steps - 1);
}

const std::vector<std::string> &quantity_ids() {
  static const std::vector<std::string> kIds = [] {
    std::vector<std::string> ids;
    for (const auto &[id, def] : definitions()) ids.push_back(id);
    return ids;
  }();
  return kIds;
}

std::optional<double> evaluate_quantity(std::string_view id, const PointParams &params) {
  const QuantityDef &def = definition(id);
  const auto require = [&](unsigned bit, const std::optional<double> &v, const char *name) {
    if ((def.needs & bit) && !v) {
      throw ConstraintError("quantity " + std::string(id) + " needs parameter " + name);
    }
  };
  require(kNeedP1, params.p1, "P1");
  require(kNeedS, params.s, "s");
  require(kNeedT, params.t, "t");
  Resolved r{params.p1.value_or(0.0), params.s.value_or(0.0), params.t.value_or(0.0)};
  try {
    const std::optional<double> v = def.eval(r);
    if (v && !std::isfinite(*v)) return std::nullopt;
    return v;
  } catch (const DomainError &) {
    return std::nullopt;
  } catch (const ConstraintError &) {
    return std::nullopt;
  }
}

const std::vector<std::string> &figure_names() {
  static const std::vector<std::string> kNames = {"2", "3a", "3b", "4", "5", "6a", "6b", "6c"};
  return kNames;
}

SweepSpec figure_preset(std::string_view name) {
  SweepSpec spec;
  const auto q = [](std::string_view text) { return Quantity::parse(text); };
  // Prior axis (0, 1/2] sampled at 200 points.
  spec.variable = SweepVariable::kP1;
  spec.start = 0.0025;
  spec.stop = 0.5;
  spec.steps = 200;
  if (name == "2") {
    spec.fixed["s"] = {0.05, false};
    spec.quantities = {q("Pb_max(t=0.06)"), q("Pb_max(t=0.1)")};
  } else if (name == "3a") {
    spec.quantities = {q("P_SSD(s=0.04)"), q("P_SSD(s=0.36)")};
  } else if (name == "3b") {
    spec.variable = SweepVariable::kS;
    spec.start = 0.0;
    spec.stop = 1.0;
    spec.steps = 201;
    spec.quantities = {q("P_SSD(P1=0.5)"), q("P_SSD(P1=0.4)"), q("P_SSD(P1=0.2)")};
  } else if (name == "4") {
    spec.fixed["s"] = {0.04, false};
    spec.quantities = {q("P_SSD"), q("P1_max"), q("P2_max"), q("P3_max")};
  } else if (name == "5") {
    spec.fixed["s"] = {0.36, false};
    spec.quantities = {q("SSD_star"), q("P3_star")};
  } else if (name == "6a") {
    spec.variable = SweepVariable::kT;
    spec.start = 0.1;
    spec.stop = 1.0;
    spec.steps = 181;
    spec.fixed["P1"] = {0.2, false};
    spec.quantities = {q("D_left_prop(s=0.1)"), q("D_left_prop(s=0.5)"), q("D_left_prop(s=0.9)")};
  } else if (name == "6b") {
    spec.fixed["s"] = {0.1, false};
    spec.fixed["t"] = {0.25, true};
    spec.quantities = {q("D_left_prop")};
  } else if (name == "6c") {
    spec.fixed["s"] = {0.36, false};
    spec.quantities = {q("D_symm(t=s^0.5)"), q("D_symm(t=s^0.25)"), q("D_symm(t=s^0.125)")};
  } else {
    throw ConstraintError("unknown figure preset '" + std::string(name) +
                          "'; expected one of 2, 3a, 3b, 4, 5, 6a, 6b, 6c");
  }
  return spec;
}

void write_sweep_csv(const SweepSpec &spec, std::ostream &out) {
  spec.validate();
  std::string header(to_string(spec.variable));
  for (const auto &q : spec.quantities) header += "," + q.label();
  out << header << '\n';

  const std::string var(to_string(spec.variable));
  for (int i = 0; i < spec.steps; ++i) {
    const double x = spec.point(i);
    std::string row = format_number(x);
    for (const auto &q : spec.quantities) {
      // Sweep point, then fixed values, then the column's overrides; powers of
      // s are resolved against the final s.
      std::map<std::string, ParamValue> params = spec.fixed;
      params[var] = {x, false};
      for (const auto &[key, value] : q.overrides) params[key] = value;
      PointParams p;
      std::optional<double> s;
      if (const auto it = params.find("s"); it != params.end()) {
        if (it->second.power_of_s) throw ConstraintError("s cannot be a power of itself");
        s = it->second.value;
      }
      const auto get = [&](const char *key) -> std::optional<double> {
        const auto it = params.find(key);
        if (it == params.end()) return std::nullopt;
        if (it->second.power_of_s && !s) {
          throw ConstraintError(std::string(key) + "=" + it->second.text() + " needs s");
        }
        return it->second.resolve(s.value_or(0.0));
      };
      p.p1 = get("P1");
      p.s = s;
      p.t = get("t");
      const std::optional<double> v = evaluate_quantity(q.id, p);
      row += ",";
      if (v) row += format_number(*v);
    }
    out << row << '\n';
  }
}

}  // namespace seqdisc::cli

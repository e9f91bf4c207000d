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

#include "cli.h"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "seqdisc/correlations.h"
#include "seqdisc/errors.h"
#include "seqdisc/oracle.h"
#include "seqdisc/protocols.h"
#include "seqdisc/simulate.h"
#include "seqdisc/ssd.h"
#include "sweep.h"

namespace seqdisc::cli {

namespace {

using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json strategy_json(const std::optional<StrategyParams> &p) {
  if (!p) return nullptr;
  return Json{{"q1", p->q1()}, {"q2", p->q2()}};
}

Json piecewise_json(const PiecewiseResult &r) {
  Json j;
  j["value"] = r.value;
  j["case"] = std::string(to_string(r.label));
  j["t"] = r.t ? Json(*r.t) : Json(nullptr);
  j["bob"] = strategy_json(r.first);
  j["charlie"] = strategy_json(r.second);
  j["boundary_priors"] = r.boundary_priors;
  return j;
}

Json clone_json(const CloneParams &c) {
  return Json{{"omega", c.omega},   {"gamma1", c.gamma1}, {"gamma2", c.gamma2},
              {"p_cl", c.p_cl},     {"p1_cl", c.p1_cl},   {"p2_cl", c.p2_cl}};
}

Json cloning_result_json(const CloningResult &r) {
  Json j = piecewise_json(r.result);
  j["cloning"] = clone_json(r.clone);
  return j;
}

// Writes `text` to `path`, or to `out` when no path is given.
void emit(const std::string &text, const std::optional<std::string> &path, std::ostream &out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + *path + "' for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("failed writing '" + *path + "'");
}

struct OptimalArgs {
  double s = 0.0;
  double p1 = 0.5;
  std::optional<double> t;
};

std::string run_optimal(const OptimalArgs &a) {
  const Scenario sc(a.s, a.p1);
  Json j;
  j["s"] = a.s;
  j["p1"] = a.p1;
  if (a.t) {
    j["bob"] = piecewise_json(bob_optimal(sc, *a.t));
    j["charlie"] = piecewise_json(charlie_optimal(sc, *a.t));
  }
  j["ssd"] = piecewise_json(joint_optimal(sc));
  if (a.s > 0.0 && a.s < 1.0) {
    const CriticalPrior pc = critical_prior(a.s);
    j["critical_prior"] = {{"value", pc.value}, {"case_one_vanishes", pc.case_one_vanishes}};
  } else {
    j["critical_prior"] = nullptr;
  }
  j["protocol1"] = piecewise_json(protocol1_optimal(sc));
  j["protocol2"] = piecewise_json(protocol2_optimal(sc));
  j["protocol3"] = cloning_result_json(protocol3_optimal(sc));
  j["at_least_one_ssd"] = piecewise_json(at_least_one_ssd(sc));
  j["at_least_one_protocol3"] = cloning_result_json(at_least_one_protocol3(sc));
  return j.dump(2) + "\n";
}

struct CorrelationArgs {
  double s = 0.0;
  double p1 = 0.5;
  double t = 1.0;
  bool oracle = false;
};

std::string run_correlations(const CorrelationArgs &a) {
  const CorrelationInput in = CorrelationInput::from_overlaps(a.p1, a.s, a.t);
  const CorrelationReport r = correlation_report(in);
  Json j;
  j["s"] = a.s;
  j["p1"] = a.p1;
  j["t"] = in.t();
  j["r"] = in.r();
  j["tangles"] = {{"tau_ABE", r.tangles.tau_abe},
                  {"tau_A_BE", r.tangles.tau_a_be},
                  {"tau_B_AE", r.tangles.tau_b_ae},
                  {"tau_E_AB", r.tangles.tau_e_ab}};
  j["d_left"] = r.d_left;
  j["d_right"] = r.d_right;
  j["prop_left"] = r.prop_left ? Json(*r.prop_left) : Json(nullptr);
  j["prop_right"] = r.prop_right ? Json(*r.prop_right) : Json(nullptr);
  j["d_symm"] = r.d_symm;
  if (a.oracle) j["d_left_measurement_oracle"] = left_discord_measurement_oracle(in);
  return j.dump(2) + "\n";
}

struct SimulateArgs {
  double s = 0.04;
  double p1 = 0.5;
  std::optional<double> t;
  std::optional<double> q1b;
  std::optional<double> q1c;
  std::int64_t n = 1000000;
  std::uint64_t seed = 42;
  int threads = 1;
};

// Returns the report and whether every statistical check passed.
std::pair<std::string, bool> run_simulate(const SimulateArgs &a) {
  const Scenario sc(a.s, a.p1);
  // Unset parameters default to the joint optimum, or with --t alone to each
  // observer's own optimum at that t.
  const PiecewiseResult opt = joint_optimal(sc);
  const double t = a.t.value_or(opt.t.value_or(1.0));
  const double q1b = a.q1b ? *a.q1b : (a.t ? bob_optimal(sc, t).first->q1() : opt.first->q1());
  const double q1c =
      a.q1c ? *a.q1c : (a.t ? charlie_optimal(sc, t).second->q1() : opt.second->q1());
  const TrialSummary sum = run_ssd_trials(sc, t, q1b, q1c, a.n, a.seed, a.threads);
  const ExpectedRates exp = expected_rates(sc, t, q1b, q1c);

  Json checks = Json::object();
  bool pass = sum.error_count == 0;
  const auto check = [&](const char *name, std::int64_t count, double expected) {
    const bool ok = within_binomial_sigmas(count, sum.n_trials, expected, 5.0);
    pass = pass && ok;
    checks[name] = {{"observed", static_cast<double>(count) / static_cast<double>(sum.n_trials)},
                    {"expected", expected},
                    {"sigma", std::sqrt(expected * (1.0 - expected) / sum.n_trials)},
                    {"within_5_sigma", ok}};
  };
  check("bob", sum.bob_successes(), exp.bob);
  check("charlie", sum.charlie_successes(), exp.charlie);
  check("joint", sum.joint_successes(), exp.joint);

  Json counts = Json::array();
  for (int i = 0; i < 2; ++i) {
    counts.push_back({{"state", i + 1},
                      {"bob_fail_charlie_fail", sum.counts[i][0][0]},
                      {"bob_fail_charlie_success", sum.counts[i][0][1]},
                      {"bob_success_charlie_fail", sum.counts[i][1][0]},
                      {"bob_success_charlie_success", sum.counts[i][1][1]}});
  }
  Json j;
  j["s"] = a.s;
  j["p1"] = a.p1;
  j["t"] = t;
  j["q1b"] = q1b;
  j["q1c"] = q1c;
  j["n_trials"] = sum.n_trials;
  j["seed"] = sum.seed;
  j["counts"] = counts;
  j["error_count"] = sum.error_count;
  j["rates"] = checks;
  j["pass"] = pass;
  return {j.dump(2) + "\n", pass};
}

struct VerifyArgs {
  std::vector<std::string> quantities;
  double tolerance = 1e-6;
};

std::pair<std::string, bool> run_verify(const VerifyArgs &a) {
  const CertificationReport rep = certify(a.quantities, a.tolerance);
  std::ostringstream os;
  os << "tolerance " << format_number(rep.tolerance) << '\n';
  for (const auto &q : rep.quantities) {
    os << (q.pass ? "PASS " : "FAIL ") << q.quantity << " cases=" << q.cases
       << " worst_gap=" << format_number(q.worst_gap) << " at s=" << format_number(q.worst.s)
       << " P1=" << format_number(q.worst.p1);
    if (q.worst.t) os << " t=" << format_number(*q.worst.t);
    os << " closed_form=" << format_number(q.worst.closed_form)
       << " oracle=" << format_number(q.worst.oracle) << '\n';
  }
  os << (rep.pass ? "PASS" : "FAIL") << '\n';
  return {os.str(), rep.pass};
}

struct SweepArgs {
  std::optional<std::string> figure;
  std::optional<std::string> variable;
  std::optional<double> start;
  std::optional<double> stop;
  int steps = 200;
  std::vector<std::string> quantities;
  std::optional<std::string> s;
  std::optional<std::string> p1;
  std::optional<std::string> t;
};

std::string run_sweep(const SweepArgs &a) {
  SweepSpec spec;
  if (a.figure) {
    spec = figure_preset(*a.figure);
  } else {
    if (!a.variable || !a.start || !a.stop || a.quantities.empty()) {
      throw ConstraintError("a sweep needs --figure, or --var, --start, --stop and --quantity");
    }
    spec.variable = parse_sweep_variable(*a.variable);
    spec.start = *a.start;
    spec.stop = *a.stop;
    spec.steps = a.steps;
    for (const auto &q : a.quantities) spec.quantities.push_back(Quantity::parse(q));
  }
  if (a.s) spec.fixed["s"] = ParamValue::parse(*a.s);
  if (a.p1) spec.fixed["P1"] = ParamValue::parse(*a.p1);
  if (a.t) spec.fixed["t"] = ParamValue::parse(*a.t);
  std::ostringstream os;
  write_sweep_csv(spec, os);
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Sequential unambiguous discrimination of two pure states", "seqdisc"};
  app.require_subcommand(1);
  std::optional<std::string> out_path;

  OptimalArgs opt;
  auto *optimal = app.add_subcommand("optimal", "All optimal success probabilities as JSON");
  optimal->add_option("--s", opt.s, "Overlap of the prepared states")->required();
  optimal->add_option("--p1", opt.p1, "Prior of the first state, in (0, 1/2]")->required();
  optimal->add_option("--t", opt.t, "Also report Bob and Charlie at this overlap");
  optimal->add_option("--out", out_path, "Output file");

  SweepArgs sw;
  auto *sweep = app.add_subcommand("sweep", "Parameter sweep as CSV");
  sweep->add_option("--figure", sw.figure, "Preset: 2, 3a, 3b, 4, 5, 6a, 6b or 6c");
  sweep->add_option("--var", sw.variable, "Swept variable: P1, s or t");
  sweep->add_option("--start", sw.start, "First grid point");
  sweep->add_option("--stop", sw.stop, "Last grid point");
  sweep->add_option("--steps", sw.steps, "Number of grid points")->capture_default_str();
  sweep->add_option("--quantity", sw.quantities, "Column, e.g. Pb_max(t=0.06); repeatable");
  sweep->add_option("--s", sw.s, "Fixed overlap");
  sweep->add_option("--p1", sw.p1, "Fixed prior");
  sweep->add_option("--t", sw.t, "Fixed post-measurement overlap (number or s^k)");
  sweep->add_option("--out", out_path, "Output CSV file");

  CorrelationArgs co;
  auto *corr = app.add_subcommand("correlations", "Tangles and discords of Bob's state as JSON");
  corr->add_option("--s", co.s, "Overlap of the prepared states")->required();
  corr->add_option("--p1", co.p1, "Prior of the first state")->required();
  corr->add_option("--t", co.t, "Post-measurement overlap")->required();
  corr->add_flag("--oracle", co.oracle, "Also minimize the left discord numerically");
  corr->add_option("--out", out_path, "Output file");

  SimulateArgs si;
  auto *sim = app.add_subcommand("simulate", "Monte Carlo of the Bob then Charlie chain");
  sim->add_option("--s", si.s, "Overlap")->capture_default_str();
  sim->add_option("--p1", si.p1, "Prior of the first state")->capture_default_str();
  sim->add_option("--t", si.t, "Post-measurement overlap (default: joint optimum)");
  sim->add_option("--q1b", si.q1b, "Bob's failure parameter for state 1");
  sim->add_option("--q1c", si.q1c, "Charlie's failure parameter for state 1");
  sim->add_option("--n", si.n, "Number of trials")->capture_default_str();
  sim->add_option("--seed", si.seed, "RNG seed")->capture_default_str();
  sim->add_option("--threads", si.threads, "Worker threads")->capture_default_str();
  sim->add_option("--out", out_path, "Output file");

  VerifyArgs ve;
  auto *verify = app.add_subcommand("verify", "Certify closed forms against grid oracles");
  verify->add_option("--quantity", ve.quantities, "Restrict to these quantities; repeatable");
  verify->add_option("--tolerance", ve.tolerance, "Largest accepted gap")->capture_default_str();
  verify->add_option("--out", out_path, "Output file");

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rest);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*optimal) {
      emit(run_optimal(opt), out_path, out);
    } else if (*sweep) {
      emit(run_sweep(sw), out_path, out);
    } else if (*corr) {
      emit(run_correlations(co), out_path, out);
    } else if (*sim) {
      const auto [text, pass] = run_simulate(si);
      emit(text, out_path, out);
      if (!pass) {
        err << "statistical check failed\n";
        return kExitStatistical;
      }
    } else if (*verify) {
      const auto [text, pass] = run_verify(ve);
      emit(text, out_path, out);
      if (!pass) {
        err << "certification failed\n";
        return kExitCertification;
      }
    }
  } catch (const IoError &e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DomainError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConstraintError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace seqdisc::cli

// Copyright 2026 The symstab Authors
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

#pragma once

// Declarative experiment configuration, execution and run records.

#include <nlohmann/json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "symstab/circuit.hpp"
#include "symstab/drift.hpp"
#include "symstab/mixed.hpp"
#include "symstab/serialization.hpp"

namespace symstab::experiment {

using nlohmann::json;

inline constexpr std::string_view kLibraryVersion = "1.0.0";

/// Invalid configuration; the message names the offending field.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : Error("config field '" + field + "': " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class ExperimentKind { pure_drift, watchdog, mixed_decoherence, purification_curve, network_verify };
enum class OutputFormat { json, csv };

inline std::string_view kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::pure_drift: return "pure_drift";
    case ExperimentKind::watchdog: return "watchdog";
    case ExperimentKind::mixed_decoherence: return "mixed_decoherence";
    case ExperimentKind::purification_curve: return "purification_curve";
    case ExperimentKind::network_verify: return "network_verify";
  }
  return "unknown";
}

inline std::string_view format_name(OutputFormat f) {
  return f == OutputFormat::json ? "json" : "csv";
}

inline OutputFormat format_from_name(std::string_view s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw ConfigError("format", "expected 'json' or 'csv', got '" + std::string(s) + "'");
}

inline std::string_view route_name(stabilize::ProjectionRoute r) {
  switch (r) {
    case stabilize::ProjectionRoute::projector: return "projector";
    case stabilize::ProjectionRoute::network: return "network";
    case stabilize::ProjectionRoute::permutation_ancilla: return "permutation_ancilla";
  }
  return "unknown";
}

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::pure_drift;
  std::size_t copies = 3;  // "R"
  double epsilon = 0.02;
  double strength = 0.04;
  double delta_t = 0.1;
  std::size_t steps = 1;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string output_path;
  OutputFormat format = OutputFormat::json;
  // pure_drift
  stabilize::ProjectionRoute route = stabilize::ProjectionRoute::projector;
  bool continue_on_failure = false;
  bool keep_trajectories = false;
  // watchdog
  std::vector<std::size_t> rates{1, 2, 4, 8, 16, 32, 64};
  std::vector<std::size_t> fit_copies{2, 3, 4, 5, 6};
  double fit_delta_t = 0.01;
  // mixed_decoherence
  stabilize::GeneratorKind generator = stabilize::GeneratorKind::random_traceless;
  // purification_curve
  std::vector<std::size_t> copies_values{1, 2, 3, 4, 5, 6};
  MatrixXcd rho = (MatrixXcd(2, 2) << 0.75, 0.0, 0.0, 0.25).finished();
};

inline json to_json(const ExperimentConfig& c) {
  json j = {{"kind", std::string(kind_name(c.kind))},
            {"R", c.copies},
            {"epsilon", c.epsilon},
            {"strength", c.strength},
            {"delta_t", c.delta_t},
            {"steps", c.steps},
            {"trials", c.trials},
            {"seed", c.seed},
            {"output_path", c.output_path},
            {"format", std::string(format_name(c.format))},
            {"route", std::string(route_name(c.route))},
            {"continue_on_failure", c.continue_on_failure},
            {"keep_trajectories", c.keep_trajectories},
            {"rates", c.rates},
            {"fit_R", c.fit_copies},
            {"fit_delta_t", c.fit_delta_t},
            {"generator_kind", std::string(stabilize::generator_name(c.generator))},
            {"R_values", c.copies_values},
            {"rho", io::matrix_to_json(c.rho)}};
  return j;
}

namespace detail {

inline const std::set<std::string>& known_fields() {
  static const std::set<std::string> fields{
      "kind", "R", "epsilon", "strength", "delta_t", "steps", "trials", "seed", "output_path",
      "format", "route", "continue_on_failure", "keep_trajectories", "rates", "fit_R",
      "fit_delta_t", "generator_kind", "R_values", "rho"};
  return fields;
}

template <class T>
T field(const json& j, const std::string& name, const T& fallback) {
  if (!j.contains(name)) return fallback;
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(name, "has the wrong type");
  }
}

inline std::size_t positive_count(const json& j, const std::string& name, std::size_t fallback) {
  if (!j.contains(name)) return fallback;
  const auto& v = j.at(name);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ConfigError(name, "must be a positive integer");
  }
  return v.get<std::size_t>();
}

inline double real_field(const json& j, const std::string& name, double fallback,
                         bool strictly_positive) {
  if (!j.contains(name)) return fallback;
  const auto& v = j.at(name);
  if (!v.is_number()) throw ConfigError(name, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x) || x < 0.0 || (strictly_positive && x == 0.0)) {
    throw ConfigError(name, strictly_positive ? "must be positive" : "must be non-negative");
  }
  return x;
}

inline std::vector<std::size_t> count_list(const json& j, const std::string& name,
                                           const std::vector<std::size_t>& fallback) {
  if (!j.contains(name)) return fallback;
  const auto& v = j.at(name);
  if (!v.is_array() || v.empty()) throw ConfigError(name, "must be a non-empty list");
  std::vector<std::size_t> out;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<long long>() < 1) {
      throw ConfigError(name, "entries must be positive integers");
    }
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

inline void require(const json& j, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    if (!j.contains(n)) throw ConfigError(n, "is required for this kind");
  }
}

}  // namespace detail

/// Parses and validates a config document. Unknown fields are rejected.
inline ExperimentConfig config_from_json(const json& j) {
  using namespace detail;
  if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!known_fields().count(key)) throw ConfigError(key, "is not a recognised field");
  }
  if (!j.contains("kind")) throw ConfigError("kind", "is required");
  ExperimentConfig c;
  const std::string kind = field<std::string>(j, "kind", "");
  if (kind == "pure_drift") {
    c.kind = ExperimentKind::pure_drift;
    require(j, {"R", "epsilon", "delta_t", "steps", "trials"});
  } else if (kind == "watchdog") {
    c.kind = ExperimentKind::watchdog;
    require(j, {"R", "epsilon", "trials"});
  } else if (kind == "mixed_decoherence") {
    c.kind = ExperimentKind::mixed_decoherence;
    require(j, {"R", "strength", "trials"});
  } else if (kind == "purification_curve") {
    c.kind = ExperimentKind::purification_curve;
    require(j, {"R_values"});
  } else if (kind == "network_verify") {
    c.kind = ExperimentKind::network_verify;
    require(j, {"R", "trials"});
  } else {
    throw ConfigError("kind", "unknown experiment kind '" + kind + "'");
  }

  c.copies = positive_count(j, "R", c.copies);
  c.epsilon = real_field(j, "epsilon", c.epsilon, false);
  c.strength = real_field(j, "strength", c.strength, false);
  c.delta_t = real_field(j, "delta_t", c.delta_t, true);
  c.steps = positive_count(j, "steps", c.steps);
  c.trials = positive_count(j, "trials", c.trials);
  if (j.contains("seed")) {
    const auto& s = j.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ConfigError("seed", "must be a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  c.output_path = field<std::string>(j, "output_path", c.output_path);
  c.format = format_from_name(field<std::string>(j, "format", "json"));
  const std::string route = field<std::string>(j, "route", "projector");
  if (route == "projector") {
    c.route = stabilize::ProjectionRoute::projector;
  } else if (route == "network") {
    c.route = stabilize::ProjectionRoute::network;
  } else if (route == "permutation_ancilla") {
    c.route = stabilize::ProjectionRoute::permutation_ancilla;
  } else {
    throw ConfigError("route", "unknown route '" + route + "'");
  }
  c.continue_on_failure = field<bool>(j, "continue_on_failure", false);
  c.keep_trajectories = field<bool>(j, "keep_trajectories", false);
  c.rates = count_list(j, "rates", c.rates);
  c.fit_copies = count_list(j, "fit_R", c.fit_copies);
  c.fit_delta_t = real_field(j, "fit_delta_t", c.fit_delta_t, true);
  try {
    c.generator = stabilize::generator_from_name(
        field<std::string>(j, "generator_kind", "random_traceless"));
  } catch (const PreconditionError& e) {
    throw ConfigError("generator_kind", e.what());
  }
  c.copies_values = count_list(j, "R_values", c.copies_values);
  if (j.contains("rho")) {
    try {
      c.rho = io::matrix_from_json(j.at("rho"));
      DensityOperator(HilbertLayout::qubits(1), c.rho);
    } catch (const std::exception& e) {
      throw ConfigError("rho", std::string("not a valid qubit density matrix: ") + e.what());
    }
  }

  // Kind-specific ranges.
  switch (c.kind) {
    case ExperimentKind::pure_drift: {
      const std::size_t limit = c.route == stabilize::ProjectionRoute::network ? 6
                                : c.route == stabilize::ProjectionRoute::permutation_ancilla
                                    ? circuit::kMaxPermutationAncillaCopies
                                    : 10;
      if (c.copies > limit) throw ConfigError("R", "must be at most " + std::to_string(limit));
      break;
    }
    case ExperimentKind::watchdog:
      if (c.copies > 10) throw ConfigError("R", "must be at most 10");
      for (auto r : c.fit_copies) {
        if (r > 10) throw ConfigError("fit_R", "entries must be at most 10");
      }
      break;
    case ExperimentKind::mixed_decoherence:
      if (c.copies > 10) throw ConfigError("R", "must be at most 10");
      try {
        stabilize::DecoherenceModel{c.strength, c.seed, c.copies, c.generator}.validate();
      } catch (const PreconditionError& e) {
        throw ConfigError("strength", e.what());
      }
      break;
    case ExperimentKind::purification_curve:
      for (auto r : c.copies_values) {
        if (r > 10) throw ConfigError("R_values", "entries must be at most 10");
      }
      break;
    case ExperimentKind::network_verify:
      if (c.copies < 2 || c.copies > circuit::kMaxNetworkCopies) {
        throw ConfigError("R", "must be between 2 and " + std::to_string(circuit::kMaxNetworkCopies));
      }
      break;
  }
  return c;
}

inline ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(j);
}

/// Finite doubles as numbers, non-finite as null.
inline json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

struct RunRecord {
  ExperimentConfig config;
  double wall_time_seconds = 0.0;
  json statistics = json::object();
  json trials = json::array();  // per-trial summaries, when requested
  std::vector<std::string> warnings;
  /// Header + rows for CSV output.
  std::vector<std::string> csv_header;
  std::vector<std::vector<double>> csv_rows;

  json to_json(bool include_wall_time = true) const {
    json j = {{"config", experiment::to_json(config)},
              {"library_version", std::string(kLibraryVersion)},
              {"statistics", statistics},
              {"warnings", warnings}};
    if (!trials.empty()) j["trials"] = trials;
    if (include_wall_time) j["wall_time_seconds"] = wall_time_seconds;
    return j;
  }

  /// Deterministic part of the record as text.
  std::string statistical_output() const { return to_json(false).dump(2); }
};

/// Shortest round-trip decimal form, '.' separator, no grouping.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string to_csv(const RunRecord& r) {
  std::string out;
  for (std::size_t i = 0; i < r.csv_header.size(); ++i) {
    if (i) out += ',';
    out += r.csv_header[i];
  }
  out += '\n';
  for (const auto& row : r.csv_rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

namespace detail {

inline void run_pure_drift(const ExperimentConfig& c, RunRecord& rec) {
  stabilize::PureExperimentOptions opt;
  opt.route = c.route;
  opt.continue_on_failure = c.continue_on_failure;
  opt.keep_trajectories = c.keep_trajectories;
  const auto rep = stabilize::run_pure_stabilisation_experiment(
      {c.epsilon, c.delta_t, c.seed, c.copies}, c.steps, c.trials, opt);
  auto& s = rec.statistics;
  s["completed_trials"] = rep.completed_trials;
  s["aborted_trials"] = rep.aborted_trials;
  s["all_trials_aborted"] = rep.all_aborted;
  s["mean_unprotected_error"] = number(rep.mean_unprotected_error);
  s["unprotected_error_stderr"] = number(rep.unprotected_error_stderr);
  s["mean_protected_error"] = number(rep.mean_protected_error);
  s["protected_error_stderr"] = number(rep.protected_error_stderr);
  s["suppression_ratio"] = number(rep.suppression_ratio);
  s["mean_accept_probability"] = number(rep.mean_accept_probability);
  s["predicted_unprotected_error_bound"] = number(rep.predicted_unprotected_bound);
  s["predicted_unprotected_error_uniform"] = number(rep.predicted_unprotected_uniform);
  json steps = json::array();
  rec.csv_header = {"step", "pre_err", "post_err", "accept_prob", "accepted",
                    "purity_pre", "purity_post", "fidelity_pre", "fidelity_post"};
  for (const auto& m : rep.mean_trajectory) {
    steps.push_back({{"step", m.step},
                     {"pre_err", number(m.pre_error)},
                     {"post_err", number(m.post_error)},
                     {"accept_prob", number(m.accept_probability)},
                     {"accepted", m.accepted},
                     {"purity_pre", number(m.purity_pre)},
                     {"purity_post", number(m.purity_post)},
                     {"fidelity_pre", number(m.fidelity_pre)},
                     {"fidelity_post", number(m.fidelity_post)}});
    rec.csv_rows.push_back({double(m.step), m.pre_error, m.post_error, m.accept_probability,
                            double(m.accepted), m.purity_pre, m.purity_post, m.fidelity_pre,
                            m.fidelity_post});
  }
  s["mean_trajectory"] = std::move(steps);
  for (const auto& t : rep.trajectories) {
    json entries = json::array();
    for (const auto& e : t.entries) {
      entries.push_back({e.step, number(e.pre_error), number(e.post_error),
                         number(e.accept_probability), e.accepted, number(e.purity_pre),
                         number(e.purity_post), number(e.fidelity_pre), number(e.fidelity_post)});
    }
    rec.trials.push_back({{"trial", t.trial}, {"aborted", t.aborted}, {"entries", entries}});
  }
  if (rep.all_aborted) rec.warnings.push_back("all_trials_aborted");
}

inline void run_watchdog(const ExperimentConfig& c, RunRecord& rec) {
  const auto curve =
      stabilize::watchdog_success_curve({c.epsilon, c.delta_t, c.seed, c.copies}, c.rates, c.trials);
  const auto fit = stabilize::fit_watchdog_coefficients(c.epsilon, c.fit_delta_t, c.fit_copies,
                                                        c.trials, c.seed);
  auto& s = rec.statistics;
  json points = json::array();
  rec.csv_header = {"rate", "all_accept", "stderr", "difference_stderr"};
  for (const auto& p : curve.points) {
    points.push_back({{"rate", p.rate},
                      {"all_accept", number(p.mean_all_accept)},
                      {"stderr", number(p.standard_error)},
                      {"difference_stderr", number(p.difference_stderr)}});
    rec.csv_rows.push_back(
        {double(p.rate), p.mean_all_accept, p.standard_error, p.difference_stderr});
  }
  s["curve"] = std::move(points);
  s["monotone_within_3_sigma"] = curve.monotone_within(3.0);
  json ks = json::array();
  for (const auto& k : fit.coefficients) {
    ks.push_back({{"R", k.copies}, {"k", number(k.k)}, {"stderr", number(k.standard_error)}});
  }
  s["k_by_R"] = std::move(ks);
  if (fit.coefficients.size() >= 2) {
    s["k_fit"] = {{"slope", number(fit.fit.slope)},
                  {"intercept", number(fit.fit.intercept)},
                  {"r_squared", number(fit.fit.r_squared)}};
  }
}

inline void run_mixed(const ExperimentConfig& c, RunRecord& rec) {
  const stabilize::DecoherenceModel model{c.strength, c.seed, c.copies, c.generator};
  const auto rep = stabilize::run_decoherence_experiment(model, c.trials);
  auto& s = rec.statistics;
  s["rejections"] = rep.rejections;
  s["pre_fidelity"] = number(rep.pre_fidelity);
  s["post_fidelity"] = number(rep.post_fidelity);
  s["pre_purity"] = number(rep.pre_purity);
  s["post_purity"] = number(rep.post_purity);
  s["pre_error"] = number(rep.pre_error);
  s["post_error"] = number(rep.post_error);
  s["accept_probability"] = number(rep.accept_probability);
  auto res = [](const stabilize::FirstOrderResiduals& r) {
    return json{{"pre_fidelity", number(r.pre_fidelity)},
                {"post_fidelity", number(r.post_fidelity)},
                {"pre_purity", number(r.pre_purity)},
                {"post_purity", number(r.post_purity)}};
  };
  s["residual_at_strength"] = res(rep.residual_full);
  s["residual_at_half_strength"] = res(rep.residual_half);
  s["shrink_factor"] = {{"post_fidelity", number(rep.post_fidelity_shrink())},
                        {"pre_purity", number(rep.pre_purity_shrink())},
                        {"post_purity", number(rep.post_purity_shrink())}};
  rec.csv_header = {"R", "strength", "pre_fidelity", "post_fidelity", "pre_purity",
                    "post_purity", "accept_prob"};
  rec.csv_rows.push_back({double(c.copies), c.strength, rep.pre_fidelity, rep.post_fidelity,
                          rep.pre_purity, rep.post_purity, rep.accept_probability});
}

inline void run_purification(const ExperimentConfig& c, RunRecord& rec) {
  const DensityOperator rho(HilbertLayout::qubits(1), c.rho);
  const auto curve = stabilize::purification_limit(rho, c.copies_values);
  json pts = json::array();
  rec.csv_header = {"R", "purity", "fidelity", "accept_prob"};
  for (const auto& p : curve) {
    pts.push_back({{"R", p.copies},
                   {"purity", number(p.purity)},
                   {"fidelity", number(p.fidelity)},
                   {"accept_probability", number(p.accept_probability)}});
    rec.csv_rows.push_back({double(p.copies), p.purity, p.fidelity, p.accept_probability});
  }
  rec.statistics["input_purity"] = number(purity(rho));
  rec.statistics["curve"] = std::move(pts);
}

inline void run_network_verify(const ExperimentConfig& c, RunRecord& rec) {
  const auto net = circuit::build_symmetrisation_network(c.copies);
  const auto basis = sym::build_symmetric_basis(c.copies, 2);
  const auto report = circuit::gate_count_report(net);
  const Rng master(c.seed);
  double max_state = 0.0, max_prob = 0.0;
  std::size_t accepted = 0;
  rec.csv_header = {"trial", "accept_prob_network", "accept_prob_projector", "state_deviation",
                    "accepted"};
  for (std::size_t t = 0; t < c.trials; ++t) {
    Rng rng = master.split(t);
    const auto data = random_state(HilbertLayout::qubits(c.copies), rng);
    const auto exact = sym::project_pure(data, basis);
    const auto out = circuit::run_projection_via_network(net, data, rng);
    const VectorXcd branch = circuit::network_accept_branch(net, data);
    const double dp = std::abs(out.exact_accept_probability - exact.success_probability);
    double ds = 0.0;
    if (exact.projected) {
      ds = (branch.normalized() - exact.projected->amplitudes()).cwiseAbs().maxCoeff();
    }
    max_prob = std::max(max_prob, dp);
    max_state = std::max(max_state, ds);
    accepted += out.accepted ? 1 : 0;
    rec.csv_rows.push_back({double(t), out.exact_accept_probability, exact.success_probability,
                            ds, out.accepted ? 1.0 : 0.0});
  }
  auto& s = rec.statistics;
  s["auxiliary_wires"] = report.ancilla_wires;
  s["fredkin_gates"] = report.count(circuit::GateKind::fredkin);
  s["total_gates"] = report.total_gates;
  s["depth"] = report.depth;
  s["accepted_trials"] = accepted;
  s["max_accept_probability_deviation"] = number(max_prob);
  s["max_state_deviation"] = number(max_state);
  s["agrees_to_1e-9"] = max_prob <= 1e-9 && max_state <= 1e-9;
}

}  // namespace detail

/// Runs the configured experiment. Wall time is recorded but is not part of
/// statistical_output().
inline RunRecord run_experiment(const ExperimentConfig& config) {
  RunRecord rec;
  rec.config = config;
  const auto start = std::chrono::steady_clock::now();
  switch (config.kind) {
    case ExperimentKind::pure_drift: detail::run_pure_drift(config, rec); break;
    case ExperimentKind::watchdog: detail::run_watchdog(config, rec); break;
    case ExperimentKind::mixed_decoherence: detail::run_mixed(config, rec); break;
    case ExperimentKind::purification_curve: detail::run_purification(config, rec); break;
    case ExperimentKind::network_verify: detail::run_network_verify(config, rec); break;
  }
  rec.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace symstab::experiment

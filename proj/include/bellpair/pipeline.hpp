// Copyright 2026 The bellpair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BELLPAIR_PIPELINE_HPP
#define BELLPAIR_PIPELINE_HPP

#include <chrono>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bellpair/basis.hpp"
#include "bellpair/chsh.hpp"
#include "bellpair/dependency.hpp"
#include "bellpair/fixtures.hpp"
#include "bellpair/reduction.hpp"
#include "bellpair/search.hpp"
#include "bellpair/state_io.hpp"

namespace bellpair {

/*
 * End-to-end certification: reduce qudits to qubits, record a Hadamard basis
 * fix, search each requested pair for an entangling projection and certify
 * the residual with the maximal CHSH value. Reports are JSON documents that
 * carry everything verify_report needs to re-check each certificate against
 * the original state file.
 */

enum ExitCode : int { kExitOk = 0, kExitInputError = 1, kExitPairFailure = 2 };

struct PipelineOptions {
  std::optional<PartyPair> keep;  // absent: all pairs
  StrategyLadder ladder;
  std::uint64_t seed = 0;
  Tolerances tol;
  std::size_t excerpt_entries = 16;
};

namespace detail {

inline json vector_to_json(const CVector& v) { return amps_to_json(v); }

inline json bloch_to_json(const Bloch& b) { return json::array({b.x(), b.y(), b.z()}); }

inline Bloch bloch_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorKind::MalformedInput, "setting must be [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline json assignments_to_json(const std::vector<LocalVector>& a) {
  json arr = json::array();
  for (const auto& v : a) arr.push_back({{"party", v.party()}, {"coords", vector_to_json(v.coords())}});
  return arr;
}

inline std::vector<LocalVector> assignments_from_json(const json& arr, const Tolerances& tol) {
  std::vector<LocalVector> out;
  for (const json& a : arr) out.emplace_back(a.at("party").get<int>(), amps_from_json(a.at("coords")), tol);
  return out;
}

inline json chsh_to_json(const ChshCertificate& c) {
  json t = json::array();
  for (int i = 0; i < 3; ++i) t.push_back({c.correlation_matrix(i, 0), c.correlation_matrix(i, 1), c.correlation_matrix(i, 2)});
  return {{"s_max", c.s_max},
          {"closed_form", c.closed_form},
          {"settings",
           {{"a", bloch_to_json(c.settings.a)},
            {"a_prime", bloch_to_json(c.settings.a_prime)},
            {"b", bloch_to_json(c.settings.b)},
            {"b_prime", bloch_to_json(c.settings.b_prime)}}},
          {"correlation_matrix", t}};
}

inline json ints_to_json(const std::vector<int>& v) { return json(v); }

}  // namespace detail

inline json table_outcome_to_json(const TableOutcome& outcome, std::size_t max_entries) {
  json j;
  if (const auto* hit = std::get_if<EntangledAt>(&outcome)) {
    j["outcome"] = "entangled_at";
    j["key"] = hit->key_string;
    j["concurrence"] = hit->concurrence;
    j["residual"] = amps_to_json(hit->residual.amps());
    return j;
  }
  const auto& table = std::get<DependencyTable>(outcome);
  j["outcome"] = "table";
  j["keep"] = {table.keep_pair().first, table.keep_pair().second};
  j["projected"] = table.projected_parties();
  j["num_entries"] = table.entries().size();
  json entries = json::object();
  for (std::uint64_t key = 0; key < table.entries().size() && key < max_entries; ++key) {
    const auto& e = table.at(key);
    entries[table.key_string(key)] = {{"alpha", amps_to_json(e.alpha)}, {"beta", amps_to_json(e.beta)}, {"weight", e.weight}};
  }
  j["entries"] = entries;
  if (auto part = partition_check(table)) {
    j["partition"] = {{"alpha_side", part->alpha_side}, {"beta_side", part->beta_side}};
  } else {
    j["partition"] = nullptr;
  }
  return j;
}

/// Runs the pipeline; the returned JSON always carries "exit_code".
inline json run_certify(const StateFile& input, const PipelineOptions& opt) {
  using clock = std::chrono::steady_clock;
  auto ms = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  const auto t0 = clock::now();
  const PureState& state = input.state;
  const Tolerances& tol = opt.tol;
  opt.ladder.validate();

  json report;
  report["input"] = {{"dims", state.dims()}, {"num_parties", state.num_parties()}};
  if (input.label) report["input"]["label"] = *input.label;
  report["seed"] = opt.seed;
  report["tolerances"] = {{"norm", tol.norm},   {"zero", tol.zero},           {"indep", tol.indep},
                          {"rank", tol.rank},   {"amp_floor", tol.amp_floor}, {"prod", tol.prod},
                          {"success_floor", tol.success_floor}};
  report["ladder"] = {{"max_stage", opt.ladder.max_stage},
                      {"grid", opt.ladder.grid},
                      {"restarts", opt.ladder.restarts},
                      {"max_sweeps", opt.ladder.max_sweeps}};
  report["pairs"] = json::array();

  const int n = state.num_parties();
  if (n < 2) {
    report["diagnosis"] = "InvalidArgument: need at least two parties";
    report["exit_code"] = kExitInputError;
    return report;
  }
  if (opt.keep) {
    PartyPair k = ordered_pair(*opt.keep);
    if (k.first == k.second || k.first < 1 || k.second > n) {
      report["diagnosis"] = "InvalidArgument: keep pair must be two distinct parties in 1.." + std::to_string(n);
      report["exit_code"] = kExitInputError;
      return report;
    }
  }
  if (is_fully_product(state, tol)) {
    report["diagnosis"] = "FullyProduct: the input has no entanglement to extract";
    report["exit_code"] = kExitInputError;
    return report;
  }

  const auto t_reduce = clock::now();
  ReductionTrace trace = reduce_to_qubits(state, tol);
  json actions = json::array();
  for (int p = 1; p <= n; ++p) {
    const auto& a = trace.action(p);
    actions.push_back({{"party", p}, {"kind", to_string(a.kind)}, {"original_dim", a.original_dim}});
  }
  SeparabilityReport sep = separability_report(trace.output, tol);
  json cuts = json::array();
  for (const auto& c : sep.entangled_cuts) cuts.push_back(c.to_string());
  report["reduction"] = {{"actions", actions},
                         {"output_dims", trace.output.dims()},
                         {"weight", trace.weight},
                         {"fully_product", sep.fully_product},
                         {"entangled_cuts", cuts}};

  const auto t_basis = clock::now();
  std::optional<BasisFix> fix;
  try {
    fix = fix_nonvanishing(trace.output, tol);
    report["basis_fix"] = {{"subset", fix->subset}, {"min_abs", fix->min_abs}};
  } catch (const Error& e) {
    report["basis_fix"] = {{"error", e.what()}};
  }

  const auto t_search = clock::now();
  std::vector<PartyPair> pairs;
  if (opt.keep) {
    pairs.push_back(ordered_pair(*opt.keep));
  } else {
    for (int p = 1; p <= n; ++p)
      for (int q = p + 1; q <= n; ++q) pairs.emplace_back(p, q);
  }
  bool all_ok = true;
  bool all_qubits = std::all_of(trace.output.dims().begin(), trace.output.dims().end(), [](int d) { return d == 2; });
  for (const PartyPair& pair : pairs) {
    json entry = {{"pair", {pair.first, pair.second}}};
    try {
      ProjectionCertificate cert =
          find_entangling_projection(trace.output, pair, opt.ladder, pair_seed(opt.seed, pair), tol);
      std::vector<LocalVector> lifted;
      for (const auto& a : cert.assignments) lifted.push_back(embed_projection(trace, a, tol));
      ChshCertificate chsh = max_chsh(cert.residual, tol);
      entry["status"] = "certified";
      entry["strategy"] = to_string(cert.strategy_used);
      entry["assignments"] = detail::assignments_to_json(cert.assignments);
      entry["lifted_assignments"] = detail::assignments_to_json(lifted);
      json kept = json::object();
      for (int p : {pair.first, pair.second}) {
        json cols = json::array();
        for (const auto& v : trace.action(p).retained) cols.push_back(amps_to_json(v));
        kept[std::to_string(p)] = cols;
      }
      entry["kept_isometries"] = kept;
      entry["residual"] = amps_to_json(cert.residual.amps());
      entry["concurrence"] = cert.concurrence;
      entry["weight"] = cert.weight;
      entry["chsh"] = detail::chsh_to_json(chsh);
      if (cert.strategy_used != Strategy::S1 && all_qubits) {
        try {
          entry["dependency_excerpt"] = table_outcome_to_json(build_table(trace.output, pair, tol), opt.excerpt_entries);
          entry["dependency_excerpt"]["basis"] = "input";
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::ZeroOutcome || !fix) throw;
          entry["dependency_excerpt"] = table_outcome_to_json(build_table(fix->fixed_state, pair, tol), opt.excerpt_entries);
          entry["dependency_excerpt"]["basis"] = "hadamard-fixed";
        }
      }
    } catch (const SearchExhaustedError& e) {
      all_ok = false;
      entry["status"] = "failed";
      entry["error"] = to_string(e.kind());
      entry["message"] = e.what();
      entry["best_concurrence"] = e.best_concurrence();
    } catch (const Error& e) {
      all_ok = false;
      entry["status"] = "failed";
      entry["error"] = to_string(e.kind());
      entry["message"] = e.what();
    }
    report["pairs"].push_back(entry);
  }
  const auto t_end = clock::now();
  report["timings_ms"] = {{"reduction", ms(t_reduce, t_basis)},
                          {"basis_fix", ms(t_basis, t_search)},
                          {"search", ms(t_search, t_end)},
                          {"total", ms(t0, t_end)}};
  report["exit_code"] = all_ok ? kExitOk : kExitPairFailure;
  return report;
}

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> lines;
};

/// Re-checks every certified pair of `report` against the original state.
inline VerifyResult verify_report(const PureState& state, const json& report, const Tolerances& tol = {}) {
  VerifyResult out;
  auto fail = [&](const std::string& label, const std::string& why) {
    out.ok = false;
    out.lines.push_back("FAIL " + label + ": " + why);
  };
  if (!report.contains("pairs")) {
    fail("report", "no pairs array");
    return out;
  }
  for (const json& entry : report.at("pairs")) {
    if (entry.value("status", "") != "certified") continue;
    const int p = entry.at("pair")[0].get<int>(), q = entry.at("pair")[1].get<int>();
    const std::string label = "pair " + std::to_string(p) + "," + std::to_string(q);
    try {
      auto lifted = detail::assignments_from_json(entry.at("lifted_assignments"), tol);
      ProjectionResult r = project(state, lifted, tol);
      // Map the kept parties into their reduced coordinates.
      PureState residual = r.residual;
      int slot = 1;
      for (int party : {p, q}) {
        const json& cols = entry.at("kept_isometries").at(std::to_string(party));
        CMatrix v(state.dim(party), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t k = 0; k < cols.size(); ++k) v.col(static_cast<Eigen::Index>(k)) = amps_from_json(cols[k]);
        if ((v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff() > 1e-9)
          throw Error(ErrorKind::NotUnitary, "kept isometry is not orthonormal");
        auto [dims, amps] = detail::apply_local_map(residual, slot++, v.adjoint());
        residual = PureState::normalized(std::move(dims), std::move(amps), tol);
      }
      PureState stored = PureState::normalized({2, 2}, amps_from_json(entry.at("residual")), tol);
      if (residual.dims() != std::vector<int>{2, 2}) throw Error(ErrorKind::DimensionMismatch, "residual is not two qubits");
      double dist = distance_up_to_phase(residual.amps(), stored.amps());
      if (dist > 1e-9) {
        fail(label, "residual differs by " + std::to_string(dist));
        continue;
      }
      double c = concurrence(residual);
      if (std::abs(c - entry.at("concurrence").get<double>()) > 1e-9 || c < tol.success_floor) {
        fail(label, "concurrence mismatch or below floor");
        continue;
      }
      ChshCertificate chsh = max_chsh(residual, tol);
      const json& js = entry.at("chsh");
      double s_stored = js.at("s_max").get<double>();
      const json& st = js.at("settings");
      ChshSettings settings{detail::bloch_from_json(st.at("a")), detail::bloch_from_json(st.at("a_prime")),
                            detail::bloch_from_json(st.at("b")), detail::bloch_from_json(st.at("b_prime"))};
      double at_settings = evaluate_chsh(residual, settings);
      if (std::abs(chsh.s_max - s_stored) > 1e-9 || std::abs(at_settings - s_stored) > 1e-7 || s_stored <= 2.0) {
        fail(label, "CHSH value does not re-verify");
        continue;
      }
      std::ostringstream line;
      line << std::setprecision(10) << "OK   " << label << ": concurrence " << c << ", S_max " << s_stored;
      out.lines.push_back(line.str());
    } catch (const std::exception& e) {
      fail(label, e.what());
    }
  }
  return out;
}

inline std::string format_vector(const CVector& v) {
  std::ostringstream os;
  os << std::setprecision(6) << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    if (std::abs(v[i].imag()) < 1e-12) os << v[i].real();
    else os << v[i].real() << (v[i].imag() < 0 ? "-" : "+") << std::abs(v[i].imag()) << "i";
  }
  os << ")";
  return os.str();
}

/// Human-readable summary of a certify report.
inline std::string format_report(const json& report) {
  std::ostringstream os;
  os << std::setprecision(10);
  const json& in = report.at("input");
  os << "input: " << in.value("label", "(unlabelled)") << ", dims " << in.at("dims").dump() << "\n";
  if (report.contains("diagnosis")) os << "diagnosis: " << report["diagnosis"].get<std::string>() << "\n";
  if (report.contains("reduction")) {
    const json& r = report["reduction"];
    os << "reduction: output dims " << r.at("output_dims").dump() << ", weight " << r.at("weight").get<double>()
       << ", entangled cuts " << r.at("entangled_cuts").size() << "\n";
  }
  if (report.contains("basis_fix")) {
    const json& b = report["basis_fix"];
    if (b.contains("subset")) os << "basis fix: Hadamard on " << b["subset"].dump() << ", min |amp| " << b["min_abs"].get<double>() << "\n";
    else os << "basis fix: " << b["error"].get<std::string>() << "\n";
  }
  for (const json& e : report.at("pairs")) {
    os << "pair " << e["pair"][0] << "," << e["pair"][1] << ": ";
    if (e["status"] == "certified") {
      os << e["strategy"].get<std::string>() << ", concurrence " << e["concurrence"].get<double>() << ", S_max "
         << e["chsh"]["s_max"].get<double>() << "\n";
      for (const json& a : e["assignments"]) {
        os << "    party " << a["party"] << " -> " << format_vector(amps_from_json(a["coords"])) << "\n";
      }
      if (e.contains("dependency_excerpt")) {
        const json& d = e["dependency_excerpt"];
        os << "    computational scan (" << d["basis"].get<std::string>() << " basis): " << d["outcome"].get<std::string>();
        if (d["outcome"] == "table") os << (d["partition"].is_null() ? ", no index partition" : ", index partition present");
        os << "\n";
      }
    } else {
      os << "FAILED " << e["error"].get<std::string>();
      if (e.contains("best_concurrence")) os << " (best concurrence " << e["best_concurrence"].get<double>() << ")";
      os << "\n";
    }
  }
  if (report.contains("timings_ms")) os << "total time: " << report["timings_ms"]["total"].get<double>() << " ms\n";
  return os.str();
}

/// The four-qubit counterexample walkthrough: dependency tables, the absent
/// index partition, and the tilted projection with both angles pi/4.
inline json demo_counterexample(const Tolerances& tol = {}) {
  PureState psi = fixtures::counterexample();
  json out;
  out["state"] = amps_to_json(psi.amps());
  SeparabilityReport sep = separability_report(psi, tol);
  out["fully_product"] = sep.fully_product;
  TableOutcome outcome = build_table(psi, {1, 2}, tol);
  out["table"] = table_outcome_to_json(outcome, 1u << 20);
  const double angle = M_PI / 4;
  ProjectionResult r = project(psi, {LocalVector(3, kets::tilted(angle)), LocalVector(4, kets::tilted(angle))}, tol);
  out["tilted"] = {{"gamma", angle},
                   {"delta", angle},
                   {"residual", amps_to_json(r.residual.amps())},
                   {"weight", r.weight},
                   {"concurrence", concurrence(r.residual)},
                   {"s_max", max_chsh(r.residual, tol).s_max}};
  return out;
}

inline std::string format_demo(const json& demo) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "state: (|0000> + |0101> + |0110> + |1111>)/2\n";
  os << "fully product: " << (demo["fully_product"].get<bool>() ? "yes" : "no") << "\n";
  const json& t = demo["table"];
  os << "computational projections of parties 3,4 (keep 1,2): " << t["outcome"].get<std::string>() << "\n";
  if (t["outcome"] == "table") {
    for (auto it = t["entries"].begin(); it != t["entries"].end(); ++it) {
      os << "  b'=" << it.key() << "  alpha = " << format_vector(amps_from_json(it.value()["alpha"]))
         << "  beta = " << format_vector(amps_from_json(it.value()["beta"])) << "\n";
    }
    os << "index partition: " << (t["partition"].is_null() ? "absent" : t["partition"].dump()) << "\n";
  }
  const json& tl = demo["tilted"];
  os << "tilted projection gamma = delta = pi/4: residual " << format_vector(amps_from_json(tl["residual"]))
     << ", concurrence " << tl["concurrence"].get<double>() << ", S_max " << tl["s_max"].get<double>() << "\n";
  return os.str();
}

}  // namespace bellpair

#endif  // BELLPAIR_PIPELINE_HPP

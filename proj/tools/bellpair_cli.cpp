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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bellpair/bellpair.hpp"

namespace {

using namespace bellpair;

bellpair::PartyPair parse_pair(const std::string& text) {
  std::istringstream in(text);
  int p = 0, q = 0;
  char comma = 0;
  if (!(in >> p >> comma >> q) || comma != ',' || !in.eof())
    throw Error(ErrorKind::InvalidArgument, "--keep expects P,Q");
  return {p, q};
}

int parse_stage(const std::string& s) {
  if (s.size() == 2 && (s[0] == 'S' || s[0] == 's') && s[1] >= '1' && s[1] <= '4') return s[1] - '0';
  throw Error(ErrorKind::InvalidArgument, "--stage-max expects S1..S4");
}

void emit(const json& j, const std::string& text, bool as_json, bool pretty) {
  if (as_json) std::cout << j.dump(pretty ? 2 : -1) << "\n";
  else std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bellpair: extract and certify an entangled pair from a multiparty pure state"};
  app.require_subcommand(1);

  Tolerances tol;
  bool as_json = false, pretty = false;
  auto add_output_flags = [&](CLI::App* sub) {
    sub->add_flag("--json", as_json, "emit the JSON report");
    sub->add_flag("--pretty", pretty, "indent JSON output (implies --json)");
  };
  auto add_tolerance_flags = [&](CLI::App* sub) {
    sub->add_option("--tol-indep", tol.indep, "linear independence tolerance");
    sub->add_option("--amp-floor", tol.amp_floor, "basis fix amplitude floor");
    sub->add_option("--success-floor", tol.success_floor, "concurrence needed for a certificate");
  };

  // certify
  auto* certify = app.add_subcommand("certify", "reduce, fix basis, search and certify pairs");
  std::string state_path, keep_text, stage_text = "S4", report_out;
  bool all_pairs = false;
  PipelineOptions opt;
  certify->add_option("state", state_path, "state file (JSON)")->required();
  auto* keep_opt = certify->add_option("--keep", keep_text, "kept pair P,Q");
  auto* all_opt = certify->add_flag("--all-pairs", all_pairs, "certify every pair");
  keep_opt->excludes(all_opt);
  certify->add_option("--seed", opt.seed, "seed for the S4 stage");
  certify->add_option("--grid", opt.ladder.grid, "S3 points per angle");
  certify->add_option("--restarts", opt.ladder.restarts, "S4 random restarts");
  certify->add_option("--stage-max", stage_text, "last stage to run (S1..S4)");
  certify->add_option("--report", report_out, "also write the JSON report to this file");
  add_tolerance_flags(certify);
  add_output_flags(certify);

  // demo-counterexample
  auto* demo = app.add_subcommand("demo-counterexample", "walk through the four-qubit counterexample");
  add_output_flags(demo);

  // random
  auto* random = app.add_subcommand("random", "write Haar-random pure states");
  int n_parties = 2, local_dim = 2, count = 1;
  std::uint64_t seed = 0;
  std::string out_dir = ".", prefix = "random";
  random->add_option("-n,--parties", n_parties, "number of parties")->check(CLI::PositiveNumber);
  random->add_option("-d,--dim", local_dim, "local dimension")->check(CLI::PositiveNumber);
  random->add_option("--seed", seed, "generator seed");
  random->add_option("--count", count, "number of states")->check(CLI::PositiveNumber);
  random->add_option("-o,--out", out_dir, "output directory");
  random->add_option("--prefix", prefix, "file name prefix");

  // verify
  auto* verify = app.add_subcommand("verify", "re-check every certificate in a report");
  std::string report_path;
  verify->add_option("state", state_path, "state file (JSON)")->required();
  verify->add_option("report", report_path, "report file (JSON)")->required();

  // fixtures
  auto* fixtures_cmd = app.add_subcommand("fixtures", "write the bundled fixture states");
  fixtures_cmd->add_option("-o,--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);
  as_json = as_json || pretty;

  try {
    if (*certify) {
      if (!all_pairs && keep_text.empty()) throw Error(ErrorKind::InvalidArgument, "pass --keep P,Q or --all-pairs");
      if (!keep_text.empty()) opt.keep = parse_pair(keep_text);
      opt.ladder.max_stage = parse_stage(stage_text);
      opt.ladder.validate();
      opt.tol = tol;
      StateFile input = load_state(state_path, tol);
      json report = run_certify(input, opt);
      if (!report_out.empty()) std::ofstream(report_out) << report.dump(2) << "\n";
      emit(report, format_report(report), as_json, pretty);
      return report.at("exit_code").get<int>();
    }
    if (*demo) {
      json d = demo_counterexample(tol);
      emit(d, format_demo(d), as_json, pretty);
      return kExitOk;
    }
    if (*random) {
      std::vector<int> dims(static_cast<std::size_t>(n_parties), local_dim);
      if (total_dim(dims) > kMaxAmplitudes) throw Error(ErrorKind::Oversize, "state exceeds 2^20 amplitudes");
      std::filesystem::create_directories(out_dir);
      std::mt19937_64 rng(seed);
      for (int i = 0; i < count; ++i) {
        std::string label = "haar n=" + std::to_string(n_parties) + " d=" + std::to_string(local_dim) +
                            " seed=" + std::to_string(seed) + " index=" + std::to_string(i);
        auto path = std::filesystem::path(out_dir) / (prefix + "_" + std::to_string(i) + ".json");
        save_state(path.string(), {haar_state(dims, rng), label});
        std::cout << path.string() << "\n";
      }
      return kExitOk;
    }
    if (*verify) {
      StateFile input = load_state(state_path, tol);
      std::ifstream in(report_path);
      if (!in) throw Error(ErrorKind::MalformedInput, "cannot open " + report_path);
      json report = json::parse(in);
      VerifyResult v = verify_report(input.state, report, tol);
      for (const auto& line : v.lines) std::cout << line << "\n";
      return v.ok ? kExitOk : kExitPairFailure;
    }
    if (*fixtures_cmd) {
      std::filesystem::create_directories(out_dir);
      for (const auto& [name, file] : fixtures::bundled()) {
        auto path = std::filesystem::path(out_dir) / name;
        save_state(path.string(), file);
        std::cout << path.string() << "\n";
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}

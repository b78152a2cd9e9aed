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

#ifndef BELLPAIR_STATE_IO_HPP
#define BELLPAIR_STATE_IO_HPP

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "bellpair/random.hpp"
#include "bellpair/statevec.hpp"
#include "json.hpp"

namespace bellpair {

/*
 * State file format (UTF-8 JSON):
 *
 *   {"dims": [2, 2], "amps": [[re, im], ...], "label": "optional"}
 *
 * Amplitudes are row-major with party 1 the most significant digit. Doubles
 * are written in shortest round-trip form, so save -> load -> save is
 * byte-identical.
 */

using json = nlohmann::json;

struct StateFile {
  PureState state;
  std::optional<std::string> label;
};

inline json amps_to_json(const CVector& amps) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < amps.size(); ++i) arr.push_back({amps[i].real(), amps[i].imag()});
  return arr;
}

inline CVector amps_from_json(const json& arr) {
  if (!arr.is_array()) throw Error(ErrorKind::MalformedInput, "amps must be an array");
  CVector amps(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& a = arr[i];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
      throw Error(ErrorKind::MalformedInput, "amplitude " + std::to_string(i) + " must be [re, im]");
    amps[static_cast<Eigen::Index>(i)] = Complex(a[0].get<double>(), a[1].get<double>());
  }
  return amps;
}

inline json state_to_json(const StateFile& f) {
  json j;
  j["dims"] = f.state.dims();
  j["amps"] = amps_to_json(f.state.amps());
  if (f.label) j["label"] = *f.label;
  return j;
}

/// Parses a state file. Amplitudes whose norm is off by more than tol.norm
/// are renormalized; a warning goes to `warn` when the error exceeds 1e-6.
inline StateFile state_from_json(const json& j, const Tolerances& tol = {}, std::ostream* warn = &std::cerr) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("amps"))
    throw Error(ErrorKind::MalformedInput, "state file needs \"dims\" and \"amps\"");
  std::vector<int> dims;
  for (const json& d : j.at("dims")) {
    if (!d.is_number_integer() || d.get<long long>() < 1)
      throw Error(ErrorKind::MalformedInput, "dims must be positive integers");
    dims.push_back(d.get<int>());
  }
  if (dims.empty()) throw Error(ErrorKind::MalformedInput, "dims must be nonempty");
  std::size_t size = 1;
  for (int d : dims) {
    size *= static_cast<std::size_t>(d);
    if (size > kMaxAmplitudes) throw Error(ErrorKind::Oversize, "state exceeds 2^20 amplitudes");
  }
  CVector amps = amps_from_json(j.at("amps"));
  if (static_cast<std::size_t>(amps.size()) != size)
    throw Error(ErrorKind::MalformedInput, "expected " + std::to_string(size) + " amplitudes, got " +
                                               std::to_string(amps.size()));
  for (Eigen::Index i = 0; i < amps.size(); ++i)
    if (!std::isfinite(amps[i].real()) || !std::isfinite(amps[i].imag()))
      throw Error(ErrorKind::MalformedInput, "amplitudes must be finite");
  double n = amps.norm();
  if (n < tol.zero) throw Error(ErrorKind::MalformedInput, "state is not normalizable (zero norm)");
  if (std::abs(n - 1.0) > 1e-6 && warn)
    *warn << "warning: state norm " << n << " differs from 1; renormalizing\n";
  if (std::abs(n - 1.0) > tol.norm) amps /= n;
  std::optional<std::string> label;
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw Error(ErrorKind::MalformedInput, "label must be a string");
    label = j["label"].get<std::string>();
  }
  return {PureState(std::move(dims), std::move(amps), tol), std::move(label)};
}

/// Canonical text form: one amplitude per line, keys in a fixed order.
inline std::string dump_state(const StateFile& f) {
  std::string out = "{\n  \"dims\": " + json(f.state.dims()).dump() + ",\n  \"amps\": [";
  const CVector& a = f.state.amps();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out += (i ? ",\n    [" : "\n    [") + json(a[i].real()).dump() + ", " + json(a[i].imag()).dump() + "]";
  }
  out += "\n  ]";
  if (f.label) out += ",\n  \"label\": " + json(*f.label).dump();
  return out + "\n}\n";
}

inline StateFile parse_state(const std::string& text, const Tolerances& tol = {}, std::ostream* warn = &std::cerr) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, std::string("invalid JSON: ") + e.what());
  }
  return state_from_json(j, tol, warn);
}

inline StateFile load_state(const std::string& path, const Tolerances& tol = {}, std::ostream* warn = &std::cerr) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str(), tol, warn);
}

inline void save_state(const std::string& path, const StateFile& f) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << dump_state(f);
}

}  // namespace bellpair

#endif  // BELLPAIR_STATE_IO_HPP

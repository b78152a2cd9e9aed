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

#ifndef BELLPAIR_CORE_HPP
#define BELLPAIR_CORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace bellpair {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Numerical floors shared by every module. Defaults are double-precision
/// desk-scale values; all of them can be overridden from the CLI.
struct Tolerances {
  double norm = 1e-10;           // state normalization
  double zero = 1e-12;           // projection outcome considered impossible
  double indep = 1e-9;           // linear independence of two vectors
  double rank = 1e-10;           // Schmidt coefficient counted in the rank
  double amp_floor = 1e-9;       // basis fix: smallest admissible amplitude
  double prod = 1e-9;            // concurrence below this is "product"
  double success_floor = 1e-8;   // concurrence needed for a certificate
};

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  NotNormalized,
  NotUnitary,
  NotUnit,
  ZeroOutcome,
  ZeroVector,
  NoSubsetFound,
  FullyProduct,
  SearchExhausted,
  PartyNotInTrace,
  Oversize,
  MalformedInput,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::ZeroOutcome: return "ZeroOutcome";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NoSubsetFound: return "NoSubsetFound";
    case ErrorKind::FullyProduct: return "FullyProduct";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::PartyNotInTrace: return "PartyNotInTrace";
    case ErrorKind::Oversize: return "Oversize";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bellpair

#endif  // BELLPAIR_CORE_HPP

// Copyright 2026 The qlab Authors
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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qlab {

enum class ErrorKind {
  InvalidArgument,
  NotSymmetric,
  NotPositiveDefinite,
  DecompositionFailure,
  DimensionMismatch,
  EmptyRegion,
  FullRegion,
  NotNormalized,
  ZeroSuperposition,
  NotSupportedInRegion,
  DimensionCapExceeded,
  ZeroOperator,
  Config,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind so
/// callers (and the CLI exit-code logic) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::DecompositionFailure: return "DecompositionFailure";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptyRegion: return "EmptyRegion";
    case ErrorKind::FullRegion: return "FullRegion";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::ZeroSuperposition: return "ZeroSuperposition";
    case ErrorKind::NotSupportedInRegion: return "NotSupportedInRegion";
    case ErrorKind::DimensionCapExceeded: return "DimensionCapExceeded";
    case ErrorKind::ZeroOperator: return "ZeroOperator";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace qlab

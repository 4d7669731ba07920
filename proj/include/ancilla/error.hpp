// Copyright 2026 The Ancilla Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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

namespace ancilla {

enum class ErrorKind {
  ZeroState,
  DimensionMismatch,
  ModeOutOfRange,
  InvalidCoefficient,
  OutOfRange,
  NonBinaryTarget,
  InvalidProfile,
  AncillaNotDisentangled,
  ShapeMismatch,
  DotOutOfRange,
  InvalidSchedule,
  BlockadeViolation,
  InfeasibleParameters,
  Parse,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroState: return "ZeroState";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ModeOutOfRange: return "ModeOutOfRange";
    case ErrorKind::InvalidCoefficient: return "InvalidCoefficient";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NonBinaryTarget: return "NonBinaryTarget";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::AncillaNotDisentangled: return "AncillaNotDisentangled";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DotOutOfRange: return "DotOutOfRange";
    case ErrorKind::InvalidSchedule: return "InvalidSchedule";
    case ErrorKind::BlockadeViolation: return "BlockadeViolation";
    case ErrorKind::InfeasibleParameters: return "InfeasibleParameters";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` identifies the contract that
/// was violated; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ancilla

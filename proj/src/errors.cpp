// Copyright 2026 The vqt Authors
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

#include "vqt/errors.hpp"

namespace vqt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NonUnitary: return "NonUnitary";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnnormalizedTarget: return "UnnormalizedTarget";
    case ErrorCode::InvalidNoiseModel: return "InvalidNoiseModel";
    case ErrorCode::InvalidSize: return "InvalidSize";
    case ErrorCode::EmptySubspace: return "EmptySubspace";
    case ErrorCode::VanishingSubspaceWeight: return "VanishingSubspaceWeight";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::WrongBenchmarkKind: return "WrongBenchmarkKind";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace vqt

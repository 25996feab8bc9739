// Copyright 2026 The Authors.
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

#include "collab/error.hpp"

namespace collab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonPositiveMass: return "NonPositiveMass";
    case ErrorCode::kPriorNotNormalized: return "PriorNotNormalized";
    case ErrorCode::kDuplicateHypothesis: return "DuplicateHypothesis";
    case ErrorCode::kUncoveredPoint: return "UncoveredPoint";
    case ErrorCode::kInconsistentEvidence: return "InconsistentEvidence";
    case ErrorCode::kPolicyViolation: return "PolicyViolation";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kNoOwner: return "NoOwner";
    case ErrorCode::kWeightsNotNormalized: return "WeightsNotNormalized";
    case ErrorCode::kInvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kInfeasibleParameters: return "InfeasibleParameters";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace collab

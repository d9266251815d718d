// Copyright 2026 The brlab Authors
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

#include "core/common.hpp"

namespace brlab {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kDegenerateMatrix: return "DegenerateMatrix";
    case ErrorCode::kNotZeroSumEquivalent: return "NotZeroSumEquivalent";
    case ErrorCode::kNoInteriorEquilibrium: return "NoInteriorEquilibrium";
    case ErrorCode::kAtEquilibrium: return "AtEquilibrium";
    case ErrorCode::kOutsideSimplex: return "OutsideSimplex";
    case ErrorCode::kOnIndifferencePlane: return "OnIndifferencePlane";
    case ErrorCode::kNoCrossing: return "NoCrossing";
    case ErrorCode::kDegenerateCrossing: return "DegenerateCrossing";
    case ErrorCode::kConvergedToEquilibrium: return "ConvergedToEquilibrium";
    case ErrorCode::kParallelFlow: return "ParallelFlow";
    case ErrorCode::kIllegalLoop: return "IllegalLoop";
    case ErrorCode::kWrongMode: return "WrongMode";
    case ErrorCode::kEmptyPiece: return "EmptyPiece";
    case ErrorCode::kNoFixedPoint: return "NoFixedPoint";
    case ErrorCode::kRealizationNotFound: return "RealizationNotFound";
    case ErrorCode::kTheoremViolation: return "TheoremViolation";
  }
  return "Unknown";
}

std::optional<Plane> TransitionPlane(Label from, Label to) {
  if (from.col == to.col && from.row != to.row) {
    return MakePlane(Side::kA, from.row, to.row);
  }
  if (from.row == to.row && from.col != to.col) {
    return MakePlane(Side::kB, from.col, to.col);
  }
  return std::nullopt;
}

}  // namespace brlab

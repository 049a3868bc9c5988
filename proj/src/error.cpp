// Copyright 2026 The fgrain Authors.
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

#include "fgrain/error.hpp"

namespace fgrain {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kUnknownId: return "UnknownId";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kModelNotLoaded: return "ModelNotLoaded";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kUnknownTagInCorpus: return "UnknownTagInCorpus";
    case ErrorCode::kBatchSizeMismatch: return "BatchSizeMismatch";
    case ErrorCode::kEmptyPool: return "EmptyPool";
    case ErrorCode::kRateOutOfRange: return "RateOutOfRange";
    case ErrorCode::kNonFiniteScore: return "NonFiniteScore";
    case ErrorCode::kPopulationMismatch: return "PopulationMismatch";
    case ErrorCode::kRateMismatch: return "RateMismatch";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kRemoteError: return "RemoteError";
    case ErrorCode::kDimensionInconsistent: return "DimensionInconsistent";
    case ErrorCode::kCacheCorrupt: return "CacheCorrupt";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "UnknownError";
}

}  // namespace fgrain

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

#ifndef FGRAIN_ERROR_HPP_
#define FGRAIN_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fgrain {

// Error categories shared by every module. The numeric values are part of the
// C API (fg_status) and must not be reordered.
enum class ErrorCode : int {
  kOk = 0,
  kMalformedHeader = 1,
  kDimensionMismatch = 2,
  kDuplicateId = 3,
  kInvariantViolation = 4,
  kIo = 5,
  kUnknownId = 6,
  kZeroVector = 7,
  kModelNotLoaded = 8,
  kEmptyCorpus = 9,
  kUnknownTagInCorpus = 10,
  kBatchSizeMismatch = 11,
  kEmptyPool = 12,
  kRateOutOfRange = 13,
  kNonFiniteScore = 14,
  kPopulationMismatch = 15,
  kRateMismatch = 16,
  kTimeout = 17,
  kRemoteError = 18,
  kDimensionInconsistent = 19,
  kCacheCorrupt = 20,
  kParse = 21,
  kInvalidArgument = 22,
  kInsufficientData = 23,
  kInternal = 24,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const { return code_; }
  // Message without the category prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

// Carries the offending id so callers can report it without parsing text.
class UnknownIdError : public Error {
 public:
  UnknownIdError(std::string id, const std::string& context = {})
      : Error(ErrorCode::kUnknownId,
              context.empty() ? "'" + id + "'" : context + ": '" + id + "'"),
        id_(std::move(id)) {}

  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class RemoteError : public Error {
 public:
  RemoteError(int status, std::string body_excerpt)
      : Error(ErrorCode::kRemoteError,
              "HTTP " + std::to_string(status) + ": " + body_excerpt),
        status_(status),
        body_excerpt_(std::move(body_excerpt)) {}

  int status() const { return status_; }
  const std::string& body_excerpt() const { return body_excerpt_; }

 private:
  int status_;
  std::string body_excerpt_;
};

}  // namespace fgrain

#endif  // FGRAIN_ERROR_HPP_

// Copyright 2026 The evollm Authors
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

namespace evollm {

/// Error categories. Values are mirrored by the C API status codes.
enum class ErrorCode {
  kInvalidArgument = 1,
  kShape = 2,
  kIndex = 3,
  kCodec = 4,
  kParse = 5,
  kBackend = 6,
  kConfig = 7,
  kIo = 8,
  kRender = 9,
  kEvaluation = 10,
  kAggregation = 11,
  kReport = 12,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define EVOLLM_DEFINE_ERROR(Name, Code)                                  \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(ErrorCode::Code, what) {} \
  };

EVOLLM_DEFINE_ERROR(InvalidArgument, kInvalidArgument)
EVOLLM_DEFINE_ERROR(ShapeError, kShape)
EVOLLM_DEFINE_ERROR(IndexError, kIndex)
EVOLLM_DEFINE_ERROR(CodecError, kCodec)
EVOLLM_DEFINE_ERROR(BackendFailure, kBackend)
EVOLLM_DEFINE_ERROR(ConfigError, kConfig)
EVOLLM_DEFINE_ERROR(IoError, kIo)
EVOLLM_DEFINE_ERROR(RenderError, kRender)
EVOLLM_DEFINE_ERROR(EvaluationError, kEvaluation)
EVOLLM_DEFINE_ERROR(AggregationError, kAggregation)
EVOLLM_DEFINE_ERROR(ReportError, kReport)

#undef EVOLLM_DEFINE_ERROR

/// A model completion that could not be turned into a proposal. Carries the
/// offending text so the caller can log it.
class ParseFailure : public Error {
 public:
  ParseFailure(const std::string& what, std::string raw_text)
      : Error(ErrorCode::kParse, what), raw_text_(std::move(raw_text)) {}
  const std::string& raw_text() const noexcept { return raw_text_; }

 private:
  std::string raw_text_;
};

}  // namespace evollm

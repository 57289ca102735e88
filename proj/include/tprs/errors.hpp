// Copyright 2026 The tprs Authors
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

namespace tprs {

enum class ErrorKind {
  InvalidArgument,
  InvariantViolation,
  DimensionCapExceeded,
  DimensionMismatch,
  PartitionMismatch,
  DomainOverflow,
  DomainCapExceeded,
  EmptySubset,
  BadSubsetExponent,
  EnumerationBudgetExceeded,
  UnsupportedGrowthClass,
  CopyMismatch,
  NoAnalyticForm,
  NonEvaluable,
  UnrecognizedForm,
  ParameterOrderViolated,
  BoundDegenerate,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::DimensionCapExceeded: return "DimensionCapExceeded";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::PartitionMismatch: return "PartitionMismatch";
    case ErrorKind::DomainOverflow: return "DomainOverflow";
    case ErrorKind::DomainCapExceeded: return "DomainCapExceeded";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::BadSubsetExponent: return "BadSubsetExponent";
    case ErrorKind::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorKind::UnsupportedGrowthClass: return "UnsupportedGrowthClass";
    case ErrorKind::CopyMismatch: return "CopyMismatch";
    case ErrorKind::NoAnalyticForm: return "NoAnalyticForm";
    case ErrorKind::NonEvaluable: return "NonEvaluable";
    case ErrorKind::UnrecognizedForm: return "UnrecognizedForm";
    case ErrorKind::ParameterOrderViolated: return "ParameterOrderViolated";
    case ErrorKind::BoundDegenerate: return "BoundDegenerate";
  }
  return "Unknown";
}

/// True for errors caused by a size cap or enumeration budget rather than by
/// malformed input. The CLI maps these to exit code 3.
constexpr bool is_resource_error(ErrorKind kind) {
  return kind == ErrorKind::DimensionCapExceeded ||
         kind == ErrorKind::DomainCapExceeded ||
         kind == ErrorKind::EnumerationBudgetExceeded;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace tprs

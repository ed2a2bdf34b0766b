#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace braceforge {

enum class ErrorCode {
  BadInput,
  NotAssociative,
  NoIdentity,
  NoInverse,
  NotLatinSquare,
  BadSpec,
  BadMetacyclicParams,
  SizeLimitExceeded,
  NotRegular,
  NotGStable,
  UnsupportedOrder,
  OrderTooLargeForOracle,
  DotNotGroup,
  CircleNotGroup,
  IdentityMismatch,
  BraceRelationFails,
  IdentNotIsomorphism,
  PhiNotCircleAutomorphism,
  BaseGroupMismatch,
  NotAbelianFpf,
  BadCaseParams,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::NotLatinSquare: return "NotLatinSquare";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::BadMetacyclicParams: return "BadMetacyclicParams";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::NotGStable: return "NotGStable";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::OrderTooLargeForOracle: return "OrderTooLargeForOracle";
    case ErrorCode::DotNotGroup: return "DotNotGroup";
    case ErrorCode::CircleNotGroup: return "CircleNotGroup";
    case ErrorCode::IdentityMismatch: return "IdentityMismatch";
    case ErrorCode::BraceRelationFails: return "BraceRelationFails";
    case ErrorCode::IdentNotIsomorphism: return "IdentNotIsomorphism";
    case ErrorCode::PhiNotCircleAutomorphism: return "PhiNotCircleAutomorphism";
    case ErrorCode::BaseGroupMismatch: return "BaseGroupMismatch";
    case ErrorCode::NotAbelianFpf: return "NotAbelianFpf";
    case ErrorCode::BadCaseParams: return "BadCaseParams";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message names the offending element, triple, or parameter.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace braceforge

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gaitadapt
{

enum class ErrorCode
{
  InvalidTiming,
  NonPositiveParameter,
  KinematicallyUnreachable,
  SingularSystem,
  TooFewConditions,
  CountMismatch,
  OutOfDomain,
  Unreachable,
  SingularPosture,
  NoSupport,
  NoStanceFoot,
  OffsetAboveApex,
  DSPExhausted,
  EmptyTrace,
  InvalidScenario,
  ParseError,
  IoError,
};

std::string_view toString(ErrorCode code);

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & what);

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string & detail() const noexcept { return detail_; }

private:
  ErrorCode code_;
  std::string detail_;
};

} // namespace gaitadapt

#include <gaitadapt/errors.hpp>

namespace gaitadapt
{

std::string_view toString(ErrorCode code)
{
  switch(code)
  {
    case ErrorCode::InvalidTiming: return "InvalidTiming";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::KinematicallyUnreachable: return "KinematicallyUnreachable";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::TooFewConditions: return "TooFewConditions";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::SingularPosture: return "SingularPosture";
    case ErrorCode::NoSupport: return "NoSupport";
    case ErrorCode::NoStanceFoot: return "NoStanceFoot";
    case ErrorCode::OffsetAboveApex: return "OffsetAboveApex";
    case ErrorCode::DSPExhausted: return "DSPExhausted";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string & what)
: std::runtime_error(std::string(toString(code)) + ": " + what), code_(code), detail_(what)
{
}

} // namespace gaitadapt

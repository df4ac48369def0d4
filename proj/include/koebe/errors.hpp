#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace koebe {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByNonUnit : Error { using Error::Error; };
struct BadConstantTerm : Error { using Error::Error; };
struct NonFiniteCoefficient : Error { using Error::Error; };
struct BadRadius : Error { using Error::Error; };
struct BadParameter : Error { using Error::Error; };
struct PointOutsideDisk : Error { using Error::Error; };
struct DilatationOutOfRange : Error { using Error::Error; };
struct IntegrationFailure : Error { using Error::Error; };
struct DegenerateDerivative : Error { using Error::Error; };
struct DegenerateNormalizer : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct UnknownSuite : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// Parse failures carry the offset of the offending token.
struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos) : Error(msg), position(pos) {}
};

}  // namespace koebe

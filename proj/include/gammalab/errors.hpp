#pragma once

#include <stdexcept>

namespace gammalab {

// Error taxonomy shared by the library and the CLI. The CLI maps
// UsageError to exit code 2 and every other Error to exit code 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };
struct TrainingError : Error { using Error::Error; };
struct ExtractionError : Error { using Error::Error; };
struct AmbiguityError : ExtractionError { using ExtractionError::ExtractionError; };
struct IoError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

}  // namespace gammalab

#pragma once

#include <stdexcept>
#include <string>

namespace enrvar {

// Every library failure derives from Error so callers can catch one type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SignatureMismatch : Error { using Error::Error; };
struct NotTotal : Error { using Error::Error; };
struct InvalidStructure : Error { using Error::Error; };
struct InvalidTheory : Error { using Error::Error; };
struct NotAModel : Error { using Error::Error; };
struct NotAMorphism : Error { using Error::Error; };
struct NotClosed : Error { using Error::Error; };
struct LatticeError : Error { using Error::Error; };
struct UnknownTheory : Error { using Error::Error; };
struct InvalidSignature : Error { using Error::Error; };
struct InvalidAlgebra : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct SizeBoundExceeded : Error { using Error::Error; };
struct IterationNotStabilized : Error { using Error::Error; };
struct InvalidPresentation : Error { using Error::Error; };
struct MonadLawViolation : Error { using Error::Error; };
struct NoCorrespondence : Error { using Error::Error; };
struct NotSaturated : Error { using Error::Error; };

struct ParseError : Error {
  ParseError(const std::string& msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line(line), column(column) {}
  int line;
  int column;
};

}  // namespace enrvar

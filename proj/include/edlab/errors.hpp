#pragma once

#include <stdexcept>
#include <string>

namespace edlab {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define EDLAB_DEFINE_ERROR(Name)          \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  };

// group-core
EDLAB_DEFINE_ERROR(ClosureBudgetExceeded)
EDLAB_DEFINE_ERROR(NotADivisor)
EDLAB_DEFINE_ERROR(NotNormal)
EDLAB_DEFINE_ERROR(ScopeExceeded)
// group-dsl
EDLAB_DEFINE_ERROR(SemanticError)
EDLAB_DEFINE_ERROR(ActionNotAutomorphism)
EDLAB_DEFINE_ERROR(RealizationTooLarge)
EDLAB_DEFINE_ERROR(ManifestConflict)
// chartab
EDLAB_DEFINE_ERROR(SplittingFailure)
EDLAB_DEFINE_ERROR(LiftInconsistency)
// repdim
EDLAB_DEFINE_ERROR(RankMismatch)
// ed-engine
EDLAB_DEFINE_ERROR(ForbiddenModulus)
EDLAB_DEFINE_ERROR(CertificateFailure)
EDLAB_DEFINE_ERROR(InconsistentBounds)
EDLAB_DEFINE_ERROR(UnknownId)

#undef EDLAB_DEFINE_ERROR

/// Parse failure with the byte offset at which it was detected.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace edlab

#pragma once

#include <stdexcept>
#include <string>

namespace confspace {

// All library failures derive from Error; code() is the machine-readable tag the CLI emits.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& m) : Error("invalid-argument", m) {}
};
struct UnsupportedDomain : Error {
  explicit UnsupportedDomain(const std::string& m) : Error("unsupported-domain", m) {}
};
struct HypothesisViolation : Error {
  explicit HypothesisViolation(const std::string& m) : Error("hypothesis-violation", m) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& m) : Error("validation-error", m) {}
};
struct NotAHomomorphism : Error {
  explicit NotAHomomorphism(const std::string& m) : Error("not-a-homomorphism", m) {}
};
struct InternalError : Error {
  explicit InternalError(const std::string& m) : Error("internal-error", m) {}
};

}  // namespace confspace

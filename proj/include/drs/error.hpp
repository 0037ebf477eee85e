#pragma once

#include <stdexcept>
#include <string>

namespace drs {

enum class ErrorKind {
  Domain,          // argument outside the mathematical domain of the operation
  Capacity,        // request exceeds a hard size cap
  DegenerateFit,   // least-squares problem without a unique solution
  InvalidVariant,  // series variant not valid for the given parameters
  Unsupported,     // parameter combination the method does not cover
  Io,              // file could not be written
  InvalidArgument  // malformed input that is not a domain problem
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace drs

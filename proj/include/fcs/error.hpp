#pragma once

#include <stdexcept>
#include <string>

namespace fcs {

enum class ErrorKind {
  kInvalidArgument,  // precondition violated (bad id, non-simple input, ...)
  kParse,            // malformed text input
  kGuard,            // oracle size guard exceeded
  kVerification,     // an artifact failed a property check
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

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::kInvalidArgument, what);
}

}  // namespace fcs

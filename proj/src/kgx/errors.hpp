#pragma once

#include <stdexcept>
#include <string>

namespace kgx {

// Error taxonomy mirrors the process exit codes: 1 validation, 2 numerical
// contract (truncation / Hankel / route mismatch), 3 I/O.
enum class ErrorKind { validation = 1, numeric = 2, io = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_validation(const std::string& msg) {
  throw Error(ErrorKind::validation, msg);
}
[[noreturn]] inline void throw_numeric(const std::string& msg) {
  throw Error(ErrorKind::numeric, msg);
}
[[noreturn]] inline void throw_io(const std::string& msg) {
  throw Error(ErrorKind::io, msg);
}

}  // namespace kgx

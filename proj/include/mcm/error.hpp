#pragma once

#include <stdexcept>
#include <string>

namespace mcm {

// Classifies failures so front ends can map them to exit statuses.
enum class ErrorKind {
  kInvalidArgument,  // bad configuration or caller misuse
  kData,             // unusable input data (empty mask, schema mismatch, ...)
  kIo,               // missing or undecodable files
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
  throw Error(ErrorKind::kInvalidArgument, what);
}

[[noreturn]] inline void throw_data(const std::string& what) {
  throw Error(ErrorKind::kData, what);
}

[[noreturn]] inline void throw_io(const std::string& what) {
  throw Error(ErrorKind::kIo, what);
}

}  // namespace mcm

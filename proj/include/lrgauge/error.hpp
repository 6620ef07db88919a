#pragma once

#include <stdexcept>
#include <string>

namespace lrgauge {

enum class ErrorKind {
  NegativeRadicand,
  OutOfDomain,
  DepthExceeded,
  IndexOutOfRange,
  WidthUnachievable,
  ZeroLength,
  TagSearchFailed,
  BadRank,
  Unreachable,
  InvalidArgument,
  Parse,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lrgauge

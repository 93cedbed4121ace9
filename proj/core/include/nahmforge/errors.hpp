#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nahmforge {

// Every failure in the library carries a stable machine-readable kind string
// (e.g. "ZeroLeadingTerm", "SyntaxError") in addition to the human-readable
// message.  Callers that need to branch on failure mode switch on kind().
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void raise(const char* kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace nahmforge

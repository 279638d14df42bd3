#pragma once

#include <stdexcept>
#include <string>

namespace nlrefute {

// All recoverable failures carry a short machine-readable code
// ("parse_error", "cnf_blowup", "oracle_overflow", ...) next to the message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Parse failures additionally record the character offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(std::string code, const std::string& message, std::size_t position)
      : Error(std::move(code), message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace nlrefute

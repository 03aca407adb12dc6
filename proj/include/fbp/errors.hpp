#ifndef FBP_ERRORS_HPP
#define FBP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fbp {

/// Syntax error in a formula, term, or group literal. `position` is a
/// 0-based byte offset into the input text.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Semantic misuse of an operation: free variables where a sentence is
/// required, a missing assignment entry, a malformed group table.
class EvalError : public std::runtime_error {
public:
  explicit EvalError(const std::string& message) : std::runtime_error(message) {}
};

/// An enumeration or translation exceeded its configured cap.
class CapError : public std::runtime_error {
public:
  explicit CapError(const std::string& message) : std::runtime_error(message) {}
};

/// Invalid input data: non-prime p, reducible u, non-Eisenstein E, bad spec file.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace fbp

#endif  // FBP_ERRORS_HPP

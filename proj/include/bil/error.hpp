#ifndef BIL_ERROR_HPP
#define BIL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bil {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownLetter : public Error {
 public:
  explicit UnknownLetter(const std::string& letter)
      : Error("unknown letter '" + letter + "'"), letter_(letter) {}
  const std::string& letter() const noexcept { return letter_; }

 private:
  std::string letter_;
};

class UnknownWorld : public Error {
 public:
  explicit UnknownWorld(const std::string& world)
      : Error("unknown world '" + world + "'"), world_(world) {}
  const std::string& world() const noexcept { return world_; }

 private:
  std::string world_;
};

// Raised when an argument violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The enumeration oracle hit its class cap; results would be incomplete.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Internal consistency failure (two routes that must agree did not).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace bil

#endif  // BIL_ERROR_HPP

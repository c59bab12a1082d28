#ifndef ORDSEV_ERROR_HPP
#define ORDSEV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ordsev {

// Input errors map to CLI exit code 2, numerical failures to exit code 3.
enum class ErrorKind { Input, Numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::Numerical, what) {}
};

}  // namespace ordsev

#endif  // ORDSEV_ERROR_HPP

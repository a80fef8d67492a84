#pragma once

#include <stdexcept>
#include <string>

namespace framespec {

// Exit-code classes used by the CLI: domain -> 1, parse -> 2, numerical -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

class DomainError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 1; }
};

class ParseError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

class NumericalError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

}  // namespace framespec

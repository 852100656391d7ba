#pragma once

#include <stdexcept>
#include <string>

namespace awscheme {

enum class ErrorKind {
  domain,
  pole,
  divergence,
  continuation,
  genericity,
  quadrature,
  instability,
  step,
  validation,
  write
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace awscheme

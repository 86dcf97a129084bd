#pragma once

#include <stdexcept>
#include <string>

namespace hpw {

/// Argument outside the domain of an operation (point off the disk, r < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A quadrature did not reach its tolerance; carries the achieved residual.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double residual)
      : std::runtime_error(what + " (achieved residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Truncated-domain integral whose estimated tail is too large for the result.
class TailError : public std::runtime_error {
 public:
  TailError(const std::string& what, double tail, double value)
      : std::runtime_error(what), tail_(tail), value_(value) {}
  double tail() const noexcept { return tail_; }
  double value() const noexcept { return value_; }

 private:
  double tail_;
  double value_;
};

/// Linear-algebra setup that is numerically meaningless (degenerate Gram, ...).
class IllPosedError : public std::runtime_error {
 public:
  IllPosedError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Invalid experiment configuration (maps to exit status 64 in the CLI).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hpw

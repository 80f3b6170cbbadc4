#pragma once

#include <stdexcept>
#include <string>

namespace relwave {

// Input outside the mathematical domain of a function (e.g. Re z <= 0 for K1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical routine could not reach its accuracy contract.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integrand produced NaN/Inf at a quadrature node.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double node)
      : std::runtime_error(what), node_(node) {}
  double node() const noexcept { return node_; }

 private:
  double node_;
};

// The sigma search found no interior maximum on its coarse scan.
class BracketError : public std::runtime_error {
 public:
  BracketError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_, hi_;
};

// Scenario configuration problems; carries the offending field and line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string field = {}, int line = 0)
      : std::runtime_error(what), field_(std::move(field)), line_(line) {}
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

}  // namespace relwave

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace acs {

/// Argument outside the domain of an operation (forbidden Kummer b, u = w = 0, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters (u, v, w) admit no normalizable eigenstate for the requested z.
/// `violated` names the inequality that failed.
class NormalizabilityError : public DomainError {
 public:
  NormalizabilityError(const std::string& what, std::string violated)
      : DomainError(what), violated_(std::move(violated)) {}
  const std::string& violated() const noexcept { return violated_; }

 private:
  std::string violated_;
};

/// A series did not reach its tolerance within the allowed number of terms.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> partial,
                   std::size_t terms)
      : std::runtime_error(what), partial_(partial), terms_(terms) {}
  std::complex<double> partial_value() const noexcept { return partial_; }
  std::size_t terms() const noexcept { return terms_; }

 private:
  std::complex<double> partial_;
  std::size_t terms_;
};

/// The ladder-basis window is too small: the state still carries weight at the edge.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double tail_norm, std::size_t dimension)
      : std::runtime_error(what), tail_norm_(tail_norm), dimension_(dimension) {}
  double tail_norm() const noexcept { return tail_norm_; }
  std::size_t dimension() const noexcept { return dimension_; }

 private:
  double tail_norm_;
  std::size_t dimension_;
};

}  // namespace acs

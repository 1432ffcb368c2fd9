#include "acs/specfun.hpp"

#include <cmath>
#include <sstream>

#include "acs/errors.hpp"

namespace acs {
namespace {

// Plain Taylor sum of 1F1. A term that hits exactly zero ends the sum
// (terminating numerator parameter).
cplx kummer_series(cplx a, cplx b, cplx x, const SeriesControl& ctl) {
  cplx sum = 1.0;
  cplx term = 1.0;
  int small_in_row = 0;
  for (int j = 0; j < ctl.max_terms; ++j) {
    const double jd = static_cast<double>(j);
    const cplx ratio = (a + jd) / ((b + jd) * (jd + 1.0)) * x;
    term *= ratio;
    sum += term;
    if (term == 0.0) return sum;
    // Only stop once the terms are shrinking, otherwise a small early term
    // in front of the hump would end the sum prematurely.
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum) && std::abs(ratio) < 1.0) {
      if (++small_in_row >= 2) return sum;
    } else {
      small_in_row = 0;
    }
  }
  std::ostringstream msg;
  msg << "kummer_m: series did not converge in " << ctl.max_terms
      << " terms (a=" << a << ", b=" << b << ", x=" << x << ")";
  throw ConvergenceError(msg.str(), sum, static_cast<std::size_t>(ctl.max_terms));
}

void check_b(cplx b, const char* who) {
  if (nonpositive_integer(b, 1e-14)) {
    std::ostringstream msg;
    msg << who << ": b=" << b << " is zero or a negative integer";
    throw DomainError(msg.str());
  }
}

}  // namespace

void SeriesControl::validate() const {
  if (max_terms < 1) throw DomainError("SeriesControl: max_terms must be >= 1");
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw DomainError("SeriesControl: rel_tol must lie in (0, 1)");
}

std::optional<int> nonpositive_integer(cplx a, double tol) {
  if (std::abs(a.imag()) > tol) return std::nullopt;
  const double n = std::round(-a.real());
  if (n < 0.0 || std::abs(a.real() + n) > tol * std::max(1.0, n)) return std::nullopt;
  return static_cast<int>(n);
}

cplx kummer_m(cplx a, cplx b, cplx x, const SeriesControl& ctl) {
  ctl.validate();
  check_b(b, "kummer_m");

  if (const auto n = nonpositive_integer(a)) {
    cplx sum = 1.0;
    cplx term = 1.0;
    const cplx an = -static_cast<double>(*n);
    for (int j = 0; j < *n; ++j) {
      const double jd = static_cast<double>(j);
      term *= (an + jd) / ((b + jd) * (jd + 1.0)) * x;
      sum += term;
    }
    return sum;
  }

  if (std::abs(x) > kSeriesArgumentLimit) {
    std::ostringstream msg;
    msg << "kummer_m: |x|=" << std::abs(x) << " exceeds series range "
        << kSeriesArgumentLimit;
    throw DomainError(msg.str());
  }
  if (x.real() < 0.0) {
    const cplx ba = b - a;
    if (const auto n = nonpositive_integer(ba)) {
      (void)n;
      return std::exp(x) * kummer_m(ba, b, -x, ctl);
    }
    return std::exp(x) * kummer_series(ba, b, -x, ctl);
  }
  return kummer_series(a, b, x, ctl);
}

cplx hyp0f1(cplx b, cplx x, const SeriesControl& ctl) {
  ctl.validate();
  check_b(b, "hyp0f1");
  cplx sum = 1.0;
  cplx term = 1.0;
  for (int j = 0; j < ctl.max_terms; ++j) {
    const double jd = static_cast<double>(j);
    term *= x / ((b + jd) * (jd + 1.0));
    sum += term;
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum) &&
        std::abs(x) < std::abs(b + jd + 1.0) * (jd + 2.0))
      return sum;
  }
  throw ConvergenceError("hyp0f1: series did not converge", sum,
                         static_cast<std::size_t>(ctl.max_terms));
}

cplx hermite_h(int n, cplx x) {
  if (n < 0) throw DomainError("hermite_h: negative degree");
  cplx prev = 1.0;
  if (n == 0) return prev;
  cplx cur = 2.0 * x;
  for (int j = 1; j < n; ++j) {
    const cplx next = 2.0 * x * cur - 2.0 * static_cast<double>(j) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double log_gamma_pos(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma_pos: argument must be positive");
  return std::lgamma(x);
}

}  // namespace acs

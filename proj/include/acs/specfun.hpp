#pragma once

#include <complex>
#include <optional>

namespace acs {

using cplx = std::complex<double>;

/// Controls truncation of hypergeometric series.
struct SeriesControl {
  int max_terms = 500;
  double rel_tol = 1e-12;

  /// Throws DomainError unless max_terms >= 1 and 0 < rel_tol < 1.
  void validate() const;
};

/// Largest |x| accepted by the series evaluators (no asymptotic expansion is used).
inline constexpr double kSeriesArgumentLimit = 30.0;

/// If `a` is a non-positive integer -n (to within `tol`), returns n.
std::optional<int> nonpositive_integer(cplx a, double tol = 1e-12);

/// Confluent hypergeometric function M(a, b, x) = 1F1(a; b; x).
///
/// Terminating parameters a = -n are summed exactly as a degree-n polynomial for
/// any x. Otherwise |x| <= kSeriesArgumentLimit is required; for Re x < 0 the
/// Kummer transformation M(a,b,x) = e^x M(b-a,b,-x) is applied first so that the
/// summed series has no alternating cancellation.
///
/// Throws DomainError for b in {0, -1, -2, ...} or |x| out of range, and
/// ConvergenceError if ctl.max_terms is exhausted.
cplx kummer_m(cplx a, cplx b, cplx x, const SeriesControl& ctl = {});

/// Confluent limit 0F1(; b; x) = sum x^j / ((b)_j j!).
cplx hyp0f1(cplx b, cplx x, const SeriesControl& ctl = {});

/// Physicists' Hermite polynomial H_n(x) by upward recurrence.
cplx hermite_h(int n, cplx x);

/// ln Gamma(x) for x > 0.
double log_gamma_pos(double x);

}  // namespace acs

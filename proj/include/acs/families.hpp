#pragma once

#include <cstddef>
#include <memory>

#include "acs/repr.hpp"
#include "acs/states.hpp"

namespace acs {

/// Largest window the certified constructors will grow to.
inline constexpr std::size_t kMaxTruncation = 12800;

/// Even w = 0 states |z, sqrt(1+x^2), sign*x; +>, solved with the window grown
/// from n_start until the tail is below tol. The default is tighter than
/// kTailThreshold because the recurrence is cheap and second moments weight
/// the edge of the window by m^2.
struct W0Family {
  cplx z = 1.0;
  double v_sign = -1.0;

  AcsParams params(double x) const;
  StateVector state(double x, std::size_t n_start = 400, double tol = 1e-13) const;
};

/// Squeezed even cats S(xi)|alpha_+>, alpha^2/2 = z = z_dir * d, with the
/// squeeze unitary cached across calls (xi fixed).
class SqueezedCatFamily {
 public:
  SqueezedCatFamily(cplx z_dir, SqueezeParam xi, std::size_t n_max, bool even = true);

  StateVector state(double d) const;
  const SqueezeParam& xi() const noexcept { return xi_; }
  std::size_t n_max() const noexcept { return n_max_; }

 private:
  cplx z_dir_;
  SqueezeParam xi_;
  std::size_t n_max_;
  bool even_;
  std::shared_ptr<const Squeezer> squeezer_;
};

}  // namespace acs

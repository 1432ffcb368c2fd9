#include "acs/families.hpp"

#include <cmath>

namespace acs {

AcsParams W0Family::params(double x) const {
  return AcsParams{z, std::sqrt(1.0 + x * x), v_sign * x, 0.0, ReprIndex::bosonic_even()};
}

StateVector W0Family::state(double x, std::size_t n_start, double tol) const {
  return solve_acs_certified(params(x), n_start, tol, kMaxTruncation);
}

SqueezedCatFamily::SqueezedCatFamily(cplx z_dir, SqueezeParam xi, std::size_t n_max, bool even)
    : z_dir_(z_dir),
      xi_(xi),
      n_max_(n_max),
      even_(even),
      squeezer_(std::make_shared<const Squeezer>(
          xi, even ? ReprIndex::bosonic_even() : ReprIndex::bosonic_odd(), n_max)) {}

StateVector SqueezedCatFamily::state(double d) const {
  const StateVector cat = subfamily(CatSpec{principal_sqrt(2.0 * z_dir_ * d), even_}, n_max_);
  return squeezer_->apply(cat);
}

}  // namespace acs

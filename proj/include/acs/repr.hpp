#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace acs {

using cplx = std::complex<double>;

enum class Flavor { abstract, bosonic_even, bosonic_odd };

std::string_view to_string(Flavor f);
/// Accepts "abstract", "even"/"bosonic_even", "odd"/"bosonic_odd".
Flavor parse_flavor(std::string_view s);

/// Discrete-series representation D(k) of su(1,1), lowest K3 weight k.
///
/// The bosonic flavors are the two parity sectors of K- = a^2/2, K+ = a+^2/2,
/// K3 = (a+a + 1/2)/2, with ladder index m sitting on photon number 2m (k = 1/4)
/// or 2m + 1 (k = 3/4).
class ReprIndex {
 public:
  /// k must be a positive half-integer (1/2, 1, 3/2, ...).
  static ReprIndex abstract(double k);
  static ReprIndex bosonic_even();
  static ReprIndex bosonic_odd();
  /// Builds from a flavor; `k` is only consulted for the abstract flavor.
  static ReprIndex make(Flavor flavor, double k);

  double k() const noexcept { return k_; }
  Flavor flavor() const noexcept { return flavor_; }
  bool bosonic() const noexcept { return flavor_ != Flavor::abstract; }
  /// Photon number of ladder state m; bosonic flavors only.
  std::size_t photon_number(std::size_t m) const;

  friend bool operator==(const ReprIndex&, const ReprIndex&) = default;

 private:
  ReprIndex(double k, Flavor f) : k_(k), flavor_(f) {}
  double k_;
  Flavor flavor_;
};

/// g_m = sqrt((m+1)(m+2k)), the K+ matrix element <m+1|K+|m>.
double ladder_g(double k, std::size_t m);

struct LadderAction {
  double f_plus;   // K+|m> = f_plus |m+1>
  double f_minus;  // K-|m> = f_minus |m-1>
  double e3;       // K3|m> = e3 |m>
};

LadderAction ladder_action(const ReprIndex& repr, std::size_t m);

/// Truncated state in the orthonormal ladder basis |0;k>, ..., |N;k>.
///
/// tail_norm is the weight carried by the last 10% of the window; a small
/// tail certifies that the truncation did not cut the state.
class StateVector {
 public:
  StateVector(ReprIndex repr, std::vector<cplx> amplitudes);

  const ReprIndex& repr() const noexcept { return repr_; }
  std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }
  cplx operator[](std::size_t m) const { return amplitudes_[m]; }
  /// Number of basis states, N + 1.
  std::size_t size() const noexcept { return amplitudes_.size(); }
  double tail_norm() const noexcept { return tail_norm_; }
  double norm() const;

  /// Scales to unit norm and fixes the global phase so that the first
  /// non-negligible amplitude is real and positive.
  void normalize();
  /// Zero-pads (or, if the dropped part is zero, shrinks) to `n` basis states.
  StateVector resized(std::size_t n) const;

  /// <this|other>; the shorter vector is zero-extended.
  cplx inner(const StateVector& other) const;
  /// |<this|other>|^2 / (<this|this><other|other>).
  double fidelity(const StateVector& other) const;

  /// Amplitude on Fock state |n> for bosonic flavors; zero for the wrong parity
  /// or beyond the window. This is a view: no reindexed copy is made.
  cplx fock_amplitude(std::size_t n) const;
  /// One past the largest photon number covered by the window.
  std::size_t fock_extent() const;

 private:
  void update_tail();

  ReprIndex repr_;
  std::vector<cplx> amplitudes_;
  double tail_norm_ = 0.0;
};

/// Squeeze parameter xi = r e^{i theta}.
class SqueezeParam {
 public:
  SqueezeParam() = default;
  static SqueezeParam from_complex(cplx xi);
  /// r >= 0; theta is wrapped to [0, 2 pi).
  static SqueezeParam from_polar(double r, double theta);

  cplx xi() const noexcept { return std::polar(r_, theta_); }
  double r() const noexcept { return r_; }
  double theta() const noexcept { return theta_; }

 private:
  double r_ = 0.0;
  double theta_ = 0.0;
};

/// Tridiagonal operator in the ladder basis.
struct Tridiagonal {
  std::vector<cplx> diag;   // (m, m)
  std::vector<cplx> upper;  // (m, m+1)
  std::vector<cplx> lower;  // (m+1, m)

  std::size_t size() const noexcept { return diag.size(); }
  Eigen::MatrixXcd dense() const;
  std::vector<cplx> apply(std::span<const cplx> x) const;
};

/// Z = u K- + v K+ + w K3 on the (N+1)-dimensional window; N >= 2.
Tridiagonal operator_matrix(cplx u, cplx v, cplx w, const ReprIndex& repr, std::size_t n_max);

/// Default truncation (largest ladder index) for a representation.
std::size_t default_truncation(const ReprIndex& repr);

/// Tail-norm level below which a truncated state is considered certified.
inline constexpr double kTailThreshold = 1e-8;

/// The unitary exp(xi K+ - xi* K-) on a fixed window, computed once and
/// applied to any number of states.
class Squeezer {
 public:
  Squeezer(SqueezeParam xi, ReprIndex repr, std::size_t n_max);

  const Eigen::MatrixXcd& unitary() const noexcept { return unitary_; }
  const SqueezeParam& param() const noexcept { return xi_; }
  std::size_t n_max() const noexcept { return n_max_; }

  /// U psi without renormalization; psi is zero-padded to the window.
  std::vector<cplx> apply_raw(const StateVector& psi) const;
  /// U psi, renormalized. Throws TruncationError when the result's tail norm
  /// exceeds `tail_threshold`.
  StateVector apply(const StateVector& psi, double tail_threshold = kTailThreshold) const;

 private:
  SqueezeParam xi_;
  ReprIndex repr_;
  std::size_t n_max_;
  Eigen::MatrixXcd unitary_;
};

StateVector squeeze_apply(const SqueezeParam& xi, const StateVector& psi, std::size_t n_max,
                          double tail_threshold = kTailThreshold);

struct HermitianSpectrum {
  std::vector<double> eigenvalues;         // ascending
  std::vector<StateVector> eigenvectors;   // same order
  bool normalizable = false;
};

/// Eigen-decomposition of the truncated hermitean X = u K- + u* K+ + w K3.
HermitianSpectrum hermitian_spectrum(cplx u, double w, const ReprIndex& repr, std::size_t n_max);

/// Levels of X that are unchanged (to `tol`) when the window doubles from
/// n_max to 2 n_max, ordered from the bottom of the spectrum for w >= 0 and
/// from the top for w < 0. Stops at the first unstable level.
std::vector<double> stable_levels(cplx u, double w, const ReprIndex& repr, std::size_t n_max,
                                  double tol = 1e-6);

}  // namespace acs

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "acs/repr.hpp"

namespace acs {

/// Eigenproblem (u K- + v K+ + w K3) psi = z psi in representation `repr`.
struct AcsParams {
  cplx z;
  cplx u;
  cplx v;
  cplx w;
  ReprIndex repr;

  /// Killing invariant l^2 = w^2 - 4uv, always recomputed.
  cplx l2() const { return w * w - 4.0 * u * v; }
  /// Throws DomainError when u = v = w = 0.
  void validate() const;
};

/// Principal square root with a signed-zero imaginary part forced to +0, so
/// that a real negative l^2 always maps to +i sqrt(|l^2|).
cplx principal_sqrt(cplx x);

struct NormalizabilityCheck {
  bool normalizable = false;
  std::string violated;  // empty when normalizable
};

/// Both growth inequalities |w -+ sqrt(l^2)| < 2|u| (u != 0); |w/(2u)| < 1
/// when l^2 = 0; |v/w| < 1 when u = 0. Throws DomainError for u = w = 0.
NormalizabilityCheck check_normalizable(cplx u, cplx v, cplx w);
bool normalizable(cplx u, cplx v, cplx w);

/// Weaker condition sufficient at a quantized eigenvalue: at least one of the
/// two inequalities holds (u != 0); |v/w| < 1 when u = 0.
bool normalizable_quantized(cplx u, cplx v, cplx w);

/// z_n = -(k + n) sqrt(w^2 - 4uv), principal branch.
cplx quantized_z(int n, cplx u, cplx v, cplx w, double k);

/// Identifies z as a quantized eigenvalue. `branch` = +1 when a = k + z/s
/// equals -n for the principal root s, -1 for the opposite root. For u = 0,
/// n is the ladder index m0 with z = w (k + m0) and branch = 0.
struct QuantumIndex {
  int n;
  int branch;
};
std::optional<QuantumIndex> quantum_index(const AcsParams& p, double tol = 1e-9);

/// Builds |z,u,v,w;k> on ladder indices 0..n_max.
///
/// u != 0, both growth inequalities: forward three-term recurrence
///   u g_m c_{m+1} = (z - w(k+m)) c_m - v g_{m-1} c_{m-1},  c_0 = 1.
/// u != 0, quantized z with only the matching inequality: the terminating
///   closed form exp(c eta) M(-n, 2k, c1 eta) expanded in the ladder basis.
/// u = 0: upward recurrence from the lowest occupied index m0, z = w(k + m0).
///
/// Throws NormalizabilityError, DomainError, or TruncationError when the
/// tail norm exceeds `tol`.
StateVector solve_acs(const AcsParams& p, std::size_t n_max, double tol = kTailThreshold);

/// Unnormalized forward-recurrence amplitudes (c_0 = 1, u != 0) with no
/// normalizability check; large values are rescaled to avoid overflow.
std::vector<cplx> forward_recurrence(const AcsParams& p, std::size_t n_max);

/// solve_acs with the window doubled from n_start until the tail is below tol.
StateVector solve_acs_certified(const AcsParams& p, std::size_t n_start, double tol,
                                std::size_t n_limit);

/// ||(Z - z) psi|| over ladder rows 0..N-1, i.e. every row whose value does
/// not depend on amplitudes outside the window.
double eigen_residual(const AcsParams& p, const StateVector& psi);

// ---------------------------------------------------------------------------
// Closed forms

enum class Gauge { bg_eta, cs_alpha };

/// exp(c eta) M(a, 2k, c1 eta); when |c1| is below kDegenerateC1 the confluent
/// limit exp(c eta) 0F1(2k; lambda eta) with lambda = z/u is used instead.
struct BgSeriesForm {
  cplx a, b, c, c1;
  cplx sqrt_l2;
  bool degenerate;
  cplx lambda;
};
/// exp(c' alpha^2) M(a+, 1/2, c2 alpha^2), with v' = -(w^2 - 4uv)/(4u).
struct BosonicEvenForm {
  cplx a_plus, c_prime, c2, v_prime;
  cplx sqrt_l2;
  bool degenerate;
  cplx lambda;
};
/// alpha exp(c' alpha^2) M(a-, 3/2, c2 alpha^2).
struct BosonicOddForm {
  cplx a_minus, c_prime, c2, v_prime;
  cplx sqrt_l2;
  bool degenerate;
  cplx lambda;
};
/// u = 0: exp(c~ alpha^2) alpha^b with c~ = -v/(2w), b = -1/2 + 2z/w (cs_alpha),
/// or exp(c~ eta) eta^b with c~ = -v/w, b = z/w - k (bg_eta).
struct UZeroForm {
  cplx c_tilde, b;
  Gauge gauge;
};

using ClosedFormParams = std::variant<BgSeriesForm, BosonicEvenForm, BosonicOddForm, UZeroForm>;

inline constexpr double kDegenerateC1 = 1e-8;

ClosedFormParams closed_form_params(const AcsParams& p, Gauge gauge);

/// Unnormalized closed-form wavefunction at `point` (eta or alpha).
cplx wavefunction(const AcsParams& p, cplx point, Gauge gauge);

/// The same function rebuilt from ladder amplitudes:
///   bg_eta:   sum_m c_m eta^m / sqrt(m! (2k)_m)
///   cs_alpha: sum_m c_m alpha^n / sqrt(n!),  n = photon number of m.
cplx overlap_series(const StateVector& psi, cplx point, Gauge gauge);

// ---------------------------------------------------------------------------
// Named subfamilies

struct BgSpec {
  cplx z;
  ReprIndex repr;
};
struct PerelomovSpec {
  cplx tau;  // |tau| < 1
  ReprIndex repr;
};
struct CatSpec {
  cplx alpha;
  bool even = true;
};
struct SqueezedCatSpec {
  cplx z;  // K- eigenvalue of the cat, alpha = sqrt(2z)
  SqueezeParam xi;
  bool even = true;
};
struct SqueezedBinomialSpec {
  int n;
  cplx v;
  cplx w;  // |v/w| < 1
};

using SubfamilySpec =
    std::variant<BgSpec, PerelomovSpec, CatSpec, SqueezedCatSpec, SqueezedBinomialSpec>;

/// bg:       c_m = z^m / sqrt(m! (2k)_m)
/// perelomov: c_m = tau^m sqrt(Gamma(m+2k) / (m! Gamma(2k)))
/// cat:      even/odd Fock projection of the Glauber state |alpha>
/// squeezed cat: S(xi) applied to the cat with alpha = sqrt(2z)
/// squeezed binomial: S(xi) (a+ - (v*/w*) a)^n |0>, tanh r = |v/w|, arg xi = arg(-v/w)
StateVector subfamily(const SubfamilySpec& spec, std::size_t n_max);

/// ACS parameters whose eigenstate is S(xi)|alpha_+->: u = cosh^2 r,
/// v = sinh^2 r e^{2 i theta}, w = -sinh 2r e^{i theta}.
AcsParams squeezed_cat_params(cplx z, const SqueezeParam& xi, bool even = true);

/// Perelomov parameter tau = z / (2 k u) of the w = 0 ground-level ACS.
cplx perelomov_tau(const AcsParams& p);

// ---------------------------------------------------------------------------

struct FiniteStructure {
  bool finite = false;
  int n = 0;                // level used for the support cut
  double beyond_norm = 1;   // weight on ladder indices > n after de-squeezing
  SqueezeParam xi;          // |xi| = atanh|c|, arg xi = arg c
};

/// De-squeezes solve_acs(p) with exp(-(xi K+ - xi* K-)) and measures the weight
/// beyond ladder index n. For a quantized z, n is its level; otherwise the
/// nearest level. finite is true iff beyond_norm <= 1e-6.
FiniteStructure finite_structure(const AcsParams& p, std::size_t n_max);
bool finite_structure_check(const AcsParams& p, std::size_t n_max);

}  // namespace acs

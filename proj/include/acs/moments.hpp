#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acs/repr.hpp"

namespace acs {

/// Photon-level moments, present for the bosonic flavors only.
struct BosonicMoments {
  double mean_n = 0;       // <a+ a>
  cplx mean_a2;            // <a^2>
  cplx mean_a4;            // <a^4>
  double mean_n2kind = 0;  // <a+^2 a^2>
  double var_q = 0;        // q = (a + a+)/sqrt2
  double var_p = 0;        // p = -i(a - a+)/sqrt2
  double var_X = 0;        // X = (a^2 + a+^2)/sqrt2 = 2 sqrt2 K1
  double var_Y = 0;        // Y = -i(a^2 - a+^2)/sqrt2 = 2 sqrt2 K2
};

struct MomentReport {
  std::array<double, 3> mean_K{};  // <K1>, <K2>, <K3>
  double var_K1 = 0;
  double var_K2 = 0;
  double cov_K12 = 0;  // (1/2)<K1 K2 + K2 K1> - <K1><K2>
  cplx mean_Km;        // <K->
  cplx mean_Km2;       // <K-^2>
  std::optional<BosonicMoments> bosonic;
  std::optional<double> mandel_q;
  std::string mandel_q_reason;  // why mandel_q is absent
  double schrodinger_lhs = 0;
  double schrodinger_rhs = 0;
};

/// Exact truncated-basis sums of all first and second K moments. Bosonic
/// fields follow from <a+a> = 2<K3> - 1/2, <a^2> = 2<K->, <a^4> = 4<K-^2>,
/// <a+^2 a^2> = 4<K+K->.
MomentReport k_moments(const StateVector& psi);

/// (var_K1 var_K2 - cov^2, <K3>^2 / 4).
std::pair<double, double> schrodinger_gap(const MomentReport& report);

/// (<a+^2 a^2> - <a+a>^2) / <a+a>. Throws DomainError for abstract flavors or
/// a vanishing mean photon number.
double mandel_q(const MomentReport& report);

struct SqueezeFlags {
  bool q_sq = false;  // var_q < 1/2
  bool p_sq = false;
  bool x_sq = false;  // var_X < 1
  bool y_sq = false;
  std::vector<std::pair<char, char>> joint;  // linear/quadratic pairs squeezed together
};

SqueezeFlags squeeze_flags(const BosonicMoments& b);

/// Second moments for w = 0 eigenstates with |u|^2 - |v|^2 = 1 in closed form:
///   var_K1 = |u - v|^2 <K3>/2, var_K2 = |u + v|^2 <K3>/2, cov = Im(u* v) <K3>,
///   var_q,p = 1/2 + <a+a> +- Re[(u - v) z*].
/// The exact linear-quadrature correction is 2 Re[(u - v) z*] (= Re<a^2>), so
/// var_q/var_p here are off by Re[(u - v) z*]; they are kept as a cross-check
/// target, never as ground truth.
struct W0ClosedForm {
  double var_K1, var_K2, cov, var_q, var_p;
};
W0ClosedForm closed_form_w0(cplx z, cplx u, cplx v, double k3_mean, double n_mean);

/// Photon moments of S(xi)|alpha_+> (z = alpha^2/2 = |z| e^{i phi},
/// xi = r e^{i theta}) from the cat's mean photon number n_bar, followed by the
/// quadrature variances built from them.
struct SqueezedCatClosedForm {
  double mean_n;
  cplx mean_a2;
  cplx mean_a4;
  double mean_n2kind;
  double var_q, var_p, var_X, var_Y;
};
SqueezedCatClosedForm closed_form_squeezed_cat(cplx z, const SqueezeParam& xi, double n_bar);

/// Variances from the photon moments of a parity eigenstate (<a> = 0).
void fill_quadratures(BosonicMoments& b);

struct Interval {
  double lo;
  double hi;
};

struct IntervalSearch {
  int grid_points = 501;
  int bisection_steps = 40;
};

/// Maximal sub-intervals of [lo, hi] on which variance(x) < threshold. The
/// range is sampled on a uniform grid; each sign change is then refined by
/// bisection. Interval ends that coincide with the range ends are not refined.
std::vector<Interval> squeezing_interval(const std::function<double(double)>& variance,
                                         double lo, double hi, double threshold,
                                         IntervalSearch search = {});

}  // namespace acs

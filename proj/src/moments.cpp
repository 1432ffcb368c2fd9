#include "acs/moments.hpp"

#include <cmath>

#include "acs/errors.hpp"

namespace acs {

void fill_quadratures(BosonicMoments& b) {
  const double n = b.mean_n;
  b.var_q = 0.5 + n + b.mean_a2.real();
  b.var_p = 0.5 + n - b.mean_a2.real();
  const double base = 1.0 + 2.0 * n + b.mean_n2kind;
  const double mean_x = std::sqrt(2.0) * b.mean_a2.real();
  const double mean_y = std::sqrt(2.0) * b.mean_a2.imag();
  b.var_X = base + b.mean_a4.real() - mean_x * mean_x;
  b.var_Y = base - b.mean_a4.real() - mean_y * mean_y;
}

MomentReport k_moments(const StateVector& psi) {
  const double k = psi.repr().k();
  const std::size_t size = psi.size();
  const double nrm2 = psi.norm() * psi.norm();

  double k3 = 0, kpkm = 0, kmkp = 0;
  cplx km = 0, km2 = 0;
  for (std::size_t m = 0; m < size; ++m) {
    const double p = std::norm(psi[m]);
    const double md = static_cast<double>(m);
    const double e3 = k + md;
    const double g = ladder_g(k, m);
    k3 += p * e3;
    kpkm += p * md * (md + 2.0 * k - 1.0);
    kmkp += p * g * g;
    if (m + 1 < size) km += g * std::conj(psi[m]) * psi[m + 1];
    if (m + 2 < size) km2 += g * ladder_g(k, m + 1) * std::conj(psi[m]) * psi[m + 2];
  }
  k3 /= nrm2;
  kpkm /= nrm2;
  kmkp /= nrm2;
  km /= nrm2;
  km2 /= nrm2;

  MomentReport r;
  r.mean_Km = km;
  r.mean_Km2 = km2;
  // K1 = (K+ + K-)/2, K2 = (K+ - K-)/(2i).
  const double k1 = km.real();
  const double k2 = -km.imag();
  r.mean_K = {k1, k2, k3};
  const double sym = 0.25 * (kpkm + kmkp);
  r.var_K1 = sym + 0.5 * km2.real() - k1 * k1;
  r.var_K2 = sym - 0.5 * km2.real() - k2 * k2;
  r.cov_K12 = -0.5 * km2.imag() - k1 * k2;
  r.schrodinger_lhs = r.var_K1 * r.var_K2 - r.cov_K12 * r.cov_K12;
  r.schrodinger_rhs = 0.25 * k3 * k3;

  if (psi.repr().bosonic()) {
    BosonicMoments b;
    b.mean_n = 2.0 * k3 - 0.5;
    b.mean_a2 = 2.0 * km;
    b.mean_a4 = 4.0 * km2;
    b.mean_n2kind = 4.0 * kpkm;
    fill_quadratures(b);
    r.bosonic = b;
    if (b.mean_n > 0.0) {
      r.mandel_q = (b.mean_n2kind - b.mean_n * b.mean_n) / b.mean_n;
    } else {
      r.mandel_q_reason = "mean photon number is zero";
    }
  } else {
    r.mandel_q_reason = "abstract representation has no photon number";
  }
  return r;
}

std::pair<double, double> schrodinger_gap(const MomentReport& report) {
  const double lhs = report.var_K1 * report.var_K2 - report.cov_K12 * report.cov_K12;
  const double k3 = report.mean_K[2];
  return {lhs, 0.25 * k3 * k3};
}

double mandel_q(const MomentReport& report) {
  if (!report.bosonic) throw DomainError("mandel_q: abstract representation");
  const auto& b = *report.bosonic;
  if (!(b.mean_n > 0.0)) throw DomainError("mandel_q: mean photon number is zero");
  return (b.mean_n2kind - b.mean_n * b.mean_n) / b.mean_n;
}

SqueezeFlags squeeze_flags(const BosonicMoments& b) {
  SqueezeFlags f;
  f.q_sq = b.var_q < 0.5;
  f.p_sq = b.var_p < 0.5;
  f.x_sq = b.var_X < 1.0;
  f.y_sq = b.var_Y < 1.0;
  for (const auto& [lin, lsq] : {std::pair{'q', f.q_sq}, std::pair{'p', f.p_sq}})
    for (const auto& [quad, qsq] : {std::pair{'X', f.x_sq}, std::pair{'Y', f.y_sq}})
      if (lsq && qsq) f.joint.emplace_back(lin, quad);
  return f;
}

W0ClosedForm closed_form_w0(cplx z, cplx u, cplx v, double k3_mean, double n_mean) {
  const double unit = std::norm(u) - std::norm(v);
  if (std::abs(unit - 1.0) > 1e-10)
    throw DomainError("closed_form_w0: requires |u|^2 - |v|^2 = 1");
  W0ClosedForm out;
  out.var_K1 = 0.5 * std::norm(u - v) * k3_mean;
  out.var_K2 = 0.5 * std::norm(u + v) * k3_mean;
  out.cov = (std::conj(u) * v).imag() * k3_mean;
  const double shift = ((u - v) * std::conj(z)).real();
  out.var_q = 0.5 + n_mean + shift;
  out.var_p = 0.5 + n_mean - shift;
  return out;
}

SqueezedCatClosedForm closed_form_squeezed_cat(cplx z, const SqueezeParam& xi, double n_bar) {
  const double r = xi.r();
  const double th = xi.theta();
  const double az = std::abs(z);
  const double ph = std::arg(z);
  const double sh = std::sinh(r), ch = std::cosh(r);
  const double sh2 = sh * sh, ch2 = ch * ch;
  const double s2r = std::sinh(2.0 * r);
  const double s4r = std::sinh(4.0 * r);
  const auto e = [](double x) { return std::polar(1.0, x); };
  const double cdiff = std::cos(th - ph);

  SqueezedCatClosedForm out{};
  out.mean_n = sh2 + 2.0 * az * s2r * cdiff + n_bar * std::cosh(2.0 * r);
  out.mean_a2 = 0.5 * s2r * e(th) + 2.0 * az * (ch2 * e(ph) + sh2 * e(2.0 * th - ph)) +
                n_bar * s2r * e(th);
  out.mean_n2kind =
      n_bar * (2.0 * s2r * s2r + 4.0 * sh2 * sh2 + 2.0 * az * s4r * cdiff) +
      4.0 * az * az *
          (s2r * s2r + ch2 * ch2 + sh2 * sh2 + 0.5 * s2r * s2r * std::cos(2.0 * th - 2.0 * ph)) +
      2.0 * az * s2r * cdiff * (ch2 + 5.0 * sh2) + 0.25 * s2r * s2r + 2.0 * sh2 * sh2;
  out.mean_a4 =
      n_bar * (3.0 * s2r * s2r * e(2.0 * th) +
               4.0 * az * s2r * (ch2 * e(th + ph) + sh2 * e(3.0 * th - ph))) +
      4.0 * az * az *
          (1.5 * s2r * s2r * e(2.0 * th) + sh2 * sh2 * e(2.0 * (2.0 * th - ph)) +
           ch2 * ch2 * e(2.0 * ph)) +
      6.0 * az * s2r * (ch2 * e(th + ph) + sh2 * e(3.0 * th - ph)) +
      0.75 * s2r * s2r * e(2.0 * th);

  BosonicMoments b;
  b.mean_n = out.mean_n;
  b.mean_a2 = out.mean_a2;
  b.mean_a4 = out.mean_a4;
  b.mean_n2kind = out.mean_n2kind;
  fill_quadratures(b);
  out.var_q = b.var_q;
  out.var_p = b.var_p;
  out.var_X = b.var_X;
  out.var_Y = b.var_Y;
  return out;
}

std::vector<Interval> squeezing_interval(const std::function<double(double)>& variance,
                                         double lo, double hi, double threshold,
                                         IntervalSearch search) {
  if (!(lo < hi)) throw DomainError("squeezing_interval: need lo < hi");
  if (search.grid_points < 2) throw DomainError("squeezing_interval: need >= 2 grid points");

  const int n = search.grid_points;
  std::vector<double> xs(n);
  std::vector<bool> below(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    below[i] = variance(xs[i]) < threshold;
  }
  const auto refine = [&](double a, double b, bool a_below) {
    for (int s = 0; s < search.bisection_steps; ++s) {
      const double mid = 0.5 * (a + b);
      if ((variance(mid) < threshold) == a_below)
        a = mid;
      else
        b = mid;
    }
    return 0.5 * (a + b);
  };

  std::vector<Interval> out;
  double start = lo;
  bool open = below[0];
  for (int i = 1; i < n; ++i) {
    if (below[i] == below[i - 1]) continue;
    const double edge = refine(xs[i - 1], xs[i], below[i - 1]);
    if (below[i]) {
      start = edge;
      open = true;
    } else {
      out.push_back({start, edge});
      open = false;
    }
  }
  if (open) out.push_back({start, hi});
  return out;
}

}  // namespace acs

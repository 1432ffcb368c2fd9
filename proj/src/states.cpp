#include "acs/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "acs/errors.hpp"
#include "acs/specfun.hpp"

namespace acs {
namespace {

// Relative size below which l^2 is treated as exactly zero.
constexpr double kDegenerateL2 = 1e-14;

bool degenerate_l2(cplx u, cplx v, cplx w) {
  const cplx l2 = w * w - 4.0 * u * v;
  const double scale = std::max({std::norm(w), std::abs(4.0 * u * v), 1e-300});
  return std::abs(l2) <= kDegenerateL2 * scale;
}

// log of sqrt(m! (2k)_m), the BG basis weight.
double log_bg_weight(double k, std::size_t m) {
  const double md = static_cast<double>(m);
  return 0.5 * (log_gamma_pos(md + 1.0) + log_gamma_pos(md + 2.0 * k) - log_gamma_pos(2.0 * k));
}

// |x|^m e^{i m arg x} e^{log_scale}, robust for large m.
cplx scaled_power(cplx x, std::size_t m, double log_scale) {
  if (m == 0) return std::exp(log_scale);
  if (x == 0.0) return 0.0;
  const double md = static_cast<double>(m);
  return std::polar(std::exp(md * std::log(std::abs(x)) + log_scale), md * std::arg(x));
}

void finish(StateVector& psi, double tol, const char* who) {
  psi.normalize();
  if (psi.tail_norm() > tol) {
    std::ostringstream msg;
    msg << who << ": tail norm " << psi.tail_norm() << " exceeds " << tol << " at N="
        << psi.size() - 1 << "; enlarge the truncation";
    throw TruncationError(msg.str(), psi.tail_norm(), psi.size() - 1);
  }
}

std::string describe(double value, const char* expr) {
  std::ostringstream msg;
  msg << expr << " (value " << value << ")";
  return msg.str();
}

// exp(c eta) M(-n, 2k, c1 eta) expanded in the orthonormal ladder basis.
std::vector<cplx> terminating_closed_form(const AcsParams& p, int n, cplx root,
                                          std::size_t n_max) {
  const double k = p.repr.k();
  const cplx c = -(p.w + root) / (2.0 * p.u);
  const cplx c1 = root / p.u;
  std::vector<cplx> poly(static_cast<std::size_t>(n) + 1);
  poly[0] = 1.0;
  for (int j = 0; j < n; ++j) {
    const double jd = static_cast<double>(j);
    poly[j + 1] = poly[j] * (jd - n) / ((2.0 * k + jd) * (jd + 1.0)) * c1;
  }
  std::vector<cplx> amps(n_max + 1, cplx{});
  for (std::size_t m = 0; m <= n_max; ++m) {
    const double lw = log_bg_weight(k, m);
    cplx s = 0.0;
    for (std::size_t j = 0; j <= std::min<std::size_t>(static_cast<std::size_t>(n), m); ++j) {
      const std::size_t e = m - j;
      s += poly[j] * scaled_power(c, e, lw - log_gamma_pos(static_cast<double>(e) + 1.0));
    }
    amps[m] = s;
  }
  return amps;
}

}  // namespace

std::vector<cplx> forward_recurrence(const AcsParams& p, std::size_t n_max) {
  const double k = p.repr.k();
  std::vector<cplx> c(n_max + 1, cplx{});
  c[0] = 1.0;
  for (std::size_t m = 0; m < n_max; ++m) {
    cplx rhs = (p.z - p.w * (k + static_cast<double>(m))) * c[m];
    if (m > 0) rhs -= p.v * ladder_g(k, m - 1) * c[m - 1];
    c[m + 1] = rhs / (p.u * ladder_g(k, m));
    if (std::abs(c[m + 1]) > 1e150) {
      for (std::size_t j = 0; j <= m + 1; ++j) c[j] *= 1e-150;
    }
  }
  return c;
}

void AcsParams::validate() const {
  if (u == 0.0 && v == 0.0 && w == 0.0) throw DomainError("AcsParams: u = v = w = 0");
}

cplx principal_sqrt(cplx x) {
  if (x.imag() == 0.0) x = cplx(x.real(), 0.0);
  return std::sqrt(x);
}

NormalizabilityCheck check_normalizable(cplx u, cplx v, cplx w) {
  NormalizabilityCheck out;
  if (u == 0.0) {
    if (w == 0.0) throw DomainError("normalizable: u = w = 0 (operator v K+ has no eigenstates)");
    const double ratio = std::abs(v / w);
    out.normalizable = ratio < 1.0;
    if (!out.normalizable) out.violated = describe(ratio, "|v/w| < 1");
    return out;
  }
  if (degenerate_l2(u, v, w)) {
    const double ratio = std::abs(w / (2.0 * u));
    out.normalizable = ratio < 1.0;
    if (!out.normalizable) out.violated = describe(ratio, "|w/(2u)| < 1");
    return out;
  }
  const cplx root = principal_sqrt(w * w - 4.0 * u * v);
  const double first = std::abs(w - root) / (2.0 * std::abs(u));
  const double second = std::abs(w + root) / (2.0 * std::abs(u));
  if (first >= 1.0) out.violated = describe(first, "|w - sqrt(w^2-4uv)| / (2|u|) < 1");
  if (second >= 1.0) {
    if (!out.violated.empty()) out.violated += "; ";
    out.violated += describe(second, "|w + sqrt(w^2-4uv)| / (2|u|) < 1");
  }
  out.normalizable = out.violated.empty();
  return out;
}

bool normalizable(cplx u, cplx v, cplx w) { return check_normalizable(u, v, w).normalizable; }

bool normalizable_quantized(cplx u, cplx v, cplx w) {
  if (u == 0.0) return normalizable(u, v, w);
  const cplx root = principal_sqrt(w * w - 4.0 * u * v);
  return std::min(std::abs(w - root), std::abs(w + root)) < 2.0 * std::abs(u);
}

cplx quantized_z(int n, cplx u, cplx v, cplx w, double k) {
  return -(k + static_cast<double>(n)) * principal_sqrt(w * w - 4.0 * u * v);
}

std::optional<QuantumIndex> quantum_index(const AcsParams& p, double tol) {
  const double k = p.repr.k();
  if (p.u == 0.0) {
    if (p.w == 0.0) return std::nullopt;
    const cplx m0 = p.z / p.w - k;
    if (const auto n = nonpositive_integer(-m0, tol)) return QuantumIndex{*n, 0};
    return std::nullopt;
  }
  if (degenerate_l2(p.u, p.v, p.w)) return std::nullopt;
  const cplx root = principal_sqrt(p.l2());
  for (int branch : {+1, -1}) {
    const cplx a = k + p.z / (static_cast<double>(branch) * root);
    if (const auto n = nonpositive_integer(a, tol)) return QuantumIndex{*n, branch};
  }
  return std::nullopt;
}

StateVector solve_acs(const AcsParams& p, std::size_t n_max, double tol) {
  p.validate();
  if (n_max < 2) throw DomainError("solve_acs: N must be >= 2");
  const double k = p.repr.k();

  if (p.u == 0.0) {
    const auto chk = check_normalizable(p.u, p.v, p.w);
    if (!chk.normalizable)
      throw NormalizabilityError("solve_acs: no normalizable eigenstate, violated " + chk.violated,
                                 chk.violated);
    const auto qi = quantum_index(p);
    if (!qi) throw DomainError("solve_acs: u = 0 requires z = w (k + m0) for integer m0 >= 0");
    const auto m0 = static_cast<std::size_t>(qi->n);
    if (m0 > n_max) throw DomainError("solve_acs: lowest occupied level lies beyond the window");
    std::vector<cplx> c(n_max + 1, cplx{});
    c[m0] = 1.0;
    for (std::size_t m = m0; m < n_max; ++m)
      c[m + 1] = p.v * ladder_g(k, m) * c[m] / (p.z - p.w * (k + static_cast<double>(m + 1)));
    StateVector psi(p.repr, std::move(c));
    finish(psi, tol, "solve_acs");
    return psi;
  }

  const auto chk = check_normalizable(p.u, p.v, p.w);
  if (chk.normalizable) {
    StateVector psi(p.repr, forward_recurrence(p, n_max));
    finish(psi, tol, "solve_acs");
    return psi;
  }
  if (const auto qi = quantum_index(p)) {
    const cplx root = static_cast<double>(qi->branch) * principal_sqrt(p.l2());
    const cplx c = -(p.w + root) / (2.0 * p.u);
    if (std::abs(c) < 1.0) {
      StateVector psi(p.repr, terminating_closed_form(p, qi->n, root, n_max));
      finish(psi, tol, "solve_acs");
      return psi;
    }
  }
  throw NormalizabilityError("solve_acs: no normalizable eigenstate, violated " + chk.violated,
                             chk.violated);
}

StateVector solve_acs_certified(const AcsParams& p, std::size_t n_start, double tol,
                                std::size_t n_limit) {
  std::size_t n = std::max<std::size_t>(n_start, 2);
  for (;;) {
    try {
      return solve_acs(p, n, tol);
    } catch (const TruncationError&) {
      if (2 * n > n_limit) throw;
      n *= 2;
    }
  }
}

double eigen_residual(const AcsParams& p, const StateVector& psi) {
  const std::size_t n_max = psi.size() - 1;
  const Tridiagonal zmat = operator_matrix(p.u, p.v, p.w, p.repr, n_max);
  const auto y = zmat.apply(psi.amplitudes());
  double s = 0.0;
  for (std::size_t m = 0; m < n_max; ++m) s += std::norm(y[m] - p.z * psi[m]);
  return std::sqrt(s) / psi.norm();
}

// ---------------------------------------------------------------------------

ClosedFormParams closed_form_params(const AcsParams& p, Gauge gauge) {
  p.validate();
  const double k = p.repr.k();
  if (gauge == Gauge::cs_alpha && !p.repr.bosonic())
    throw DomainError("closed_form_params: the alpha gauge needs a bosonic representation");

  if (p.u == 0.0) {
    if (p.w == 0.0) throw DomainError("closed_form_params: u = w = 0");
    if (gauge == Gauge::cs_alpha) return UZeroForm{-p.v / (2.0 * p.w), -0.5 + 2.0 * p.z / p.w, gauge};
    return UZeroForm{-p.v / p.w, p.z / p.w - k, gauge};
  }

  const cplx l2 = p.l2();
  const cplx root = principal_sqrt(l2);
  const bool degenerate = std::abs(root / p.u) < kDegenerateC1 || degenerate_l2(p.u, p.v, p.w);
  const cplx lambda = p.z / p.u;
  const cplx a = degenerate ? cplx{} : k + p.z / root;

  if (gauge == Gauge::bg_eta) {
    const cplx c = degenerate ? -p.w / (2.0 * p.u) : -(p.w + root) / (2.0 * p.u);
    return BgSeriesForm{a, 2.0 * k, c, root / p.u, root, degenerate, lambda};
  }
  const cplx c_prime = degenerate ? -p.w / (4.0 * p.u) : -(p.w + root) / (4.0 * p.u);
  const cplx c2 = root / (2.0 * p.u);
  const cplx v_prime = -l2 / (4.0 * p.u);
  if (p.repr.flavor() == Flavor::bosonic_even)
    return BosonicEvenForm{a, c_prime, c2, v_prime, root, degenerate, lambda};
  return BosonicOddForm{a, c_prime, c2, v_prime, root, degenerate, lambda};
}

namespace {

void require_analytic_domain(const AcsParams& p) {
  if (p.u == 0.0) {
    if (!normalizable(p.u, p.v, p.w) || !quantum_index(p))
      throw DomainError("wavefunction: u = 0 needs |v/w| < 1 and z = w (k + m0)");
    return;
  }
  if (normalizable(p.u, p.v, p.w)) return;
  if (const auto qi = quantum_index(p)) {
    const cplx root = static_cast<double>(qi->branch) * principal_sqrt(p.l2());
    if (std::abs((p.w + root) / (2.0 * p.u)) < 1.0) return;
  }
  throw DomainError("wavefunction: parameters outside the normalizable domain");
}

cplx int_power(cplx x, cplx b, const char* who) {
  const auto n = nonpositive_integer(-b, 1e-9);
  if (!n) throw DomainError(std::string(who) + ": exponent is not a non-negative integer");
  return std::pow(x, *n);
}

}  // namespace

cplx wavefunction(const AcsParams& p, cplx point, Gauge gauge) {
  require_analytic_domain(p);
  const auto form = closed_form_params(p, gauge);
  return std::visit(
      [&](const auto& f) -> cplx {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, BgSeriesForm>) {
          const cplx e = std::exp(f.c * point);
          if (f.degenerate) return e * hyp0f1(f.b, f.lambda * point);
          return e * kummer_m(f.a, f.b, f.c1 * point);
        } else if constexpr (std::is_same_v<F, BosonicEvenForm>) {
          const cplx x2 = point * point;
          const cplx e = std::exp(f.c_prime * x2);
          if (f.degenerate) return e * hyp0f1(0.5, 0.5 * f.lambda * x2);
          return e * kummer_m(f.a_plus, 0.5, f.c2 * x2);
        } else if constexpr (std::is_same_v<F, BosonicOddForm>) {
          const cplx x2 = point * point;
          const cplx e = point * std::exp(f.c_prime * x2);
          if (f.degenerate) return e * hyp0f1(1.5, 0.5 * f.lambda * x2);
          return e * kummer_m(f.a_minus, 1.5, f.c2 * x2);
        } else {
          if (f.gauge == Gauge::cs_alpha)
            return std::exp(f.c_tilde * point * point) * int_power(point, f.b, "wavefunction");
          return std::exp(f.c_tilde * point) * int_power(point, f.b, "wavefunction");
        }
      },
      form);
}

cplx overlap_series(const StateVector& psi, cplx point, Gauge gauge) {
  const ReprIndex& repr = psi.repr();
  const double k = repr.k();
  cplx sum = 0.0;
  if (gauge == Gauge::bg_eta) {
    cplx basis = 1.0;  // eta^m / sqrt(m! (2k)_m)
    for (std::size_t m = 0; m < psi.size(); ++m) {
      sum += psi[m] * basis;
      basis *= point / ladder_g(k, m);
    }
    return sum;
  }
  if (!repr.bosonic()) throw DomainError("overlap_series: the alpha gauge needs a bosonic flavor");
  std::size_t n = repr.photon_number(0);
  cplx basis = n == 0 ? cplx(1.0) : point;  // alpha^n / sqrt(n!)
  for (std::size_t m = 0; m < psi.size(); ++m, n += 2) {
    sum += psi[m] * basis;
    const double nd = static_cast<double>(n);
    basis *= point * point / std::sqrt((nd + 1.0) * (nd + 2.0));
  }
  return sum;
}

// ---------------------------------------------------------------------------

namespace {

StateVector make_bg(const BgSpec& s, std::size_t n_max) {
  const double k = s.repr.k();
  std::vector<cplx> amps(n_max + 1);
  for (std::size_t m = 0; m <= n_max; ++m) amps[m] = scaled_power(s.z, m, -log_bg_weight(k, m));
  StateVector psi(s.repr, std::move(amps));
  finish(psi, kTailThreshold, "subfamily(bg)");
  return psi;
}

StateVector make_perelomov(const PerelomovSpec& s, std::size_t n_max) {
  if (!(std::abs(s.tau) < 1.0)) throw DomainError("subfamily(perelomov): |tau| must be < 1");
  const double k = s.repr.k();
  std::vector<cplx> amps(n_max + 1);
  for (std::size_t m = 0; m <= n_max; ++m) {
    const double md = static_cast<double>(m);
    const double lw =
        0.5 * (log_gamma_pos(md + 2.0 * k) - log_gamma_pos(md + 1.0) - log_gamma_pos(2.0 * k));
    amps[m] = scaled_power(s.tau, m, lw);
  }
  StateVector psi(s.repr, std::move(amps));
  finish(psi, kTailThreshold, "subfamily(perelomov)");
  return psi;
}

StateVector make_cat(const CatSpec& s, std::size_t n_max) {
  const ReprIndex repr = s.even ? ReprIndex::bosonic_even() : ReprIndex::bosonic_odd();
  if (!s.even && s.alpha == 0.0) throw DomainError("subfamily(cat): odd cat of zero amplitude");
  std::vector<cplx> amps(n_max + 1);
  for (std::size_t m = 0; m <= n_max; ++m) {
    const std::size_t n = repr.photon_number(m);
    amps[m] = scaled_power(s.alpha, n, -0.5 * log_gamma_pos(static_cast<double>(n) + 1.0));
  }
  StateVector psi(repr, std::move(amps));
  finish(psi, kTailThreshold, "subfamily(cat)");
  return psi;
}

StateVector make_squeezed_binomial(const SqueezedBinomialSpec& s, std::size_t n_max) {
  if (s.n < 0) throw DomainError("subfamily(squeezed_binomial): n must be >= 0");
  if (s.w == 0.0) throw DomainError("subfamily(squeezed_binomial): w must be nonzero");
  const double ratio = std::abs(s.v / s.w);
  if (!(ratio < 1.0))
    throw NormalizabilityError("subfamily(squeezed_binomial): |v/w| must be < 1",
                               describe(ratio, "|v/w| < 1"));
  const auto n = static_cast<std::size_t>(s.n);
  if (n / 2 > n_max) throw DomainError("subfamily(squeezed_binomial): n beyond the window");

  // (a+ - beta a)^n |0> in the Fock basis.
  const cplx beta = std::conj(s.v) / std::conj(s.w);
  std::vector<cplx> fock(n + 1, cplx{});
  fock[0] = 1.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<cplx> next(n + 1, cplx{});
    for (std::size_t j = 0; j <= step; ++j) {
      if (fock[j] == 0.0) continue;
      next[j + 1] += std::sqrt(static_cast<double>(j + 1)) * fock[j];
      if (j > 0) next[j - 1] -= beta * std::sqrt(static_cast<double>(j)) * fock[j];
    }
    fock = std::move(next);
  }
  const ReprIndex repr = n % 2 == 0 ? ReprIndex::bosonic_even() : ReprIndex::bosonic_odd();
  std::vector<cplx> amps(n_max + 1, cplx{});
  for (std::size_t j = n % 2; j <= n; j += 2) amps[j / 2] = fock[j];
  StateVector ref(repr, std::move(amps));
  ref.normalize();

  const double r = std::atanh(ratio);
  const SqueezeParam xi = SqueezeParam::from_polar(r, std::arg(-s.v / s.w));
  return squeeze_apply(xi, ref, n_max);
}

}  // namespace

StateVector subfamily(const SubfamilySpec& spec, std::size_t n_max) {
  if (n_max < 2) throw DomainError("subfamily: N must be >= 2");
  return std::visit(
      [&](const auto& s) -> StateVector {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, BgSpec>) {
          return make_bg(s, n_max);
        } else if constexpr (std::is_same_v<S, PerelomovSpec>) {
          return make_perelomov(s, n_max);
        } else if constexpr (std::is_same_v<S, CatSpec>) {
          return make_cat(s, n_max);
        } else if constexpr (std::is_same_v<S, SqueezedCatSpec>) {
          const StateVector cat = make_cat(CatSpec{principal_sqrt(2.0 * s.z), s.even}, n_max);
          return squeeze_apply(s.xi, cat, n_max);
        } else {
          return make_squeezed_binomial(s, n_max);
        }
      },
      spec);
}

AcsParams squeezed_cat_params(cplx z, const SqueezeParam& xi, bool even) {
  const double r = xi.r();
  const double th = xi.theta();
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  return AcsParams{z, ch * ch, sh * sh * std::polar(1.0, 2.0 * th),
                   -std::sinh(2.0 * r) * std::polar(1.0, th),
                   even ? ReprIndex::bosonic_even() : ReprIndex::bosonic_odd()};
}

cplx perelomov_tau(const AcsParams& p) {
  if (p.w != 0.0 || p.u == 0.0) throw DomainError("perelomov_tau: needs w = 0 and u != 0");
  return p.z / (2.0 * p.repr.k() * p.u);
}

// ---------------------------------------------------------------------------

FiniteStructure finite_structure(const AcsParams& p, std::size_t n_max) {
  if (p.u == 0.0) throw DomainError("finite_structure: needs u != 0");
  const double k = p.repr.k();
  const cplx root = principal_sqrt(p.l2());
  int n = 0;
  int branch = 1;
  if (const auto qi = quantum_index(p)) {
    n = qi->n;
    branch = qi->branch;
  } else if (std::abs(root) > 0.0) {
    const cplx a = k + p.z / root;
    n = std::max(0, static_cast<int>(std::lround(-a.real())));
  }
  const cplx c = -(p.w + static_cast<double>(branch) * root) / (2.0 * p.u);
  if (!(std::abs(c) < 1.0))
    throw DomainError("finite_structure: |c| >= 1, the reference squeeze does not exist");

  FiniteStructure out;
  out.n = n;
  out.xi = SqueezeParam::from_polar(std::atanh(std::abs(c)), std::arg(c));
  const StateVector psi = solve_acs(p, n_max);
  const SqueezeParam inverse = SqueezeParam::from_complex(-out.xi.xi());
  const StateVector ref = squeeze_apply(inverse, psi, n_max);
  double beyond = 0.0;
  for (std::size_t m = static_cast<std::size_t>(n) + 1; m < ref.size(); ++m)
    beyond += std::norm(ref[m]);
  out.beyond_norm = beyond;
  out.finite = beyond <= 1e-6;
  return out;
}

bool finite_structure_check(const AcsParams& p, std::size_t n_max) {
  return finite_structure(p, n_max).finite;
}

}  // namespace acs

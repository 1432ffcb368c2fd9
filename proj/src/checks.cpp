#include "acs/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "acs/errors.hpp"
#include "acs/families.hpp"
#include "acs/moments.hpp"
#include "acs/scan.hpp"
#include "acs/states.hpp"

namespace acs {
namespace {

using Clock = std::chrono::steady_clock;

std::string g3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string f3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : g_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g_); }
  cplx disc(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(0.0, 2.0 * std::numbers::pi));
  }
  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(g_)];
  }

  // u != 0 with both growth ratios at most 1 - margin.
  void normalizable_uvw(double margin, cplx& u, cplx& v, cplx& w) {
    for (;;) {
      u = disc(1.5);
      v = disc(1.0);
      w = disc(1.0);
      if (std::abs(u) < 0.3) continue;
      const cplx root = principal_sqrt(w * w - 4.0 * u * v);
      const double worst = std::max(std::abs(w - root), std::abs(w + root)) / (2.0 * std::abs(u));
      if (worst <= 1.0 - margin) return;
    }
  }

 private:
  std::mt19937_64 g_;
};

const std::vector<ReprIndex>& sample_reprs() {
  static const std::vector<ReprIndex> reprs = {
      ReprIndex::bosonic_even(), ReprIndex::abstract(0.5), ReprIndex::bosonic_odd(),
      ReprIndex::abstract(1.0),  ReprIndex::abstract(1.5), ReprIndex::abstract(2.0)};
  return reprs;
}

// Runs make(n) from n_start, doubling the window on truncation failures up
// to n_limit. A fixed override disables the growth so that under-truncation
// surfaces as an error.
template <typename F>
auto grow_window(std::size_t n_start, const CheckOptions& opts, F make) {
  if (opts.trunc) return make(*opts.trunc);
  std::size_t n = n_start;
  for (;;) {
    try {
      return make(n);
    } catch (const TruncationError&) {
      if (2 * n > 1600) throw;
      n *= 2;
    }
  }
}

CheckResult result(int id, bool pass, std::string detail) {
  return {id, check_name(id), pass, std::move(detail)};
}

// 1 -----------------------------------------------------------------------
CheckResult eigen_residual_suite(const CheckOptions& opts) {
  const auto t0 = Clock::now();
  const std::size_t n = opts.trunc.value_or(400);
  Sampler s(1);
  double worst = 0.0;
  int uncertified = 0;
  for (int i = 0; i < 200; ++i) {
    cplx u, v, w;
    s.normalizable_uvw(0.05, u, v, w);
    const AcsParams p{s.disc(2.0), u, v, w, s.pick(sample_reprs())};
    const auto psi = solve_acs(p, n, std::numeric_limits<double>::infinity());
    if (psi.tail_norm() > kTailThreshold) ++uncertified;
    worst = std::max(worst, eigen_residual(p, psi));
  }
  const bool fast = seconds_since(t0) <= 60.0;
  const bool pass = worst <= 1e-9 && fast;
  std::string d = "max residual " + g3(worst) + " over 200 samples at N = " + std::to_string(n);
  if (uncertified) d += ", " + std::to_string(uncertified) + " with tail above 1e-8";
  if (!fast) d += ", exceeded 60 s";
  return result(1, pass, d);
}

// 2 -----------------------------------------------------------------------
CheckResult figure1(const CheckOptions&) {
  const W0Family fam;
  const auto var = [&](double x) { return *k_moments(fam.state(x)).bosonic; };
  const auto y = squeezing_interval([&](double x) { return var(x).var_Y; }, 0.0, 5.0, 1.0);
  const auto p = squeezing_interval([&](double x) { return var(x).var_p; }, 0.0, 5.0, 0.5);
  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 250; ++i) {
    const double v = var(5.0 * i / 250.0).var_Y;
    monotone = monotone && v < prev;
    prev = v;
  }
  const bool y_ok = y.size() == 1 && std::abs(y[0].lo - 1.8) <= 0.15 && y[0].hi == 5.0;
  const bool p_ok = p.size() == 1 && p[0].lo == 0.0 && std::abs(p[0].hi - 3.8) <= 0.15;
  std::string d = "var_Y < 1 from x = " + (y.empty() ? "none" : f3(y[0].lo)) +
                  ", var_p < 1/2 up to x = " + (p.empty() ? "none" : f3(p[0].hi)) +
                  (monotone ? ", var_Y strictly decreasing" : ", var_Y NOT monotone");
  return result(2, y_ok && p_ok && monotone, d);
}

// 3 -----------------------------------------------------------------------
CheckResult figure2(const CheckOptions&) {
  const SqueezedCatFamily fam(-1.0, SqueezeParam::from_polar(0.31, 0.0), 200);
  const auto var = [&](double d) { return *k_moments(fam.state(d)).bosonic; };
  const auto x = squeezing_interval([&](double d) { return var(d).var_X; }, 0.0, 0.6, 1.0);
  const auto q = squeezing_interval([&](double d) { return var(d).var_q; }, 0.0, 0.6, 0.5);
  if (x.size() != 1 || q.size() != 1)
    return result(3, false, "expected one interval each, got " + std::to_string(x.size()) +
                                " (X) and " + std::to_string(q.size()) + " (q)");
  const double jlo = std::max(x[0].lo, q[0].lo), jhi = std::min(x[0].hi, q[0].hi);
  const auto near = [](double a, double b) { return std::abs(a - b) <= 0.02; };
  const bool pass = near(x[0].lo, 0.10) && near(x[0].hi, 0.31) && near(q[0].lo, 0.17) &&
                    near(q[0].hi, 0.51) && near(jlo, 0.17) && near(jhi, 0.31);
  return result(3, pass,
                "X on (" + f3(x[0].lo) + ", " + f3(x[0].hi) + "), q on (" + f3(q[0].lo) + ", " +
                    f3(q[0].hi) + "), joint (" + f3(jlo) + ", " + f3(jhi) + ")");
}

// 4 -----------------------------------------------------------------------
CheckResult schrodinger_equality(const CheckOptions& opts) {
  const std::size_t n = opts.trunc.value_or(400);
  Sampler s(4);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = s.uniform(0.0, std::atanh(0.9));
    const cplx u = std::polar(std::cosh(t), s.uniform(0.0, 2.0 * std::numbers::pi));
    const cplx v = std::polar(std::sinh(t), s.uniform(0.0, 2.0 * std::numbers::pi));
    const AcsParams p{s.disc(2.0), u, v, 0.0, s.pick(sample_reprs())};
    const auto r = k_moments(solve_acs(p, n));
    const double k3 = r.mean_K[2];
    worst = std::max(worst, std::abs(r.schrodinger_lhs - k3 * k3 / 4.0) / (k3 * k3));
  }
  return result(4, worst <= 1e-8,
                "max |lhs - <K3>^2/4| / <K3>^2 = " + g3(worst) + " over 100 samples");
}

// 5 -----------------------------------------------------------------------
CheckResult subfamily_fidelity(const CheckOptions& opts) {
  const std::size_t nb = opts.trunc.value_or(400);
  const std::size_t na = opts.trunc.value_or(200);
  double worst = std::numeric_limits<double>::infinity();
  std::string worst_name;
  const auto track = [&](const std::string& name, double f) {
    if (f < worst) {
      worst = f;
      worst_name = name;
    }
  };
  Sampler s(5);
  for (int i = 0; i < 4; ++i) {
    const auto repr = ReprIndex::abstract(0.5 * (i + 1));
    const cplx z = s.disc(3.0);
    track("bg", solve_acs({z, 1.0, 0.0, 0.0, repr}, na).fidelity(subfamily(BgSpec{z, repr}, na)));

    const cplx u = s.disc(1.0) + 1.5;
    const cplx v = -u * s.disc(0.8) * s.disc(1.0);
    const AcsParams pp{-2.0 * repr.k() * principal_sqrt(-u * v), u, v, 0.0, repr};
    track("perelomov", solve_acs(pp, na).fidelity(subfamily(PerelomovSpec{perelomov_tau(pp), repr}, na)));
  }
  for (int i = 0; i < 4; ++i) {
    const cplx alpha = s.disc(2.5);
    for (bool even : {true, false}) {
      const auto repr = even ? ReprIndex::bosonic_even() : ReprIndex::bosonic_odd();
      track(even ? "even cat" : "odd cat",
            solve_acs({alpha * alpha / 2.0, 1.0, 0.0, 0.0, repr}, nb)
                .fidelity(subfamily(CatSpec{alpha, even}, nb)));
    }
  }
  for (double r : {0.5, 1.0, 2.0}) {
    const cplx z = s.disc(1.5);
    const auto xi = SqueezeParam::from_polar(r, s.uniform(0.0, 2.0 * std::numbers::pi));
    for (bool even : {true, false}) {
      track("squeezed cat", grow_window(400, opts, [&](std::size_t n) {
              return solve_acs(squeezed_cat_params(z, xi, even), n)
                  .fidelity(subfamily(SqueezedCatSpec{z, xi, even}, n));
            }));
    }
  }
  for (int n = 0; n < 6; ++n) {
    const auto repr = n % 2 == 0 ? ReprIndex::bosonic_even() : ReprIndex::bosonic_odd();
    std::vector<cplx> fock(nb + 1, 0.0);
    fock[static_cast<std::size_t>(n / 2)] = 1.0;
    track("squeezed binomial", subfamily(SqueezedBinomialSpec{n, 0.0, s.disc(1.0) + 1.5}, nb)
                                   .fidelity(StateVector(repr, fock)));
  }
  return result(5, worst >= 1.0 - 1e-10,
                "min fidelity 1 - " + g3(std::max(0.0, 1.0 - worst)) + " (" + worst_name + ")");
}

// 6 -----------------------------------------------------------------------
CheckResult squeezed_cat_closed_form(const CheckOptions& opts) {
  Sampler s(6);
  double e_n = 0, e_a2 = 0, e_a4 = 0, e_n2 = 0;
  const auto rel = [](cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
  for (int i = 0; i < 50; ++i) {
    const cplx z = s.disc(1.5);
    const auto xi = SqueezeParam::from_polar(s.uniform(0.0, 1.5), s.uniform(0.0, 2.0 * std::numbers::pi));
    const auto cat = subfamily(CatSpec{principal_sqrt(2.0 * z), true}, 200);
    const double n_bar = k_moments(cat).bosonic->mean_n;
    const auto direct = *grow_window(200, opts, [&](std::size_t n) {
      return k_moments(Squeezer(xi, cat.repr(), n).apply(cat)).bosonic;
    });
    const auto cf = closed_form_squeezed_cat(z, xi, n_bar);
    e_n = std::max(e_n, rel(cf.mean_n, direct.mean_n));
    e_a2 = std::max(e_a2, rel(cf.mean_a2, direct.mean_a2));
    e_a4 = std::max(e_a4, rel(cf.mean_a4, direct.mean_a4));
    e_n2 = std::max(e_n2, rel(cf.mean_n2kind, direct.mean_n2kind));
  }
  const double worst = std::max({e_n, e_a2, e_a4, e_n2});
  return result(6, worst <= 1e-8,
                "max relative error <a+a> " + g3(e_n) + ", <a^2> " + g3(e_a2) + ", <a+^2 a^2> " +
                    g3(e_n2) + ", <a^4> " + g3(e_a4) + " over 50 samples");
}

// 7 -----------------------------------------------------------------------
CheckResult quantized_finite_structure(const CheckOptions& opts) {
  const std::size_t n_max = opts.trunc.value_or(200);
  Sampler s(7);
  const ReprIndex reprs[] = {ReprIndex::bosonic_even(), ReprIndex::abstract(0.5),
                             ReprIndex::bosonic_odd(), ReprIndex::abstract(1.0)};
  double worst = 0.0;
  int failed = 0, total = 0;
  for (int n = 0; n <= 3; ++n) {
    for (const auto& repr : reprs) {
      for (int rep = 0; rep < 2; ++rep) {
        cplx u, v, w;
        s.normalizable_uvw(0.3, u, v, w);
        const AcsParams p{quantized_z(n, u, v, w, repr.k()), u, v, w, repr};
        const auto fs = finite_structure(p, n_max);
        worst = std::max(worst, fs.beyond_norm);
        ++total;
        if (!fs.finite || fs.n != n) ++failed;
      }
    }
  }
  return result(7, failed == 0,
                std::to_string(total - failed) + "/" + std::to_string(total) +
                    " finite, max weight beyond level n " + g3(worst));
}

// 8 -----------------------------------------------------------------------
CheckResult hermitean_spectrum_check(const CheckOptions&) {
  Sampler s(8);
  double spacing_err = 0.0, overlap = 0.0;
  bool flags = true;
  std::size_t fewest = std::numeric_limits<std::size_t>::max();
  for (int i = 0; i < 10; ++i) {
    const cplx u = s.disc(1.0) + 0.2;
    const double w = (i % 2 ? -1.0 : 1.0) * 2.0 * std::abs(u) * s.uniform(1.1, 3.0);
    const auto& repr = s.pick(sample_reprs());
    const std::size_t n = 200;
    const auto spec = hermitian_spectrum(u, w, repr, n);
    flags = flags && spec.normalizable;
    const double gap = std::sqrt(w * w - 4.0 * std::norm(u));
    const auto levels = stable_levels(u, w, repr, n);
    fewest = std::min(fewest, levels.size());
    for (std::size_t j = 0; j + 1 < std::min<std::size_t>(levels.size(), 40); ++j)
      spacing_err = std::max(spacing_err, std::abs(std::abs(levels[j + 1] - levels[j]) - gap));
    for (std::size_t a = 0; a < spec.eigenvectors.size(); ++a)
      for (std::size_t b = a + 1; b < spec.eigenvectors.size(); ++b)
        overlap = std::max(overlap, std::abs(spec.eigenvectors[a].inner(spec.eigenvectors[b])));
  }
  const bool pass = flags && fewest >= 10 && spacing_err <= 1e-6 && overlap <= 1e-10;
  return result(8, pass,
                "spacing error " + g3(spacing_err) + " over >= " + std::to_string(fewest) +
                    " stable levels, max overlap " + g3(overlap) +
                    (flags ? "" : ", normalizable flag false"));
}

// 9 -----------------------------------------------------------------------
CheckResult subpoissonian(const CheckOptions&) {
  const auto even = ReprIndex::bosonic_even();
  const auto first = k_moments(solve_acs({cplx(-0.5, -5.0), std::sqrt(1.25), -0.5, 0.0, even}, 400));
  bool pass = first.mandel_q && *first.mandel_q < 0.0;
  std::string d = "Q = " + g3(first.mandel_q.value_or(NAN)) + " at z = -0.5-5i";
  double worst_q = -1e300;
  bool squeezed = false;
  for (double z : {2.5, -2.5}) {
    for (double x : {0.1, 0.3, 0.45}) {
      const auto r = k_moments(solve_acs({z, std::sqrt(1.0 + x * x), x, 0.0, even}, 400));
      worst_q = std::max(worst_q, r.mandel_q.value_or(NAN));
      const auto f = squeeze_flags(*r.bosonic);
      squeezed = squeezed || f.q_sq || f.p_sq || f.x_sq || f.y_sq;
    }
  }
  pass = pass && worst_q < 0.0 && !squeezed;
  d += "; z = +-2.5 family max Q = " + g3(worst_q) +
       (squeezed ? ", some quadrature squeezed" : ", no quadrature squeezed");
  return result(9, pass, d);
}

// 10 ----------------------------------------------------------------------
CheckResult wavefunction_equivalence(const CheckOptions&) {
  Sampler s(10);
  double worst = 0.0;
  const auto spread = [&](const AcsParams& p, std::size_t n, Gauge gauge) {
    const auto psi = solve_acs(p, n);
    std::vector<cplx> ratios;
    for (int i = 0; i < 10; ++i) {
      const cplx x = s.disc(1.0);
      ratios.push_back(wavefunction(p, x, gauge) / overlap_series(psi, x, gauge));
    }
    for (const auto& r : ratios) worst = std::max(worst, std::abs(r / ratios[0] - 1.0));
  };
  for (int i = 0; i < 5; ++i) {
    cplx u, v, w;
    s.normalizable_uvw(0.2, u, v, w);
    if (i == 4) v = w * w / (4.0 * u);  // l^2 = 0
    spread({s.disc(1.5), u, v, w, ReprIndex::abstract(0.5 * (1 + i % 3))}, 200, Gauge::bg_eta);
  }
  for (bool even : {true, false}) {
    for (int i = 0; i < 5; ++i) {
      cplx u, v, w;
      s.normalizable_uvw(0.2, u, v, w);
      spread({s.disc(1.5), u, v, w, even ? ReprIndex::bosonic_even() : ReprIndex::bosonic_odd()},
             400, Gauge::cs_alpha);
    }
  }
  for (int i = 0; i < 5; ++i) {
    const cplx w = s.disc(1.0) + 1.2;
    const cplx v = w * s.disc(0.8);
    const auto repr = i % 2 ? ReprIndex::bosonic_odd() : ReprIndex::bosonic_even();
    spread({w * (repr.k() + i), 0.0, v, w, repr}, 400, i < 3 ? Gauge::cs_alpha : Gauge::bg_eta);
  }
  return result(10, worst <= 1e-6, "max ratio spread " + g3(worst) + " over 20 parameter sets");
}

// 11 ----------------------------------------------------------------------
CheckResult p_collapse(const CheckOptions& opts) {
  std::vector<double> vp;
  for (double r : {0.5, 1.0, 1.5, 2.0}) {
    const auto xi = SqueezeParam::from_polar(r, std::numbers::pi / 2);
    vp.push_back(grow_window(400, opts, [&](std::size_t n) {
      return k_moments(subfamily(SqueezedCatSpec{cplx(0.0, 1.0), xi, true}, n)).bosonic->var_p;
    }));
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < vp.size(); ++i) decreasing = decreasing && vp[i] < vp[i - 1];
  std::string d = "var_p at r = 0.5, 1, 1.5, 2:";
  for (double v : vp) d += " " + g3(v);
  d += decreasing ? " (decreasing)" : " (not decreasing)";
  return result(11, decreasing, d);
}

// 12 ----------------------------------------------------------------------
CheckResult runtime_and_determinism(const CheckOptions& opts, std::optional<double> suite_seconds) {
  const auto t0 = Clock::now();
  if (!suite_seconds) {
    for (int id = 1; id < 12; ++id) run_check(id, opts);
  }
  bool identical = true;
  for (const char* fig : {"fig1", "fig2"}) {
    std::ostringstream a, b;
    write_csv(figure_table(fig), a);
    write_csv(figure_table(fig), b);
    identical = identical && a.str() == b.str() && !a.str().empty();
  }
  const double total = suite_seconds.value_or(0.0) + seconds_since(t0);
  const bool fast = total <= 300.0;
  return result(12, fast && identical,
                std::string(fast ? "suite within 300 s" : "suite exceeded 300 s") +
                    (identical ? ", figure CSV byte-identical across runs"
                               : ", figure CSV differs between runs"));
}

CheckResult dispatch(int id, const CheckOptions& opts, std::optional<double> suite_seconds) {
  try {
    switch (id) {
      case 1: return eigen_residual_suite(opts);
      case 2: return figure1(opts);
      case 3: return figure2(opts);
      case 4: return schrodinger_equality(opts);
      case 5: return subfamily_fidelity(opts);
      case 6: return squeezed_cat_closed_form(opts);
      case 7: return quantized_finite_structure(opts);
      case 8: return hermitean_spectrum_check(opts);
      case 9: return subpoissonian(opts);
      case 10: return wavefunction_equivalence(opts);
      case 11: return p_collapse(opts);
      case 12: return runtime_and_determinism(opts, suite_seconds);
      default: break;
    }
  } catch (const std::exception& e) {
    return result(id, false, std::string("error: ") + e.what());
  }
  throw DomainError("no acceptance criterion " + std::to_string(id));
}

}  // namespace

std::string check_name(int id) {
  static const char* names[] = {"eigen-residual",          "figure-1 intervals",
                                "figure-2 intervals",      "Schrodinger equality",
                                "subfamily fidelity",      "squeezed-cat closed forms",
                                "quantized finite support", "hermitean spectrum",
                                "subpoissonian examples",  "wavefunction equivalence",
                                "monotone p-collapse",     "runtime and determinism"};
  if (id < 1 || id > kCheckCount) throw DomainError("no acceptance criterion " + std::to_string(id));
  return names[id - 1];
}

CheckResult run_check(int id, const CheckOptions& opts) { return dispatch(id, opts, std::nullopt); }

std::vector<CheckResult> run_all_checks(const CheckOptions& opts) {
  const auto t0 = Clock::now();
  std::vector<CheckResult> out;
  for (int id = 1; id < kCheckCount; ++id) out.push_back(dispatch(id, opts, std::nullopt));
  out.push_back(dispatch(kCheckCount, opts, seconds_since(t0)));
  return out;
}

std::string format_check(const CheckResult& r) {
  char head[16];
  std::snprintf(head, sizeof head, "%s %2d ", r.pass ? "PASS" : "FAIL", r.id);
  return head + r.name + ": " + r.detail;
}

}  // namespace acs

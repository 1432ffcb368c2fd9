#include "acs/repr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "acs/errors.hpp"
#include "acs/expm.hpp"
#include "acs/states.hpp"

namespace acs {

std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::abstract: return "abstract";
    case Flavor::bosonic_even: return "bosonic_even";
    case Flavor::bosonic_odd: return "bosonic_odd";
  }
  return "?";
}

Flavor parse_flavor(std::string_view s) {
  if (s == "abstract") return Flavor::abstract;
  if (s == "even" || s == "bosonic_even") return Flavor::bosonic_even;
  if (s == "odd" || s == "bosonic_odd") return Flavor::bosonic_odd;
  throw DomainError("unknown flavor '" + std::string(s) + "'");
}

ReprIndex ReprIndex::abstract(double k) {
  const double twice = 2.0 * k;
  if (!(k > 0.0) || std::abs(twice - std::round(twice)) > 1e-12) {
    std::ostringstream msg;
    msg << "abstract representation needs k in {1/2, 1, 3/2, ...}, got " << k;
    throw DomainError(msg.str());
  }
  return ReprIndex(std::round(twice) / 2.0, Flavor::abstract);
}

ReprIndex ReprIndex::bosonic_even() { return ReprIndex(0.25, Flavor::bosonic_even); }
ReprIndex ReprIndex::bosonic_odd() { return ReprIndex(0.75, Flavor::bosonic_odd); }

ReprIndex ReprIndex::make(Flavor flavor, double k) {
  switch (flavor) {
    case Flavor::bosonic_even: return bosonic_even();
    case Flavor::bosonic_odd: return bosonic_odd();
    case Flavor::abstract: break;
  }
  return abstract(k);
}

std::size_t ReprIndex::photon_number(std::size_t m) const {
  switch (flavor_) {
    case Flavor::bosonic_even: return 2 * m;
    case Flavor::bosonic_odd: return 2 * m + 1;
    case Flavor::abstract: break;
  }
  throw DomainError("photon_number: abstract representation has no Fock realization");
}

double ladder_g(double k, std::size_t m) {
  const double md = static_cast<double>(m);
  return std::sqrt((md + 1.0) * (md + 2.0 * k));
}

LadderAction ladder_action(const ReprIndex& repr, std::size_t m) {
  const double k = repr.k();
  const double md = static_cast<double>(m);
  return {ladder_g(k, m), m == 0 ? 0.0 : ladder_g(k, m - 1), k + md};
}

// ---------------------------------------------------------------------------

StateVector::StateVector(ReprIndex repr, std::vector<cplx> amplitudes)
    : repr_(repr), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw DomainError("StateVector: empty amplitude list");
  update_tail();
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& c : amplitudes_) s += std::norm(c);
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double nrm = norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    throw DomainError("StateVector::normalize: zero or non-finite norm");
  // Phase reference: first amplitude that is not negligible against the norm.
  cplx phase = 1.0;
  for (const auto& c : amplitudes_) {
    if (std::abs(c) > 1e-12 * nrm) {
      phase = std::conj(c) / std::abs(c);
      break;
    }
  }
  const cplx scale = phase / nrm;
  for (auto& c : amplitudes_) c *= scale;
  update_tail();
}

StateVector StateVector::resized(std::size_t n) const {
  if (n == 0) throw DomainError("StateVector::resized: empty window");
  std::vector<cplx> out(n, cplx{});
  std::copy_n(amplitudes_.begin(), std::min(n, amplitudes_.size()), out.begin());
  return StateVector(repr_, std::move(out));
}

cplx StateVector::inner(const StateVector& other) const {
  const std::size_t n = std::min(size(), other.size());
  cplx s = 0.0;
  for (std::size_t m = 0; m < n; ++m) s += std::conj(amplitudes_[m]) * other.amplitudes_[m];
  return s;
}

double StateVector::fidelity(const StateVector& other) const {
  if (!(repr_ == other.repr_)) return 0.0;
  const double a = norm();
  const double b = other.norm();
  return std::norm(inner(other)) / (a * a * b * b);
}

cplx StateVector::fock_amplitude(std::size_t n) const {
  if (!repr_.bosonic()) throw DomainError("fock_amplitude: abstract representation");
  const std::size_t parity = repr_.flavor() == Flavor::bosonic_odd ? 1 : 0;
  if (n % 2 != parity) return 0.0;
  const std::size_t m = n / 2;
  return m < amplitudes_.size() ? amplitudes_[m] : cplx{};
}

std::size_t StateVector::fock_extent() const {
  return repr_.photon_number(amplitudes_.size() - 1) + 1;
}

void StateVector::update_tail() {
  const std::size_t n = amplitudes_.size();
  const std::size_t width = std::max<std::size_t>(1, n / 10);
  double s = 0.0;
  for (std::size_t m = n - width; m < n; ++m) s += std::norm(amplitudes_[m]);
  const double total = norm();
  tail_norm_ = total > 0.0 ? s / (total * total) : 0.0;
}

// ---------------------------------------------------------------------------

SqueezeParam SqueezeParam::from_complex(cplx xi) {
  return from_polar(std::abs(xi), std::arg(xi));
}

SqueezeParam SqueezeParam::from_polar(double r, double theta) {
  if (!(r >= 0.0)) throw DomainError("SqueezeParam: r must be non-negative");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t = 0.0;
  SqueezeParam p;
  p.r_ = r;
  p.theta_ = t;
  return p;
}

// ---------------------------------------------------------------------------

Eigen::MatrixXcd Tridiagonal::dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag[i];
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = upper[i];
    m(i + 1, i) = lower[i];
  }
  return m;
}

std::vector<cplx> Tridiagonal::apply(std::span<const cplx> x) const {
  const std::size_t n = size();
  if (x.size() != n) throw DomainError("Tridiagonal::apply: dimension mismatch");
  std::vector<cplx> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = diag[i] * x[i];
    if (i + 1 < n) s += upper[i] * x[i + 1];
    if (i > 0) s += lower[i - 1] * x[i - 1];
    y[i] = s;
  }
  return y;
}

Tridiagonal operator_matrix(cplx u, cplx v, cplx w, const ReprIndex& repr, std::size_t n_max) {
  if (n_max < 2) throw DomainError("operator_matrix: N must be >= 2");
  const double k = repr.k();
  Tridiagonal t;
  t.diag.resize(n_max + 1);
  t.upper.resize(n_max);
  t.lower.resize(n_max);
  for (std::size_t m = 0; m <= n_max; ++m) t.diag[m] = w * (k + static_cast<double>(m));
  for (std::size_t m = 0; m < n_max; ++m) {
    const double g = ladder_g(k, m);
    t.upper[m] = u * g;
    t.lower[m] = v * g;
  }
  return t;
}

std::size_t default_truncation(const ReprIndex& repr) { return repr.bosonic() ? 400 : 200; }

// ---------------------------------------------------------------------------

Squeezer::Squeezer(SqueezeParam xi, ReprIndex repr, std::size_t n_max)
    : xi_(xi), repr_(repr), n_max_(n_max) {
  if (n_max < 2) throw DomainError("Squeezer: N must be >= 2");
  const cplx x = xi.xi();
  // xi K+ - xi* K-: v = xi on the sub-diagonal, u = -xi* on the super-diagonal.
  const Tridiagonal gen = operator_matrix(-std::conj(x), x, 0.0, repr, n_max);
  unitary_ = expm(gen.dense());
}

std::vector<cplx> Squeezer::apply_raw(const StateVector& psi) const {
  if (!(psi.repr() == repr_)) throw DomainError("Squeezer: representation mismatch");
  if (psi.size() > n_max_ + 1) {
    for (std::size_t m = n_max_ + 1; m < psi.size(); ++m)
      if (psi[m] != 0.0) throw DomainError("Squeezer: state does not fit the window");
  }
  const auto n = static_cast<Eigen::Index>(n_max_ + 1);
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(n);
  for (Eigen::Index m = 0; m < n && static_cast<std::size_t>(m) < psi.size(); ++m) in(m) = psi[m];
  const Eigen::VectorXcd out = unitary_ * in;
  return std::vector<cplx>(out.data(), out.data() + n);
}

StateVector Squeezer::apply(const StateVector& psi, double tail_threshold) const {
  StateVector out(repr_, apply_raw(psi));
  out.normalize();
  if (out.tail_norm() > tail_threshold) {
    std::ostringstream msg;
    msg << "squeeze: tail norm " << out.tail_norm() << " exceeds " << tail_threshold
        << " at N=" << n_max_ << "; enlarge the truncation";
    throw TruncationError(msg.str(), out.tail_norm(), n_max_);
  }
  return out;
}

StateVector squeeze_apply(const SqueezeParam& xi, const StateVector& psi, std::size_t n_max,
                          double tail_threshold) {
  if (xi.r() == 0.0) {
    StateVector out = psi.resized(n_max + 1);
    out.normalize();
    return out;
  }
  return Squeezer(xi, psi.repr(), n_max).apply(psi, tail_threshold);
}

// ---------------------------------------------------------------------------

namespace {

struct RealTridiagonalEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

// X is unitarily similar, via D = diag(e^{-i m arg u}), to the real symmetric
// tridiagonal matrix with off-diagonal |u| g_m.
RealTridiagonalEigen real_form_eigen(cplx u, double w, double k, std::size_t n_max,
                                     bool with_vectors) {
  const auto n = static_cast<Eigen::Index>(n_max + 1);
  Eigen::VectorXd d(n);
  Eigen::VectorXd e(n - 1);
  for (Eigen::Index m = 0; m < n; ++m) d(m) = w * (k + static_cast<double>(m));
  for (Eigen::Index m = 0; m + 1 < n; ++m)
    e(m) = std::abs(u) * ladder_g(k, static_cast<std::size_t>(m));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, with_vectors ? Eigen::ComputeEigenvectors
                                                   : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_spectrum: tridiagonal QL iteration failed");
  RealTridiagonalEigen out{solver.eigenvalues(), {}};
  if (with_vectors) out.vectors = solver.eigenvectors();
  return out;
}

}  // namespace

HermitianSpectrum hermitian_spectrum(cplx u, double w, const ReprIndex& repr, std::size_t n_max) {
  if (n_max < 2) throw DomainError("hermitian_spectrum: N must be >= 2");
  const auto eig = real_form_eigen(u, w, repr.k(), n_max, true);
  const double phi = std::arg(u);

  HermitianSpectrum out;
  out.normalizable = normalizable_quantized(u, std::conj(u), w);
  out.eigenvalues.assign(eig.values.data(), eig.values.data() + eig.values.size());
  out.eigenvectors.reserve(out.eigenvalues.size());
  const auto n = eig.vectors.rows();
  for (Eigen::Index j = 0; j < eig.vectors.cols(); ++j) {
    std::vector<cplx> amps(static_cast<std::size_t>(n));
    for (Eigen::Index m = 0; m < n; ++m)
      amps[m] = eig.vectors(m, j) * std::polar(1.0, -static_cast<double>(m) * phi);
    StateVector sv(repr, std::move(amps));
    sv.normalize();
    out.eigenvectors.push_back(std::move(sv));
  }
  return out;
}

std::vector<double> stable_levels(cplx u, double w, const ReprIndex& repr, std::size_t n_max,
                                  double tol) {
  const auto small = real_form_eigen(u, w, repr.k(), n_max, false).values;
  const auto large = real_form_eigen(u, w, repr.k(), 2 * n_max, false).values;
  std::vector<double> out;
  const auto n = small.size();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = w >= 0.0 ? small(j) : small(n - 1 - j);
    const double b = w >= 0.0 ? large(j) : large(large.size() - 1 - j);
    if (std::abs(a - b) > tol * std::max(1.0, std::abs(a))) break;
    out.push_back(a);
  }
  return out;
}

}  // namespace acs

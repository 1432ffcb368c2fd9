#pragma once

#include <complex>
#include <random>

#include <boost/multiprecision/cpp_complex.hpp>

namespace acs::testing {

using cplx = std::complex<double>;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

/// Uniform point in the disc |x| <= radius.
inline cplx disc(std::mt19937_64& g, double radius) {
  const double r = radius * std::sqrt(uniform(g, 0.0, 1.0));
  return std::polar(r, uniform(g, 0.0, 2.0 * 3.14159265358979323846));
}

inline double rel_diff(cplx a, cplx b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

struct Uvw {
  cplx u, v, w;
};

/// Random (u, v, w), u != 0, with both growth ratios |w -+ sqrt(l^2)|/(2|u|)
/// at most 1 - margin.
inline Uvw random_normalizable(std::mt19937_64& g, double margin) {
  for (;;) {
    const cplx u = disc(g, 1.5), v = disc(g, 1.0), w = disc(g, 1.0);
    if (std::abs(u) < 0.3) continue;
    const cplx root = std::sqrt(w * w - 4.0 * u * v);
    const double worst = std::max(std::abs(w - root), std::abs(w + root)) / (2.0 * std::abs(u));
    if (worst <= 1.0 - margin) return {u, v, w};
  }
}

/// 1F1 by a 200-term Taylor sum in 50-digit arithmetic. Independent of the
/// library evaluator (no Kummer transformation, no early stopping).
inline cplx kummer_oracle(cplx a, cplx b, cplx x, int terms = 200) {
  using boost::multiprecision::cpp_complex_50;
  const cpp_complex_50 A(a.real(), a.imag()), B(b.real(), b.imag()), X(x.real(), x.imag());
  cpp_complex_50 sum = 1, term = 1;
  for (int j = 0; j < terms; ++j) {
    term *= (A + j) / ((B + j) * (j + 1)) * X;
    sum += term;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

}  // namespace acs::testing

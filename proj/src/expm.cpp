#include "acs/expm.hpp"

#include <array>
#include <cmath>

#include "acs/errors.hpp"

namespace acs {
namespace {

using Mat = Eigen::MatrixXcd;

// Backward-error thresholds on ||A||_1 for Pade degrees 3, 5, 7, 9, 13 in
// double precision.
constexpr std::array<double, 5> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                          9.504178996162932e-1, 2.097847961257068e0,
                                          5.371920351148152e0};

constexpr std::array<double, 4> kB3 = {120., 60., 12., 1.};
constexpr std::array<double, 6> kB5 = {30240., 15120., 3360., 420., 30., 1.};
constexpr std::array<double, 8> kB7 = {17297280., 8648640., 1995840., 277200.,
                                       25200.,    1512.,    56.,      1.};
constexpr std::array<double, 10> kB9 = {17643225600., 8821612800., 2075673600., 302702400.,
                                        30270240.,    2162160.,    110880.,     3960.,
                                        90.,          1.};
constexpr std::array<double, 14> kB13 = {
    64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
    129060195264000.,   10559470521600.,    670442572800.,     33522128640.,
    1323241920.,        40840800.,          960960.,           16380.,
    182.,               1.};

double norm1(const Mat& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

template <std::size_t M>
Mat pade_low(const Mat& a, const std::array<double, M>& b) {
  const auto n = a.rows();
  const Mat ident = Mat::Identity(n, n);
  const Mat a2 = a * a;
  Mat power = ident;
  Mat u_inner = Mat::Zero(n, n);
  Mat v = Mat::Zero(n, n);
  for (std::size_t j = 0; j + 1 < M; j += 2) {
    v += b[j] * power;
    u_inner += b[j + 1] * power;
    if (j + 2 < M) power = power * a2;
  }
  const Mat u = a * u_inner;
  return (v - u).partialPivLu().solve(v + u);
}

Mat pade13(const Mat& a) {
  const auto& b = kB13;
  const auto n = a.rows();
  const Mat ident = Mat::Identity(n, n);
  const Mat a2 = a * a;
  const Mat a4 = a2 * a2;
  const Mat a6 = a4 * a2;
  const Mat u_inner =
      a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  const Mat u = a * u_inner;
  const Mat v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw DomainError("expm: matrix must be square");
  if (a.rows() == 0) return a;

  const double nrm = norm1(a);
  if (nrm <= kTheta[0]) return pade_low(a, kB3);
  if (nrm <= kTheta[1]) return pade_low(a, kB5);
  if (nrm <= kTheta[2]) return pade_low(a, kB7);
  if (nrm <= kTheta[3]) return pade_low(a, kB9);

  const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / kTheta[4]))));
  Mat result = pade13(a / std::ldexp(1.0, squarings));
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace acs

#include "wallach/matrix_functions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace wallach::linalg {

namespace {

constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

// Largest 1-norm for which the unscaled [13/13] approximant reaches double
// precision.
constexpr double kTheta13 = 5.371920351148152;

double one_norm(const Eigen::MatrixXd& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, a.cols());
  if (n == 0) return id;

  const double norm = one_norm(a);
  int squarings = 0;
  if (norm > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  }
  const Eigen::MatrixXd as = a / std::ldexp(1.0, squarings);

  const Eigen::MatrixXd a2 = as * as;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a4 * a2;
  const auto& b = kPade13;

  const Eigen::MatrixXd u_inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  const Eigen::MatrixXd u =
      as * (a6 * u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const Eigen::MatrixXd v_inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  const Eigen::MatrixXd v =
      a6 * v_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

  Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

Eigen::MatrixXd sqrtm(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd y = a;
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(n, n);
  for (int iter = 0; iter < 100; ++iter) {
    const Eigen::MatrixXd y_inv = y.partialPivLu().inverse();
    const Eigen::MatrixXd z_inv = z.partialPivLu().inverse();
    Eigen::MatrixXd y_next = 0.5 * (y + z_inv);
    z = 0.5 * (z + y_inv);
    const double change = (y_next - y).norm();
    y = std::move(y_next);
    if (change <= 1e-15 * std::max(1.0, y.norm())) return y;
  }
  throw std::runtime_error("sqrtm: Denman-Beavers iteration did not converge");
}

Eigen::MatrixXd logm(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  if (n == 0) return a;

  Eigen::MatrixXd x = a;
  int roots = 0;
  while (one_norm(x - id) > 0.25) {
    if (roots > 60) throw std::runtime_error("logm: too many square roots");
    x = sqrtm(x);
    ++roots;
  }

  // log(x) = 2 * atanh(s), s = (x - I)(x + I)^-1, ||s|| < 0.15 here.
  const Eigen::MatrixXd s = (x + id).partialPivLu().solve(x - id);
  const Eigen::MatrixXd s2 = s * s;
  Eigen::MatrixXd term = s;
  Eigen::MatrixXd sum = s;
  for (int k = 1; k < 60; ++k) {
    term = term * s2;
    const Eigen::MatrixXd add = term / static_cast<double>(2 * k + 1);
    sum += add;
    if (add.norm() <= 1e-18 * std::max(1.0, sum.norm())) break;
  }
  return std::ldexp(2.0, roots) * sum;
}

Eigen::MatrixXd polar_orthonormalize(const Eigen::MatrixXd& a) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a.transpose() * a);
  const Eigen::VectorXd inv_sqrt = eig.eigenvalues().cwiseSqrt().cwiseInverse();
  return a * eig.eigenvectors() * inv_sqrt.asDiagonal() *
         eig.eigenvectors().transpose();
}

double spectral_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues()(0);
}

}  // namespace wallach::linalg

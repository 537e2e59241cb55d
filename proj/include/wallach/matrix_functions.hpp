#pragma once

#include <Eigen/Dense>

namespace wallach::linalg {

/// Matrix exponential by scaling and squaring around a degree-13 Padé
/// approximant. expm(0) is exactly the identity.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

/// Principal square root (Denman-Beavers iteration). Requires no eigenvalue
/// on the closed negative real axis.
Eigen::MatrixXd sqrtm(const Eigen::MatrixXd& a);

/// Principal logarithm by inverse scaling and squaring: repeated square roots
/// until the argument is close to the identity, then the atanh series of
/// log((I+S)(I-S)^-1).
Eigen::MatrixXd logm(const Eigen::MatrixXd& a);

/// Nearest orthogonal matrix in the Frobenius norm, a (a^T a)^{-1/2}.
Eigen::MatrixXd polar_orthonormalize(const Eigen::MatrixXd& a);

double spectral_norm(const Eigen::MatrixXd& a);

}  // namespace wallach::linalg

#pragma once

#include <vector>

#include "wallach/catalog.hpp"
#include "wallach/random.hpp"

namespace wallach::test {

inline std::vector<DecompositionPtr> catalog_spaces() {
  return {build_so_blocks(1, 1, 1), build_so_blocks(2, 2, 2), build_so_blocks(2, 3, 4),
          build_stiefel(2),         build_stiefel(3),         build_su3_flag(),
          build_product_spheres()};
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// Plain Taylor series, summed until terms vanish.
inline Eigen::MatrixXd taylor_exp(const Eigen::MatrixXd& a, int terms = 60) {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd term = sum;
  for (int k = 1; k < terms; ++k) {
    term = term * a / k;
    sum += term;
  }
  return sum;
}

}  // namespace wallach::test

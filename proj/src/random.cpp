#include "wallach/random.hpp"

#include <cmath>
#include <numbers>

namespace wallach {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Element normalize_neg_b(Eigen::VectorXd x, const ContextPtr& ctx) {
  const double n2 = -x.dot(ctx->killing() * x);
  if (n2 > 0.0) x /= std::sqrt(n2);
  return {ctx, std::move(x)};
}

}  // namespace

SplitMix64::SplitMix64(std::uint64_t seed, std::uint64_t stream)
    : key_(mix(seed ^ mix(stream + kGolden))) {}

SplitMix64::result_type SplitMix64::operator()() {
  ++counter_;
  return mix(key_ + counter_ * kGolden);
}

double SplitMix64::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double SplitMix64::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Element random_module_vector(const ReductiveDecomposition& dec, int i, SplitMix64& rng) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dec.dim());
  for (int idx : dec.indices(module_part(i))) x[idx] = rng.normal();
  return normalize_neg_b(std::move(x), dec.context());
}

Element random_m_vector(const ReductiveDecomposition& dec, SplitMix64& rng) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dec.dim());
  for (int idx : dec.indices(Part::m)) x[idx] = rng.normal();
  return normalize_neg_b(std::move(x), dec.context());
}

Element random_element(const ContextPtr& ctx, SplitMix64& rng) {
  Eigen::VectorXd x(ctx->dim());
  for (int i = 0; i < ctx->dim(); ++i) x[i] = rng.normal();
  return {ctx, x / x.norm()};
}

}  // namespace wallach

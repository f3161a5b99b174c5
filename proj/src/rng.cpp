#include "hdclt/rng.hpp"

#include <Eigen/Core>

namespace hdclt {

void RngStream::fill_uniform(std::span<double> out) noexcept {
  for (double& x : out) x = uniform();
}

void RngStream::fill_exponential(std::span<double> out) noexcept {
  fill_uniform(out);
  Eigen::Map<Eigen::ArrayXd> m(out.data(), static_cast<Eigen::Index>(out.size()));
  m = -m.log();
}

void RngStream::fill_normal(std::span<double> out) noexcept {
  const std::size_t n = out.size();
  const std::size_t pairs = n / 2;
  if (pairs > 0) {
    Eigen::ArrayXd u1(pairs), u2(pairs);
    fill_uniform({u1.data(), pairs});
    fill_uniform({u2.data(), pairs});
    Eigen::ArrayXd r = (-2.0 * u1.log()).sqrt();
    Eigen::ArrayXd a = 6.283185307179586476925286766559 * u2;
    Eigen::Map<Eigen::ArrayXd, 0, Eigen::InnerStride<2>> c(out.data(),
                                                           static_cast<Eigen::Index>(pairs));
    Eigen::Map<Eigen::ArrayXd, 0, Eigen::InnerStride<2>> s(out.data() + 1,
                                                           static_cast<Eigen::Index>(pairs));
    c = r * a.cos();
    s = r * a.sin();
  }
  if (n % 2 != 0) out[n - 1] = normal();
}

}  // namespace hdclt

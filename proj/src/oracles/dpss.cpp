#include <cmath>
#include <numbers>

#include "slepian/oracles.hpp"

namespace slepian {

Eigen::MatrixXd dpss_tridiagonal(int n, double w) {
  if (n < 1) throw domain_error("DPSS size must be positive");
  if (!(w > 0.0 && w < 0.5)) throw domain_error("half-bandwidth W must lie in (0, 1/2)");
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  const double c = std::cos(2.0 * std::numbers::pi * w);
  for (int k = 0; k < n; ++k) {
    const double d = 0.5 * (n - 1) - k;
    t(k, k) = d * d * c;
    if (k + 1 < n) {
      t(k, k + 1) = 0.5 * (k + 1) * (n - 1 - k);
      t(k + 1, k) = t(k, k + 1);
    }
  }
  return t;
}

}  // namespace slepian

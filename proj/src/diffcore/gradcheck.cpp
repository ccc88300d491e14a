#include "spikenav/diffcore/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace spikenav::diff {

double finite_diff_check(const ScalarFn& f, const Tensor& x, double eps) {
  Tensor leaf = x.clone(true);
  const Tensor loss = f(leaf);
  backward(loss);
  const std::vector<double> analytic(leaf.grad().begin(), leaf.grad().end());

  NoGradGuard no_grad;
  Tensor probe = x.clone(false);
  auto values = probe.mutable_data();
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double saved = values[i];
    values[i] = saved + eps;
    const double up = f(probe).item();
    values[i] = saved - eps;
    const double down = f(probe).item();
    values[i] = saved;
    const double numeric = (up - down) / (2.0 * eps);
    const double err = std::abs(analytic[i] - numeric) / std::max(1e-8, std::abs(numeric));
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace spikenav::diff

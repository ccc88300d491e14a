#ifndef SPIKENAV_DIFFCORE_GRADCHECK_HPP_
#define SPIKENAV_DIFFCORE_GRADCHECK_HPP_

#include <functional>

#include "spikenav/diffcore/tensor.hpp"

namespace spikenav::diff {

using ScalarFn = std::function<Tensor(const Tensor&)>;

// Max over elements of |analytic - central difference| /
// max(1e-8, |central difference|), with the analytic gradient of f at x taken
// from backward().
double finite_diff_check(const ScalarFn& f, const Tensor& x, double eps = 1e-6);

}  // namespace spikenav::diff

#endif  // SPIKENAV_DIFFCORE_GRADCHECK_HPP_

#ifndef SPIKENAV_DIFFCORE_OPS_HPP_
#define SPIKENAV_DIFFCORE_OPS_HPP_

#include "spikenav/diffcore/tensor.hpp"

namespace spikenav::diff {

// Pseudo-derivative window of the spike nonlinearity.
struct SurrogateParams {
  double v_th = 1.0;
  double tau_grad = 1.0;
  double s_grad = 1.0;

  void validate() const;
};

// Triangular surrogate s_grad * max(0, 1 - |v - v_th| / tau_grad).
double surrogate_derivative(double v, const SurrogateParams& p);
// Antiderivative of the surrogate, normalized to rise from 0 to s_grad*tau_grad.
double surrogate_integral(double v, const SurrogateParams& p);

// Linear algebra.
Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& a);
// x[B x in] * w[out x in]^T + bias[out]; bias may be undefined.
Tensor linear(const Tensor& x, const Tensor& w, const Tensor& bias);

// Elementwise, identical shapes.
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor minimum(const Tensor& a, const Tensor& b);

Tensor scale(const Tensor& a, double k);
Tensor add_scalar(const Tensor& a, double k);
Tensor neg(const Tensor& a);
Tensor tanh(const Tensor& a);
Tensor exp(const Tensor& a);
Tensor square(const Tensor& a);
Tensor relu(const Tensor& a);
Tensor clamp(const Tensor& a, double lo, double hi);

// Row-vector broadcast over the rows of a matrix.
Tensor add_row(const Tensor& m, const Tensor& row);
Tensor mul_row(const Tensor& m, const Tensor& row);

Tensor reshape(const Tensor& a, Shape shape);

// Reductions.
Tensor sum(const Tensor& a);
Tensor mean(const Tensor& a);
// [m x n] -> [m]
Tensor row_sum(const Tensor& a);

// Binary spike: forward 1[v >= v_th], backward the triangular surrogate.
Tensor spike_threshold(const Tensor& v, const SurrogateParams& p);
// Graded spike: forward u where |u| >= v_th else 0. Backward is identity
// where the spike is emitted and the triangular surrogate (in |u|) below it.
Tensor graded_spike(const Tensor& u, const SurrogateParams& p);

// Smooth stand-ins for gradient checks. smooth_spike is the antiderivative
// of the surrogate, so its exact derivative is the surrogate window.
// smooth_graded_spike is u * N(|u|) with N the surrogate antiderivative
// normalized to [0, 1].
Tensor smooth_spike(const Tensor& v, const SurrogateParams& p);
Tensor smooth_graded_spike(const Tensor& u, const SurrogateParams& p);

}  // namespace spikenav::diff

#endif  // SPIKENAV_DIFFCORE_OPS_HPP_

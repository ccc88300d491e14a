#include "spikenav/diffcore/ops.hpp"

#include <algorithm>
#include <cmath>

namespace spikenav::diff {

namespace {

using BackwardFn = std::function<void(Node&)>;

bool wants_grad(std::initializer_list<const Tensor*> inputs) {
  if (!grad_enabled()) return false;
  for (const Tensor* t : inputs) {
    if (t->defined() && t->requires_grad()) return true;
  }
  return false;
}

// Builds the output node; records parents and the backward closure only when
// some input participates in differentiation.
Tensor make_result(Shape shape, std::vector<double> data,
                   std::initializer_list<const Tensor*> inputs, BackwardFn fn) {
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->data = std::move(data);
  if (wants_grad(inputs)) {
    node->requires_grad = true;
    for (const Tensor* t : inputs) {
      if (t->defined()) node->parents.push_back(t->node());
    }
    node->backward = std::move(fn);
  }
  return Tensor(std::move(node));
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + shape_string(a.shape()) +
                         " vs " + shape_string(b.shape()));
  }
}

void require_matrix(const Tensor& a, const char* op) {
  if (a.dim() != 2) {
    throw DimensionError(std::string(op) + ": expected a matrix, got " + shape_string(a.shape()));
  }
}

// Applies f elementwise; df(x, y) gives dy/dx from input and output values.
template <typename F, typename DF>
Tensor unary(const Tensor& a, F f, DF df) {
  const auto in = a.data();
  std::vector<double> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = f(in[i]);
  return make_result(a.shape(), std::move(out), {&a}, [df](Node& self) {
    Node& p = *self.parents[0];
    if (!p.requires_grad) return;
    for (std::size_t i = 0; i < self.grad.size(); ++i) {
      p.grad[i] += self.grad[i] * df(p.data[i], self.data[i]);
    }
  });
}

}  // namespace

void SurrogateParams::validate() const {
  if (!(tau_grad > 0.0) || !(s_grad > 0.0)) {
    throw ContractError("surrogate parameters need tau_grad > 0 and s_grad > 0");
  }
}

double surrogate_derivative(double v, const SurrogateParams& p) {
  return p.s_grad * std::max(0.0, 1.0 - std::abs(v - p.v_th) / p.tau_grad);
}

double surrogate_integral(double v, const SurrogateParams& p) {
  const double d = v - p.v_th;
  const double tau = p.tau_grad;
  if (d <= -tau) return 0.0;
  if (d >= tau) return p.s_grad * tau;
  if (d <= 0.0) return p.s_grad * (d + tau) * (d + tau) / (2.0 * tau);
  return p.s_grad * (0.5 * tau + d - d * d / (2.0 * tau));
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_matrix(a, "matmul");
  require_matrix(b, "matmul");
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  if (b.rows() != k) {
    throw DimensionError("matmul: inner dimensions differ " + shape_string(a.shape()) + " * " +
                         shape_string(b.shape()));
  }
  const auto A = a.data();
  const auto B = b.data();
  std::vector<double> out(m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = A[i * k + p];
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += aip * B[p * n + j];
    }
  }
  return make_result({m, n}, std::move(out), {&a, &b}, [m, k, n](Node& self) {
    Node& pa = *self.parents[0];
    Node& pb = *self.parents[1];
    const auto& G = self.grad;
    if (pa.requires_grad) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
          double acc = 0.0;
          for (std::size_t j = 0; j < n; ++j) acc += G[i * n + j] * pb.data[p * n + j];
          pa.grad[i * k + p] += acc;
        }
      }
    }
    if (pb.requires_grad) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
          const double aip = pa.data[i * k + p];
          for (std::size_t j = 0; j < n; ++j) pb.grad[p * n + j] += aip * G[i * n + j];
        }
      }
    }
  });
}

Tensor transpose(const Tensor& a) {
  require_matrix(a, "transpose");
  const std::size_t r = a.rows(), c = a.cols();
  const auto in = a.data();
  std::vector<double> out(r * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out[j * r + i] = in[i * c + j];
  return make_result({c, r}, std::move(out), {&a}, [r, c](Node& self) {
    Node& p = *self.parents[0];
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) p.grad[i * c + j] += self.grad[j * r + i];
  });
}

Tensor linear(const Tensor& x, const Tensor& w, const Tensor& bias) {
  require_matrix(x, "linear");
  require_matrix(w, "linear");
  const std::size_t batch = x.rows(), in = x.cols(), out_dim = w.rows();
  if (w.cols() != in) {
    throw DimensionError("linear: input width " + std::to_string(in) + " vs weights " +
                         shape_string(w.shape()));
  }
  if (bias.defined() && bias.shape() != Shape{out_dim}) {
    throw DimensionError("linear: bias shape " + shape_string(bias.shape()));
  }
  const auto X = x.data();
  const auto W = w.data();
  std::vector<double> out(batch * out_dim);
  for (std::size_t b = 0; b < batch; ++b) {
    const double* xr = X.data() + b * in;
    for (std::size_t o = 0; o < out_dim; ++o) {
      const double* wr = W.data() + o * in;
      double acc = bias.defined() ? bias.data()[o] : 0.0;
      for (std::size_t i = 0; i < in; ++i) acc += wr[i] * xr[i];
      out[b * out_dim + o] = acc;
    }
  }
  const bool has_bias = bias.defined();
  return make_result({batch, out_dim}, std::move(out), {&x, &w, &bias},
                     [batch, in, out_dim, has_bias](Node& self) {
                       Node& px = *self.parents[0];
                       Node& pw = *self.parents[1];
                       const auto& G = self.grad;
                       if (px.requires_grad) {
                         for (std::size_t b = 0; b < batch; ++b) {
                           double* gx = px.grad.data() + b * in;
                           for (std::size_t o = 0; o < out_dim; ++o) {
                             const double g = G[b * out_dim + o];
                             if (g == 0.0) continue;
                             const double* wr = pw.data.data() + o * in;
                             for (std::size_t i = 0; i < in; ++i) gx[i] += g * wr[i];
                           }
                         }
                       }
                       if (pw.requires_grad) {
                         for (std::size_t b = 0; b < batch; ++b) {
                           const double* xr = px.data.data() + b * in;
                           for (std::size_t o = 0; o < out_dim; ++o) {
                             const double g = G[b * out_dim + o];
                             if (g == 0.0) continue;
                             double* gw = pw.grad.data() + o * in;
                             for (std::size_t i = 0; i < in; ++i) gw[i] += g * xr[i];
                           }
                         }
                       }
                       if (has_bias) {
                         Node& pb = *self.parents[2];
                         if (pb.requires_grad) {
                           for (std::size_t b = 0; b < batch; ++b)
                             for (std::size_t o = 0; o < out_dim; ++o)
                               pb.grad[o] += G[b * out_dim + o];
                         }
                       }
                     });
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  const auto A = a.data(), B = b.data();
  std::vector<double> out(A.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = A[i] + B[i];
  return make_result(a.shape(), std::move(out), {&a, &b}, [](Node& self) {
    for (int k = 0; k < 2; ++k) {
      Node& p = *self.parents[k];
      if (!p.requires_grad) continue;
      for (std::size_t i = 0; i < self.grad.size(); ++i) p.grad[i] += self.grad[i];
    }
  });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "sub");
  const auto A = a.data(), B = b.data();
  std::vector<double> out(A.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = A[i] - B[i];
  return make_result(a.shape(), std::move(out), {&a, &b}, [](Node& self) {
    Node& pa = *self.parents[0];
    Node& pb = *self.parents[1];
    for (std::size_t i = 0; i < self.grad.size(); ++i) {
      if (pa.requires_grad) pa.grad[i] += self.grad[i];
      if (pb.requires_grad) pb.grad[i] -= self.grad[i];
    }
  });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "mul");
  const auto A = a.data(), B = b.data();
  std::vector<double> out(A.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = A[i] * B[i];
  return make_result(a.shape(), std::move(out), {&a, &b}, [](Node& self) {
    Node& pa = *self.parents[0];
    Node& pb = *self.parents[1];
    for (std::size_t i = 0; i < self.grad.size(); ++i) {
      if (pa.requires_grad) pa.grad[i] += self.grad[i] * pb.data[i];
      if (pb.requires_grad) pb.grad[i] += self.grad[i] * pa.data[i];
    }
  });
}

Tensor minimum(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "minimum");
  const auto A = a.data(), B = b.data();
  std::vector<double> out(A.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(A[i], B[i]);
  // Ties route the gradient to the first argument.
  return make_result(a.shape(), std::move(out), {&a, &b}, [](Node& self) {
    Node& pa = *self.parents[0];
    Node& pb = *self.parents[1];
    for (std::size_t i = 0; i < self.grad.size(); ++i) {
      if (pa.data[i] <= pb.data[i]) {
        if (pa.requires_grad) pa.grad[i] += self.grad[i];
      } else if (pb.requires_grad) {
        pb.grad[i] += self.grad[i];
      }
    }
  });
}

Tensor scale(const Tensor& a, double k) {
  return unary(a, [k](double x) { return k * x; }, [k](double, double) { return k; });
}

Tensor add_scalar(const Tensor& a, double k) {
  return unary(a, [k](double x) { return x + k; }, [](double, double) { return 1.0; });
}

Tensor neg(const Tensor& a) { return scale(a, -1.0); }

Tensor tanh(const Tensor& a) {
  return unary(a, [](double x) { return std::tanh(x); },
               [](double, double y) { return 1.0 - y * y; });
}

Tensor exp(const Tensor& a) {
  return unary(a, [](double x) { return std::exp(x); }, [](double, double y) { return y; });
}

Tensor square(const Tensor& a) {
  return unary(a, [](double x) { return x * x; }, [](double x, double) { return 2.0 * x; });
}

Tensor relu(const Tensor& a) {
  return unary(a, [](double x) { return x > 0.0 ? x : 0.0; },
               [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Tensor clamp(const Tensor& a, double lo, double hi) {
  return unary(a, [lo, hi](double x) { return std::clamp(x, lo, hi); },
               [lo, hi](double x, double) { return (x >= lo && x <= hi) ? 1.0 : 0.0; });
}

Tensor add_row(const Tensor& m, const Tensor& row) {
  require_matrix(m, "add_row");
  const std::size_t r = m.rows(), c = m.cols();
  if (row.numel() != c) throw DimensionError("add_row: row width mismatch");
  const auto M = m.data(), R = row.data();
  std::vector<double> out(r * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out[i * c + j] = M[i * c + j] + R[j];
  return make_result(m.shape(), std::move(out), {&m, &row}, [r, c](Node& self) {
    Node& pm = *self.parents[0];
    Node& pr = *self.parents[1];
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        const double g = self.grad[i * c + j];
        if (pm.requires_grad) pm.grad[i * c + j] += g;
        if (pr.requires_grad) pr.grad[j] += g;
      }
    }
  });
}

Tensor mul_row(const Tensor& m, const Tensor& row) {
  require_matrix(m, "mul_row");
  const std::size_t r = m.rows(), c = m.cols();
  if (row.numel() != c) throw DimensionError("mul_row: row width mismatch");
  const auto M = m.data(), R = row.data();
  std::vector<double> out(r * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out[i * c + j] = M[i * c + j] * R[j];
  return make_result(m.shape(), std::move(out), {&m, &row}, [r, c](Node& self) {
    Node& pm = *self.parents[0];
    Node& pr = *self.parents[1];
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        const double g = self.grad[i * c + j];
        if (pm.requires_grad) pm.grad[i * c + j] += g * pr.data[j];
        if (pr.requires_grad) pr.grad[j] += g * pm.data[i * c + j];
      }
    }
  });
}

Tensor reshape(const Tensor& a, Shape shape) {
  if (shape_numel(shape) != a.numel()) {
    throw DimensionError("reshape: " + shape_string(a.shape()) + " -> " + shape_string(shape));
  }
  std::vector<double> out(a.data().begin(), a.data().end());
  return make_result(std::move(shape), std::move(out), {&a}, [](Node& self) {
    Node& p = *self.parents[0];
    for (std::size_t i = 0; i < self.grad.size(); ++i) p.grad[i] += self.grad[i];
  });
}

Tensor sum(const Tensor& a) {
  double acc = 0.0;
  for (double v : a.data()) acc += v;
  return make_result({}, {acc}, {&a}, [](Node& self) {
    Node& p = *self.parents[0];
    const double g = self.grad[0];
    for (double& pg : p.grad) pg += g;
  });
}

Tensor mean(const Tensor& a) {
  const std::size_t n = a.numel();
  if (n == 0) throw ContractError("mean of an empty tensor");
  double acc = 0.0;
  for (double v : a.data()) acc += v;
  return make_result({}, {acc / static_cast<double>(n)}, {&a}, [n](Node& self) {
    Node& p = *self.parents[0];
    const double g = self.grad[0] / static_cast<double>(n);
    for (double& pg : p.grad) pg += g;
  });
}

Tensor row_sum(const Tensor& a) {
  require_matrix(a, "row_sum");
  const std::size_t r = a.rows(), c = a.cols();
  const auto A = a.data();
  std::vector<double> out(r, 0.0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out[i] += A[i * c + j];
  return make_result({r}, std::move(out), {&a}, [r, c](Node& self) {
    Node& p = *self.parents[0];
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) p.grad[i * c + j] += self.grad[i];
  });
}

Tensor spike_threshold(const Tensor& v, const SurrogateParams& p) {
  return unary(v, [th = p.v_th](double x) { return x >= th ? 1.0 : 0.0; },
               [p](double x, double) { return surrogate_derivative(x, p); });
}

Tensor graded_spike(const Tensor& u, const SurrogateParams& p) {
  return unary(u, [th = p.v_th](double x) { return std::abs(x) >= th ? x : 0.0; },
               [p](double x, double) {
                 const double mag = std::abs(x);
                 return mag >= p.v_th ? 1.0 : surrogate_derivative(mag, p);
               });
}

Tensor smooth_spike(const Tensor& v, const SurrogateParams& p) {
  return unary(v, [p](double x) { return surrogate_integral(x, p); },
               [p](double x, double) { return surrogate_derivative(x, p); });
}

Tensor smooth_graded_spike(const Tensor& u, const SurrogateParams& p) {
  const double norm = p.s_grad * p.tau_grad;
  return unary(u, [p, norm](double x) { return x * surrogate_integral(std::abs(x), p) / norm; },
               [p, norm](double x, double) {
                 const double mag = std::abs(x);
                 return (surrogate_integral(mag, p) + mag * surrogate_derivative(mag, p)) / norm;
               });
}

}  // namespace spikenav::diff

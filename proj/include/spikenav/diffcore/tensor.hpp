#ifndef SPIKENAV_DIFFCORE_TENSOR_HPP_
#define SPIKENAV_DIFFCORE_TENSOR_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spikenav::diff {

using Shape = std::vector<std::size_t>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

std::size_t shape_numel(const Shape& shape);
std::string shape_string(const Shape& shape);

// One vertex of the recorded computation graph. `backward` reads `grad` and
// accumulates into the grads of `parents` that require it.
struct Node {
  Shape shape;
  std::vector<double> data;
  std::vector<double> grad;
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node&)> backward;

  bool is_leaf() const { return parents.empty(); }
};

// Dense row-major float64 tensor with reverse-mode differentiation. Copies
// are shallow: two Tensor handles may refer to the same node.
class Tensor {
 public:
  Tensor() = default;
  Tensor(Shape shape, std::vector<double> data, bool requires_grad = false);
  explicit Tensor(std::shared_ptr<Node> node) : node_(std::move(node)) {}

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor full(Shape shape, double value, bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);
  static Tensor from_vector(std::vector<double> values,
                            bool requires_grad = false);
  static Tensor from_rows(const std::vector<std::vector<double>>& rows,
                          bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const;
  std::size_t dim() const { return shape().size(); }
  std::size_t numel() const { return data().size(); }
  // For a 2-D tensor, the leading and trailing extents.
  std::size_t rows() const;
  std::size_t cols() const;

  std::span<const double> data() const;
  // Writable view of the values. Only meaningful on leaves; mutating an
  // interior node invalidates its recorded backward.
  std::span<double> mutable_data();
  double item() const;
  double at(std::size_t i) const { return data()[i]; }
  double at(std::size_t r, std::size_t c) const;

  bool requires_grad() const;
  void set_requires_grad(bool value);
  bool is_leaf() const;

  bool has_grad() const;
  std::span<const double> grad() const;
  std::span<double> mutable_grad();
  void zero_grad();

  // Same values, cut from the graph.
  Tensor detach() const;
  Tensor clone(bool requires_grad = false) const;

  const std::shared_ptr<Node>& node() const { return node_; }

 private:
  std::shared_ptr<Node> node_;
};

// Graph recording is on by default; NoGradGuard disables it for the current
// thread for its lifetime.
bool grad_enabled();

class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

// Populates dLoss/dleaf on every reachable leaf with requires_grad. Leaf
// grads accumulate across calls; interior grads are recomputed each call.
void backward(const Tensor& loss);

}  // namespace spikenav::diff

#endif  // SPIKENAV_DIFFCORE_TENSOR_HPP_

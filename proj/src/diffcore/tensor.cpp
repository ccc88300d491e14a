#include "spikenav/diffcore/tensor.hpp"

#include <sstream>
#include <unordered_set>

namespace spikenav::diff {

namespace {

thread_local bool g_grad_enabled = true;

const std::shared_ptr<Node>& checked(const std::shared_ptr<Node>& node) {
  if (!node) throw ContractError("tensor is undefined");
  return node;
}

}  // namespace

std::size_t shape_numel(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

std::string shape_string(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << 'x';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

Tensor::Tensor(Shape shape, std::vector<double> data, bool requires_grad) {
  if (shape_numel(shape) != data.size()) {
    throw DimensionError("tensor shape " + shape_string(shape) + " does not match " +
                         std::to_string(data.size()) + " values");
  }
  node_ = std::make_shared<Node>();
  node_->shape = std::move(shape);
  node_->data = std::move(data);
  node_->requires_grad = requires_grad;
}

Tensor Tensor::zeros(Shape shape, bool requires_grad) {
  return full(std::move(shape), 0.0, requires_grad);
}

Tensor Tensor::full(Shape shape, double value, bool requires_grad) {
  std::vector<double> data(shape_numel(shape), value);
  return Tensor(std::move(shape), std::move(data), requires_grad);
}

Tensor Tensor::scalar(double value, bool requires_grad) {
  return Tensor({}, {value}, requires_grad);
}

Tensor Tensor::from_vector(std::vector<double> values, bool requires_grad) {
  Shape shape{values.size()};
  return Tensor(std::move(shape), std::move(values), requires_grad);
}

Tensor Tensor::from_rows(const std::vector<std::vector<double>>& rows,
                         bool requires_grad) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Tensor({r, c}, std::move(data), requires_grad);
}

const Shape& Tensor::shape() const { return checked(node_)->shape; }

std::size_t Tensor::rows() const {
  const Shape& s = shape();
  if (s.size() != 2) throw DimensionError("rows() on non-matrix " + shape_string(s));
  return s[0];
}

std::size_t Tensor::cols() const {
  const Shape& s = shape();
  if (s.size() != 2) throw DimensionError("cols() on non-matrix " + shape_string(s));
  return s[1];
}

std::span<const double> Tensor::data() const { return checked(node_)->data; }

std::span<double> Tensor::mutable_data() { return checked(node_)->data; }

double Tensor::item() const {
  const auto d = data();
  if (d.size() != 1) throw ContractError("item() on tensor with " + std::to_string(d.size()) + " values");
  return d[0];
}

double Tensor::at(std::size_t r, std::size_t c) const { return data()[r * cols() + c]; }

bool Tensor::requires_grad() const { return checked(node_)->requires_grad; }

void Tensor::set_requires_grad(bool value) { checked(node_)->requires_grad = value; }

bool Tensor::is_leaf() const { return checked(node_)->is_leaf(); }

bool Tensor::has_grad() const { return !checked(node_)->grad.empty(); }

std::span<const double> Tensor::grad() const { return checked(node_)->grad; }

std::span<double> Tensor::mutable_grad() { return checked(node_)->grad; }

void Tensor::zero_grad() {
  auto& n = *checked(node_);
  n.grad.assign(n.data.size(), 0.0);
}

Tensor Tensor::detach() const {
  const auto& n = *checked(node_);
  return Tensor(n.shape, n.data, false);
}

Tensor Tensor::clone(bool requires_grad) const {
  const auto& n = *checked(node_);
  return Tensor(n.shape, n.data, requires_grad);
}

bool grad_enabled() { return g_grad_enabled; }

NoGradGuard::NoGradGuard() : previous_(g_grad_enabled) { g_grad_enabled = false; }

NoGradGuard::~NoGradGuard() { g_grad_enabled = previous_; }

void backward(const Tensor& loss) {
  const auto& root = checked(loss.node());
  if (root->data.size() != 1) {
    throw ContractError("backward() needs a scalar loss, got shape " + shape_string(root->shape));
  }
  if (!root->requires_grad) {
    throw ContractError("backward() on a loss that does not require grad");
  }

  // Iterative post-order DFS gives a topological order (parents first).
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  std::vector<std::pair<Node*, std::size_t>> stack{{root.get(), 0}};
  visited.insert(root.get());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      Node* parent = node->parents[next++].get();
      if (parent->requires_grad && visited.insert(parent).second) {
        stack.emplace_back(parent, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  for (Node* n : order) {
    if (!n->is_leaf() || n->grad.size() != n->data.size()) {
      n->grad.assign(n->data.size(), 0.0);
    }
  }
  root->grad[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* n = *it;
    if (n->backward) n->backward(*n);
  }
}

}  // namespace spikenav::diff

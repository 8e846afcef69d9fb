#include "yangeval/block_operator.hpp"

#include <algorithm>

#include "yangeval/errors.hpp"

namespace yangeval {

Shift shift_of(const LoopGenerator& g, int N) {
  const WeightEnergy we = weight_and_energy(g, N);
  return {we.weight, we.energy};
}

int shifted_block(const TruncatedModule& m, int b, const Shift& shift) {
  BlockKey key = m.block_key(b);
  key.energy += shift.energy;
  if (key.energy > m.depth())
    throw TruncationOverflow("operator maps energy " + std::to_string(m.block_key(b).energy) + " beyond depth " +
                             std::to_string(m.depth()));
  if (key.energy < 0) return -1;
  for (std::size_t k = 0; k < key.weight.size(); ++k) key.weight[k] += shift.weight[k];
  auto t = m.find_block(key);
  return t ? *t : -1;
}

class BlockOperator::Node {
 public:
  virtual ~Node() = default;

  const Image& image(int b) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(b); it != cache_.end()) return it->second;
    }
    Image img = compute(b);
    std::lock_guard lock(mutex_);
    return cache_.try_emplace(b, std::move(img)).first->second;
  }

 protected:
  virtual Image compute(int b) = 0;

 private:
  std::mutex mutex_;
  std::map<int, Image> cache_;
};

namespace {

using Image = BlockOperator::Image;

std::shared_ptr<const QSparse> share(QSparse m) {
  drop_zeros(m);
  return std::make_shared<const QSparse>(std::move(m));
}

class IdentityNode final : public BlockOperator::Node {
 public:
  explicit IdentityNode(ModulePtr m) : m_(std::move(m)) {}

 protected:
  Image compute(int b) override {
    const int d = m_->block_dim(b);
    QSparse id(d, d);
    id.setIdentity();
    return {b, share(std::move(id))};
  }

 private:
  ModulePtr m_;
};

class LoopNode final : public BlockOperator::Node {
 public:
  LoopNode(ModulePtr m, LoopGenerator g) : m_(std::move(m)), g_(g) {}

 protected:
  Image compute(int b) override {
    const auto a = m_->action(g_, b);
    if (a.target < 0) return {};
    // Alias the module-owned matrix; the module outlives the image.
    return {a.target, std::shared_ptr<const QSparse>(m_, a.matrix)};
  }

 private:
  ModulePtr m_;
  LoopGenerator g_;
};

class ExprNode final : public BlockOperator::Node {
 public:
  ExprNode(ModulePtr m, NormalExpr x, Shift shift) : m_(std::move(m)), x_(std::move(x)), shift_(std::move(shift)) {}

 protected:
  Image compute(int b) override {
    const int target = shifted_block(*m_, b, shift_);
    if (target < 0) return {};
    QSparse acc(m_->block_dim(target), m_->block_dim(b));
    for (const auto& [mono, k] : x_.terms()) {
      int cur = b;
      QSparse prod;
      bool started = false;
      bool vanished = false;
      for (auto f = mono.rbegin(); f != mono.rend(); ++f) {
        const auto a = m_->action(*f, cur);
        if (a.target < 0) {
          vanished = true;
          break;
        }
        prod = started ? QSparse(*a.matrix * prod) : *a.matrix;
        started = true;
        cur = a.target;
      }
      if (vanished) continue;
      if (cur != target) throw Error("internal: inhomogeneous expression operator");
      if (!started) {
        prod = QSparse(acc.rows(), acc.cols());
        prod.setIdentity();
      }
      acc += k * prod;
    }
    return {target, share(std::move(acc))};
  }

 private:
  ModulePtr m_;
  NormalExpr x_;
  Shift shift_;
};

class CombinationNode final : public BlockOperator::Node {
 public:
  using Term = std::pair<Rational, std::shared_ptr<BlockOperator::Node>>;
  CombinationNode(ModulePtr m, Shift shift, std::vector<Term> terms)
      : m_(std::move(m)), shift_(std::move(shift)), terms_(std::move(terms)) {}

 protected:
  Image compute(int b) override {
    int target = -1;
    QSparse acc;
    for (const auto& [k, node] : terms_) {
      const Image& img = node->image(b);
      if (img.is_zero()) continue;
      if (target < 0) {
        target = img.target;
        acc = QSparse(img.matrix->rows(), img.matrix->cols());
      } else if (img.target != target) {
        throw Error("internal: summands map a block to different targets");
      }
      acc += k * *img.matrix;
    }
    if (target < 0) return {};
    return {target, share(std::move(acc))};
  }

 private:
  ModulePtr m_;
  Shift shift_;
  std::vector<Term> terms_;
};

class ComposeNode final : public BlockOperator::Node {
 public:
  ComposeNode(std::shared_ptr<Node> a, std::shared_ptr<Node> b) : a_(std::move(a)), b_(std::move(b)) {}

 protected:
  Image compute(int b) override {
    const Image& inner = b_->image(b);
    if (inner.is_zero()) return {};
    const Image& outer = a_->image(inner.target);
    if (outer.is_zero()) return {};
    return {outer.target, share(QSparse(*outer.matrix * *inner.matrix))};
  }

 private:
  std::shared_ptr<Node> a_;
  std::shared_ptr<Node> b_;
};

Shift zero_shift(const TruncatedModule& m) { return {std::vector<int>(static_cast<std::size_t>(m.N()), 0), 0}; }

Shift add(const Shift& a, const Shift& b) {
  Shift s = a;
  for (std::size_t k = 0; k < s.weight.size(); ++k) s.weight[k] += b.weight[k];
  s.energy += b.energy;
  return s;
}

}  // namespace

BlockOperator::BlockOperator(ModulePtr m, Shift shift, int peak, std::shared_ptr<Node> node)
    : module_(std::move(m)), shift_(std::move(shift)), peak_(peak), node_(std::move(node)) {}

BlockOperator BlockOperator::zero(ModulePtr m, Shift shift) {
  if (shift.weight.empty()) shift = zero_shift(*m);
  const int peak = std::max(0, shift.energy);
  return {std::move(m), std::move(shift), peak, nullptr};
}

BlockOperator BlockOperator::identity(ModulePtr m) {
  Shift s = zero_shift(*m);
  auto node = std::make_shared<IdentityNode>(m);
  return {std::move(m), std::move(s), 0, std::move(node)};
}

BlockOperator BlockOperator::loop(ModulePtr m, const LoopGenerator& g) {
  Shift s = shift_of(g, m->N());
  const int peak = std::max(0, s.energy);
  auto node = std::make_shared<LoopNode>(m, g);
  return {std::move(m), std::move(s), peak, std::move(node)};
}

BlockOperator BlockOperator::expression(ModulePtr m, const NormalExpr& x) {
  if (x.is_zero()) return zero(m, zero_shift(*m));
  Shift s = zero_shift(*m);
  bool first = true;
  int peak = 0;
  for (const auto& [mono, k] : x.terms()) {
    Shift t = zero_shift(*m);
    for (auto f = mono.rbegin(); f != mono.rend(); ++f) {
      t = add(t, shift_of(*f, m->N()));
      peak = std::max(peak, t.energy);
    }
    if (first) {
      s = t;
      first = false;
    } else if (!(t == s)) {
      throw Error("expression is not homogeneous in weight and energy");
    }
  }
  auto node = std::make_shared<ExprNode>(m, x, s);
  return {std::move(m), std::move(s), peak, std::move(node)};
}

const BlockOperator::Image& BlockOperator::on_block(int b) const {
  static const Image none;
  if (!node_) return none;
  return node_->image(b);
}

ModuleVector BlockOperator::apply(const ModuleVector& v) const {
  ModuleVector out;
  for (const auto& [b, x] : v.parts) {
    if (is_zero_matrix(x)) continue;
    const Image& img = on_block(b);
    if (img.is_zero()) continue;
    out.add(img.target, QVector(*img.matrix * x));
  }
  return out;
}

BlockOperator BlockOperator::combination(const std::vector<std::pair<Rational, BlockOperator>>& terms) {
  if (terms.empty()) throw Error("internal: empty operator combination");
  std::vector<CombinationNode::Term> parts;
  const BlockOperator* shape = nullptr;
  int peak = 0;
  for (const auto& [k, op] : terms) {
    if (!op.node_ || k.is_zero()) continue;
    if (shape && !(shape->shift_ == op.shift_)) throw Error("cannot add operators of different weight or energy");
    shape = &op;
    peak = std::max(peak, op.peak_);
    parts.emplace_back(k, op.node_);
  }
  if (!shape) return zero(terms.front().second.module_, terms.front().second.shift_);
  if (parts.size() == 1 && parts.front().first.is_one()) return *shape;
  auto node = std::make_shared<CombinationNode>(shape->module_, shape->shift_, std::move(parts));
  return {shape->module_, shape->shift_, peak, std::move(node)};
}

BlockOperator BlockOperator::scaled(const Rational& k) const { return combination({{k, *this}}); }

BlockOperator operator+(const BlockOperator& a, const BlockOperator& b) {
  return BlockOperator::combination({{Rational(1), a}, {Rational(1), b}});
}

BlockOperator operator-(const BlockOperator& a, const BlockOperator& b) {
  return BlockOperator::combination({{Rational(1), a}, {Rational(-1), b}});
}

BlockOperator operator*(const BlockOperator& a, const BlockOperator& b) {
  Shift s = add(a.shift_, b.shift_);
  if (!a.node_ || !b.node_) return BlockOperator::zero(a.module_, std::move(s));
  const int peak = std::max(b.peak_, b.shift_.energy + a.peak_);
  auto node = std::make_shared<ComposeNode>(a.node_, b.node_);
  return {a.module_, std::move(s), peak, std::move(node)};
}

BlockOperator commutator(const BlockOperator& a, const BlockOperator& b) { return a * b - b * a; }
BlockOperator anticommutator(const BlockOperator& a, const BlockOperator& b) { return a * b + b * a; }

}  // namespace yangeval

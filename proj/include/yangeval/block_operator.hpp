#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "yangeval/normal_expr.hpp"
#include "yangeval/truncated_module.hpp"

namespace yangeval {

using ModulePtr = std::shared_ptr<const TruncatedModule>;

/// Weight and energy change of a homogeneous operator.
struct Shift {
  std::vector<int> weight;
  int energy = 0;
  friend bool operator==(const Shift&, const Shift&) = default;
};

Shift shift_of(const LoopGenerator& g, int N);

/// Homogeneous linear operator on a truncated module, stored lazily as one
/// exact sparse matrix per source block. Blocks are computed on first use and
/// cached; copies share the cache.
///
/// Asking for a block whose image lies above the module depth throws
/// TruncationOverflow, including when only an intermediate factor of a
/// composite overflows.
class BlockOperator {
 public:
  struct Image {
    int target = -1;
    std::shared_ptr<const QSparse> matrix;
    bool is_zero() const noexcept { return target < 0; }
  };

  class Node;

  static BlockOperator zero(ModulePtr m, Shift shift);
  static BlockOperator identity(ModulePtr m);
  static BlockOperator loop(ModulePtr m, const LoopGenerator& g);
  /// Sum of products of loop generators; the rightmost factor acts first.
  static BlockOperator expression(ModulePtr m, const NormalExpr& x);

  const ModulePtr& module() const noexcept { return module_; }
  const Shift& shift() const noexcept { return shift_; }
  /// Largest energy rise of any intermediate vector above the input energy.
  int peak() const noexcept { return peak_; }

  const Image& on_block(int b) const;
  ModuleVector apply(const ModuleVector& v) const;

  BlockOperator scaled(const Rational& k) const;
  friend BlockOperator operator+(const BlockOperator& a, const BlockOperator& b);
  friend BlockOperator operator-(const BlockOperator& a, const BlockOperator& b);
  /// Composition: (a * b)(v) = a(b(v)).
  friend BlockOperator operator*(const BlockOperator& a, const BlockOperator& b);

 private:
  BlockOperator(ModulePtr m, Shift shift, int peak, std::shared_ptr<Node> node);
  static BlockOperator combination(const std::vector<std::pair<Rational, BlockOperator>>& terms);

  ModulePtr module_;
  Shift shift_;
  int peak_ = 0;
  std::shared_ptr<Node> node_;
};

BlockOperator commutator(const BlockOperator& a, const BlockOperator& b);
BlockOperator anticommutator(const BlockOperator& a, const BlockOperator& b);

/// Target block of a homogeneous map, or -1 if that block is absent.
/// Throws TruncationOverflow above the depth.
int shifted_block(const TruncatedModule& m, int b, const Shift& shift);

}  // namespace yangeval

#pragma once

#include <map>
#include <mutex>
#include <tuple>

#include "yangeval/block_operator.hpp"
#include "yangeval/evaluation.hpp"

namespace yangeval {

/// The affine Yangian acting on a truncated L(Lambda) through ev^+_alpha.
///
/// Degree <= 1 generators are images of the evaluation map with sums cut at
/// the module depth (exact there, since dropped terms end in a positive mode
/// above the depth). Higher modes come from the recursion
/// x^{+-}_{i,r+1} = +-1/2 [htilde_{i,1}, x^{+-}_{i,r}], h_{i,r} = [x^+_{i,r}, x^-_{i,0}].
class YangianRealization {
 public:
  /// Throws DomainError unless p is an EV_PLUS point with the module's N and
  /// level, and the module has depth >= 1.
  YangianRealization(ModulePtr m, ParamPoint p);

  const ModulePtr& module() const noexcept { return module_; }
  const ParamPoint& point() const noexcept { return point_; }

  /// Operator of a degree <= 1 generator.
  BlockOperator gen(const YGen& g) const;

  BlockOperator xplus(int i, int r) const;
  BlockOperator xminus(int i, int r) const;
  BlockOperator h(int i, int r) const;
  BlockOperator htilde(int i) const { return gen(YGen::htilde(i)); }

 private:
  enum class Derived { Xplus, Xminus, H };
  BlockOperator derived(Derived kind, int i, int r) const;

  ModulePtr module_;
  ParamPoint point_;
  mutable std::mutex mutex_;
  mutable std::map<YGen, BlockOperator> gens_;
  mutable std::map<std::tuple<Derived, int, int>, BlockOperator> derived_;
};

}  // namespace yangeval

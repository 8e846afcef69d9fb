#include "yangeval/realization.hpp"

#include "yangeval/errors.hpp"

namespace yangeval {

namespace {

/// Every term present at s_max = depth + 1 but not at s_max = depth must carry
/// more than `depth` units of positive modes, so it kills every in-depth vector.
void check_cut(const YGen& g, const ParamPoint& p, int depth, const NormalExpr& kept) {
  const NormalExpr dropped = ev_image(g, p, depth + 1) - kept;
  for (const auto& [m, k] : dropped.terms()) {
    int lowering = 0;
    for (const auto& f : m)
      if (f.degree() > 0) lowering += f.degree();
    if (lowering <= depth)
      throw Error("internal: truncated term of " + to_string(g) + " acts on the module: " + to_string(m));
  }
}

}  // namespace

YangianRealization::YangianRealization(ModulePtr m, ParamPoint p) : module_(std::move(m)), point_(std::move(p)) {
  if (point_.mode() != EvalMode::EV_PLUS) throw DomainError("module realizations use EV_PLUS parameter points");
  if (point_.N() != module_->N()) throw DomainError("parameter point and module disagree on N");
  if (point_.level() != module_->highest_weight().level)
    throw DomainError("parameter point and module disagree on the level");
  if (module_->depth() < 1) throw DomainError("Yangian realizations need depth >= 1");
}

BlockOperator YangianRealization::gen(const YGen& g) const {
  validate(g, module_->N());
  {
    std::lock_guard lock(mutex_);
    if (auto it = gens_.find(g); it != gens_.end()) return it->second;
  }
  const NormalExpr img = ev_image(g, point_, module_->depth());
  check_cut(g, point_, module_->depth(), img);
  BlockOperator op = BlockOperator::expression(module_, img);
  std::lock_guard lock(mutex_);
  return gens_.try_emplace(g, std::move(op)).first->second;
}

BlockOperator YangianRealization::xplus(int i, int r) const {
  return r <= 1 ? gen(YGen::xplus(i, r)) : derived(Derived::Xplus, i, r);
}

BlockOperator YangianRealization::xminus(int i, int r) const {
  return r <= 1 ? gen(YGen::xminus(i, r)) : derived(Derived::Xminus, i, r);
}

BlockOperator YangianRealization::h(int i, int r) const {
  return r <= 1 ? gen(YGen::h(i, r)) : derived(Derived::H, i, r);
}

BlockOperator YangianRealization::derived(Derived kind, int i, int r) const {
  if (i < 0 || i >= module_->N()) throw DomainError("node index out of range");
  const auto key = std::make_tuple(kind, i, r);
  {
    std::lock_guard lock(mutex_);
    if (auto it = derived_.find(key); it != derived_.end()) return it->second;
  }
  const Rational half(1, 2);
  BlockOperator op = [&] {
    switch (kind) {
      case Derived::Xplus:
        return commutator(htilde(i), xplus(i, r - 1)).scaled(half);
      case Derived::Xminus:
        return commutator(htilde(i), xminus(i, r - 1)).scaled(-half);
      case Derived::H:
        break;
    }
    return commutator(xplus(i, r), xminus(i, 0));
  }();
  std::lock_guard lock(mutex_);
  return derived_.try_emplace(key, std::move(op)).first->second;
}

}  // namespace yangeval

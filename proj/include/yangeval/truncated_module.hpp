#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "yangeval/linalg.hpp"
#include "yangeval/loop_algebra.hpp"

namespace yangeval {

/// Dominant integral highest weight of gl_N^: <E_ii, Lambda> = lambda_i, <c, Lambda> = K.
struct HighestWeight {
  std::vector<Rational> lambda;
  std::int64_t level = 1;

  int N() const noexcept { return static_cast<int>(lambda.size()); }

  /// Throws DomainError unless N >= 3, K >= 1, lambda_i - lambda_{i+1} in Z>=0
  /// and lambda_N - lambda_1 + K in Z>=0.
  void validate() const;

  /// <h_i, Lambda> for i in 0..N-1.
  std::int64_t h_pairing(int i) const;
};

/// A (weight, energy) block. The weight is stored as an integer offset from lambda.
struct BlockKey {
  int energy = 0;
  std::vector<int> weight;

  friend auto operator<=>(const BlockKey&, const BlockKey&) = default;
};

/// Vector of a truncated module, stored blockwise in the block bases.
struct ModuleVector {
  std::map<int, QVector> parts;

  bool is_zero() const;
  void add(int block, const QVector& v);
  ModuleVector& operator+=(const ModuleVector& rhs);
  ModuleVector& operator*=(const Rational& k);
  friend bool operator==(const ModuleVector& a, const ModuleVector& b);
};

struct CharacterEntry {
  std::vector<int> weight_offset;
  int energy = 0;
  int dim = 0;
  friend bool operator==(const CharacterEntry&, const CharacterEntry&) = default;
};

struct ModuleOptions {
  /// Reverse the PBW order of creation operators (changes the basis, not the module).
  bool reverse_pbw = false;
};

namespace detail {
class InducedModule;
}

/// The irreducible integrable module L(Lambda) of gl_N^ cut at energy <= depth.
///
/// L(Lambda) is realized as the quotient of the generalized Verma module
/// U(t^-1 gl_N[t^-1]) (x) V(lambda) by the radical of its contravariant form.
/// The finite gl_N module V(lambda) is itself the radical quotient of a gl_N
/// Verma module. Basis vectors of every block are images of PBW monomials
/// (the pivot columns of the block Gram matrix).
class TruncatedModule {
 public:
  static std::shared_ptr<const TruncatedModule> build(const HighestWeight& weight, int depth,
                                                      ModuleOptions options = {});
  ~TruncatedModule();
  TruncatedModule(const TruncatedModule&) = delete;
  TruncatedModule& operator=(const TruncatedModule&) = delete;

  const HighestWeight& highest_weight() const noexcept { return weight_; }
  int N() const noexcept { return weight_.N(); }
  int depth() const noexcept { return depth_; }

  int block_count() const noexcept { return static_cast<int>(keys_.size()); }
  const BlockKey& block_key(int b) const { return keys_.at(static_cast<std::size_t>(b)); }
  std::optional<int> find_block(const BlockKey& key) const;
  int block_dim(int b) const;
  /// Dimension of the same block in the generalized Verma module.
  int verma_dim(int b) const;
  int total_dim() const;
  /// Blocks in deterministic order (energy, then weight) with energy <= e.
  std::vector<int> blocks_up_to_energy(int e) const;
  int highest_block() const;

  /// Rational value of <E_kk, mu> on block b (k in 1..N).
  Rational weight_component(int b, int k) const;

  /// Contravariant form on block b in its basis (nondegenerate).
  const QMatrix& form(int b) const;
  /// Contravariant form on the generalized Verma block (may be singular).
  const QMatrix& verma_gram(int b) const;

  /// Matrix of a loop generator from block b to its target block.
  /// target < 0 means the generator maps block b to zero.
  /// Throws TruncationOverflow if the target energy exceeds the depth.
  struct Action {
    int target = -1;
    const QSparse* matrix = nullptr;
  };
  Action action(const LoopGenerator& g, int b) const;

  ModuleVector act(const LoopGenerator& g, const ModuleVector& v) const;
  ModuleVector act(const LoopElement& x, const ModuleVector& v) const;
  ModuleVector basis_vector(int b, int k) const;
  ModuleVector highest_vector() const { return basis_vector(highest_block(), 0); }
  Rational inner(const ModuleVector& u, const ModuleVector& v) const;

  std::vector<CharacterEntry> graded_character() const;

  /// PBW monomial whose image is basis vector k of block b, e.g. "E[2,1](-1) E[1,1](-1) v".
  std::string basis_label(int b, int k) const;

 private:
  TruncatedModule(HighestWeight weight, int depth, ModuleOptions options);
  void construct();

  HighestWeight weight_;
  int depth_;
  ModuleOptions options_;
  std::unique_ptr<detail::InducedModule> finite_;
  std::unique_ptr<detail::InducedModule> affine_;
  std::vector<BlockKey> keys_;
  std::map<BlockKey, int> index_;
  /// Block of the induced module underlying each module block.
  std::vector<int> source_;
  /// Finite word id behind each seed of the affine stage.
  std::vector<int> seed_word_;

  mutable std::mutex mutex_;
  mutable std::map<std::pair<LoopGenerator, int>, std::pair<int, std::unique_ptr<QSparse>>> actions_;
};

}  // namespace yangeval

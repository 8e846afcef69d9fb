#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "yangeval/linalg.hpp"
#include "yangeval/loop_algebra.hpp"
#include "yangeval/truncated_module.hpp"

namespace yangeval::detail {

/// Sparse coordinates over word ids, sorted by id.
using SparseVec = std::vector<std::pair<int, Rational>>;

enum class WordFate { Keep, Drop, Overflow };

/// The space an induced module is built upon.
struct SeedSpace {
  int count = 0;
  std::vector<std::vector<int>> weight;
  /// Contravariant form on seeds.
  QMatrix form;
  /// Action of non-creation generators on a seed, as seed coordinates.
  std::function<SparseVec(const LoopGenerator&, int)> action;
};

/// U(n) (x) seeds, where n is spanned by an ordered list of creation generators.
///
/// A word y_1 y_2 ... y_k u has nondecreasing creator ranks. Words whose
/// (weight, energy) is rejected by the fate callback are either dropped
/// (they lie in the radical) or signal a truncation overflow.
class InducedModule {
 public:
  struct Word {
    std::vector<int> gens;
    int seed = 0;
    friend auto operator<=>(const Word&, const Word&) = default;
  };

  struct Block {
    BlockKey key;
    std::vector<int> words;
    QMatrix gram;
    bool gram_ready = false;
    std::vector<int> pivots;
    /// Quotient map from word coordinates to the block basis (rank x words).
    QMatrix projection;
    QMatrix form;
  };

  using FateFn = std::function<WordFate(const std::vector<int>& weight, int energy)>;

  InducedModule(int N, std::int64_t level, std::vector<LoopGenerator> creators, SeedSpace seeds,
                FateFn fate);

  int word_count() const noexcept { return static_cast<int>(words_.size()); }
  const Word& word(int id) const { return words_.at(static_cast<std::size_t>(id)); }
  int word_block(int id) const { return word_block_.at(static_cast<std::size_t>(id)); }
  int word_position(int id) const { return word_pos_.at(static_cast<std::size_t>(id)); }
  const LoopGenerator& creator(int rank) const { return creators_.at(static_cast<std::size_t>(rank)); }
  const SeedSpace& seeds() const noexcept { return seeds_; }

  int block_count() const noexcept { return static_cast<int>(blocks_.size()); }
  const Block& block(int b) const { return blocks_.at(static_cast<std::size_t>(b)); }
  const std::map<BlockKey, int>& block_index() const noexcept { return block_index_; }

  /// g applied to a word, in word coordinates.
  const SparseVec& act(const LoopGenerator& g, int id);

  /// Computes Gram matrices and radical quotients of every block.
  void reduce_all();

  /// Image in the quotient basis of block b of a vector supported on block b.
  QVector project(int b, const SparseVec& v) const;

 private:
  void enumerate();
  int intern(Word w, int rest);
  std::vector<int> word_weight(const Word& w) const;
  int word_energy(const Word& w) const;
  SparseVec prepend(int rank, int id);
  const QMatrix& gram(int b);

  int n_;
  std::int64_t level_;
  std::vector<LoopGenerator> creators_;
  std::map<LoopGenerator, int> creator_rank_;
  SeedSpace seeds_;
  FateFn fate_;

  std::vector<Word> words_;
  std::vector<int> rest_;
  std::map<Word, int> word_id_;
  std::vector<int> word_block_;
  std::vector<int> word_pos_;
  std::vector<Block> blocks_;
  std::map<BlockKey, int> block_index_;
  std::map<std::pair<LoopGenerator, int>, SparseVec> memo_;
};

}  // namespace yangeval::detail

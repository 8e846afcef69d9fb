#include "induced_module.hpp"

#include <algorithm>

#include "yangeval/errors.hpp"

namespace yangeval::detail {

namespace {

void accumulate(std::map<int, Rational>& acc, int id, const Rational& k) {
  if (k.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(id, k);
  if (inserted) return;
  it->second += k;
  if (it->second.is_zero()) acc.erase(it);
}

SparseVec flatten(const std::map<int, Rational>& acc) { return {acc.begin(), acc.end()}; }

}  // namespace

InducedModule::InducedModule(int N, std::int64_t level, std::vector<LoopGenerator> creators,
                             SeedSpace seeds, FateFn fate)
    : n_(N), level_(level), creators_(std::move(creators)), seeds_(std::move(seeds)), fate_(std::move(fate)) {
  for (std::size_t r = 0; r < creators_.size(); ++r) creator_rank_.emplace(creators_[r], static_cast<int>(r));
  enumerate();
}

std::vector<int> InducedModule::word_weight(const Word& w) const {
  std::vector<int> wt = seeds_.weight.at(static_cast<std::size_t>(w.seed));
  for (int r : w.gens) {
    const auto& g = creators_[static_cast<std::size_t>(r)];
    wt[static_cast<std::size_t>(g.i - 1)] += 1;
    wt[static_cast<std::size_t>(g.j - 1)] -= 1;
  }
  return wt;
}

int InducedModule::word_energy(const Word& w) const {
  int e = 0;
  for (int r : w.gens) e -= creators_[static_cast<std::size_t>(r)].s;
  return e;
}

int InducedModule::intern(Word w, int rest) {
  BlockKey key{word_energy(w), word_weight(w)};
  const int id = static_cast<int>(words_.size());
  auto [bit, fresh] = block_index_.try_emplace(key, static_cast<int>(blocks_.size()));
  if (fresh) blocks_.push_back(Block{key, {}, {}, false, {}, {}, {}});
  Block& blk = blocks_[static_cast<std::size_t>(bit->second)];
  word_block_.push_back(bit->second);
  word_pos_.push_back(static_cast<int>(blk.words.size()));
  blk.words.push_back(id);
  word_id_.emplace(w, id);
  words_.push_back(std::move(w));
  rest_.push_back(rest);
  return id;
}

void InducedModule::enumerate() {
  for (int u = 0; u < seeds_.count; ++u) intern(Word{{}, u}, -1);
  // Breadth-first by word length; each new word prepends a creator whose rank
  // does not exceed the current first factor.
  std::size_t begin = 0;
  while (begin < words_.size()) {
    const std::size_t end = words_.size();
    for (std::size_t id = begin; id < end; ++id) {
      const Word base = words_[id];
      const int top = base.gens.empty() ? static_cast<int>(creators_.size()) - 1 : base.gens.front();
      for (int r = 0; r <= top; ++r) {
        Word w{{}, base.seed};
        w.gens.reserve(base.gens.size() + 1);
        w.gens.push_back(r);
        w.gens.insert(w.gens.end(), base.gens.begin(), base.gens.end());
        if (fate_(word_weight(w), word_energy(w)) != WordFate::Keep) continue;
        intern(std::move(w), static_cast<int>(id));
      }
    }
    begin = end;
  }
}

SparseVec InducedModule::prepend(int rank, int id) {
  Word w{{}, words_[static_cast<std::size_t>(id)].seed};
  const auto& gens = words_[static_cast<std::size_t>(id)].gens;
  w.gens.reserve(gens.size() + 1);
  w.gens.push_back(rank);
  w.gens.insert(w.gens.end(), gens.begin(), gens.end());
  switch (fate_(word_weight(w), word_energy(w))) {
    case WordFate::Drop:
      return {};
    case WordFate::Overflow:
      throw TruncationOverflow("result energy " + std::to_string(word_energy(w)) + " exceeds the module depth");
    case WordFate::Keep:
      break;
  }
  auto it = word_id_.find(w);
  if (it == word_id_.end()) throw Error("internal: admissible word missing from enumeration");
  return {{it->second, Rational(1)}};
}

const SparseVec& InducedModule::act(const LoopGenerator& g, int id) {
  const auto key = std::make_pair(g, id);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  SparseVec out;
  if (g.is_central()) {
    out = {{id, Rational(level_)}};
  } else {
    auto cr = creator_rank_.find(g);
    const int rank = cr == creator_rank_.end() ? -1 : cr->second;
    const std::vector<int> gens = words_[static_cast<std::size_t>(id)].gens;
    if (gens.empty()) {
      out = rank >= 0 ? prepend(rank, id) : seeds_.action(g, words_[static_cast<std::size_t>(id)].seed);
    } else if (rank >= 0 && rank <= gens.front()) {
      out = prepend(rank, id);
    } else {
      // g (y1 rest) = y1 (g rest) + [g, y1] rest
      const int rest = rest_[static_cast<std::size_t>(id)];
      const LoopGenerator y1 = creators_[static_cast<std::size_t>(gens.front())];
      std::map<int, Rational> acc;
      const SparseVec inner = act(g, rest);
      for (const auto& [n, k] : inner) {
        const SparseVec outer = act(y1, n);
        for (const auto& [m, v] : outer) accumulate(acc, m, k * v);
      }
      const LoopElement br = bracket(g, y1);
      for (const auto& [h, k] : br.terms()) {
        const SparseVec part = act(h, rest);
        for (const auto& [m, v] : part) accumulate(acc, m, k * v);
      }
      out = flatten(acc);
    }
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

const QMatrix& InducedModule::gram(int b) {
  Block& blk = blocks_[static_cast<std::size_t>(b)];
  if (blk.gram_ready) return blk.gram;
  const int n = static_cast<int>(blk.words.size());
  QMatrix G = QMatrix::Zero(n, n);
  for (int p = 0; p < n; ++p) {
    const int m = blocks_[static_cast<std::size_t>(b)].words[static_cast<std::size_t>(p)];
    const Word& wm = words_[static_cast<std::size_t>(m)];
    if (wm.gens.empty()) {
      for (int q = p; q < n; ++q) {
        const Word& wq = words_[static_cast<std::size_t>(blocks_[static_cast<std::size_t>(b)].words[static_cast<std::size_t>(q)])];
        if (!wq.gens.empty()) throw Error("internal: seed block contains a non-seed word");
        G(p, q) = seeds_.form(wm.seed, wq.seed);
        G(q, p) = G(p, q);
      }
      continue;
    }
    // <y1 rest, m'> = <rest, omega(y1) m'>
    const int rest = rest_[static_cast<std::size_t>(m)];
    const LoopGenerator dual = omega_U(creators_[static_cast<std::size_t>(wm.gens.front())]);
    const int rb = word_block_[static_cast<std::size_t>(rest)];
    const int rp = word_pos_[static_cast<std::size_t>(rest)];
    const QMatrix& lower = gram(rb);
    for (int q = p; q < n; ++q) {
      const int mq = blocks_[static_cast<std::size_t>(b)].words[static_cast<std::size_t>(q)];
      const SparseVec img = act(dual, mq);
      Rational sum;
      for (const auto& [w, k] : img) {
        if (word_block_[static_cast<std::size_t>(w)] != rb) throw Error("internal: grading violated in Gram recursion");
        sum += k * lower(rp, word_pos_[static_cast<std::size_t>(w)]);
      }
      G(p, q) = sum;
      G(q, p) = sum;
    }
  }
  Block& done = blocks_[static_cast<std::size_t>(b)];
  done.gram = std::move(G);
  done.gram_ready = true;
  return done.gram;
}

void InducedModule::reduce_all() {
  for (int b = 0; b < block_count(); ++b) {
    const QMatrix& G = gram(b);
    auto [r, pivots] = rref_fraction_free(G);
    Block& blk = blocks_[static_cast<std::size_t>(b)];
    const auto rank = static_cast<Eigen::Index>(pivots.size());
    blk.pivots.assign(pivots.begin(), pivots.end());
    blk.projection = r.topRows(rank);
    blk.form = QMatrix(rank, rank);
    for (Eigen::Index x = 0; x < rank; ++x)
      for (Eigen::Index y = 0; y < rank; ++y) blk.form(x, y) = G(pivots[static_cast<std::size_t>(x)], pivots[static_cast<std::size_t>(y)]);
  }
}

QVector InducedModule::project(int b, const SparseVec& v) const {
  const Block& blk = blocks_[static_cast<std::size_t>(b)];
  QVector out = QVector::Zero(blk.projection.rows());
  for (const auto& [w, k] : v) {
    if (word_block_[static_cast<std::size_t>(w)] != b) throw Error("internal: vector outside its block");
    const Eigen::Index col = word_pos_[static_cast<std::size_t>(w)];
    for (Eigen::Index r = 0; r < out.size(); ++r)
      if (!blk.projection(r, col).is_zero()) out(r) += k * blk.projection(r, col);
  }
  return out;
}

}  // namespace yangeval::detail

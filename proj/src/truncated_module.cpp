#include "yangeval/truncated_module.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "induced_module.hpp"
#include "yangeval/errors.hpp"

namespace yangeval {

namespace {

std::int64_t to_small_integer(const Rational& q, const char* what) {
  if (!q.is_integer()) throw DomainError(std::string(what) + " must be an integer");
  const mpz_class n = q.numerator();
  if (!n.fits_slong_p()) throw DomainError(std::string(what) + " is out of range");
  return n.get_si();
}

}  // namespace

void HighestWeight::validate() const {
  if (N() < 3) throw DomainError("highest weight needs N >= 3 components");
  if (level < 1) throw DomainError("level K must be at least 1");
  for (int i = 0; i < N(); ++i)
    if (h_pairing(i) < 0) throw DomainError("highest weight is not dominant at node " + std::to_string(i));
}

std::int64_t HighestWeight::h_pairing(int i) const {
  const auto& l = lambda;
  if (i == 0) return to_small_integer(l.back() - l.front() + Rational(level), "lambda_N - lambda_1 + K");
  if (i < 0 || i >= N()) throw DomainError("node index out of range");
  return to_small_integer(l[static_cast<std::size_t>(i - 1)] - l[static_cast<std::size_t>(i)],
                          "lambda_i - lambda_{i+1}");
}

bool ModuleVector::is_zero() const {
  return std::all_of(parts.begin(), parts.end(), [](const auto& p) { return is_zero_matrix(p.second); });
}

void ModuleVector::add(int block, const QVector& v) {
  auto [it, fresh] = parts.try_emplace(block, v);
  if (!fresh) it->second += v;
}

ModuleVector& ModuleVector::operator+=(const ModuleVector& rhs) {
  for (const auto& [b, v] : rhs.parts) add(b, v);
  return *this;
}

ModuleVector& ModuleVector::operator*=(const Rational& k) {
  for (auto& [b, v] : parts) v *= k;
  return *this;
}

bool operator==(const ModuleVector& a, const ModuleVector& b) {
  ModuleVector d = b;
  d *= Rational(-1);
  d += a;
  return d.is_zero();
}

TruncatedModule::TruncatedModule(HighestWeight weight, int depth, ModuleOptions options)
    : weight_(std::move(weight)), depth_(depth), options_(options) {}

TruncatedModule::~TruncatedModule() = default;

std::shared_ptr<const TruncatedModule> TruncatedModule::build(const HighestWeight& weight, int depth,
                                                              ModuleOptions options) {
  weight.validate();
  if (depth < 0) throw DomainError("depth must be non-negative");
  std::shared_ptr<TruncatedModule> m(new TruncatedModule(weight, depth, options));
  m->construct();
  return m;
}

void TruncatedModule::construct() {
  using detail::InducedModule;
  using detail::SeedSpace;
  using detail::SparseVec;
  using detail::WordFate;
  const int N = weight_.N();
  const auto& lambda = weight_.lambda;

  auto order = [this](std::vector<LoopGenerator> gens) {
    if (options_.reverse_pbw) std::reverse(gens.begin(), gens.end());
    return gens;
  };

  // Stage 1: V(lambda) as the radical quotient of the gl_N Verma module.
  std::vector<LoopGenerator> lowering;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j < i; ++j) lowering.push_back(LoopGenerator::unit(i, j, 0));

  SeedSpace top;
  top.count = 1;
  top.weight = {std::vector<int>(static_cast<std::size_t>(N), 0)};
  top.form = QMatrix::Constant(1, 1, Rational(1));
  top.action = [lambda](const LoopGenerator& g, int) -> SparseVec {
    if (g.s != 0) throw Error("internal: loop mode applied to a finite highest weight vector");
    if (g.i < g.j) return {};
    return {{0, lambda[static_cast<std::size_t>(g.i - 1)]}};
  };
  // Weights of V(lambda) are exactly those whose sorted form is dominated by lambda.
  auto dominated = [lambda](const std::vector<int>& offset, int) {
    std::vector<Rational> mu;
    for (std::size_t k = 0; k < lambda.size(); ++k) mu.push_back(lambda[k] + Rational(offset[k]));
    std::sort(mu.begin(), mu.end(), std::greater<>());
    Rational a, b;
    for (std::size_t k = 0; k < mu.size(); ++k) {
      a += mu[k];
      b += lambda[k];
      if (a > b) return WordFate::Drop;
    }
    return WordFate::Keep;
  };
  finite_ = std::make_unique<InducedModule>(N, weight_.level, order(lowering), std::move(top), dominated);
  finite_->reduce_all();

  // Stage 2: the generalized Verma module U(t^-1 gl_N[t^-1]) (x) V(lambda).
  SeedSpace seeds;
  std::vector<int> first_seed;
  for (int b = 0; b < finite_->block_count(); ++b) {
    const auto& blk = finite_->block(b);
    first_seed.push_back(seeds.count);
    for (auto p : blk.pivots) {
      seeds.weight.push_back(blk.key.weight);
      seed_word_.push_back(blk.words[static_cast<std::size_t>(p)]);
      ++seeds.count;
    }
  }
  seeds.form = QMatrix::Zero(seeds.count, seeds.count);
  for (int b = 0; b < finite_->block_count(); ++b) {
    const auto& f = finite_->block(b).form;
    seeds.form.block(first_seed[static_cast<std::size_t>(b)], first_seed[static_cast<std::size_t>(b)], f.rows(), f.cols()) = f;
  }
  InducedModule* fin = finite_.get();
  std::vector<int> seed_word = seed_word_;
  seeds.action = [fin, seed_word, first_seed](const LoopGenerator& g, int seed) -> SparseVec {
    if (g.s > 0) return {};
    if (g.s < 0) throw Error("internal: creation mode reached a seed");
    const int w = seed_word[static_cast<std::size_t>(seed)];
    BlockKey key = fin->block(fin->word_block(w)).key;
    key.weight[static_cast<std::size_t>(g.i - 1)] += 1;
    key.weight[static_cast<std::size_t>(g.j - 1)] -= 1;
    auto it = fin->block_index().find(key);
    if (it == fin->block_index().end()) return {};
    const SparseVec img = fin->act(g, w);
    const QVector coords = fin->project(it->second, img);
    SparseVec out;
    for (Eigen::Index r = 0; r < coords.size(); ++r)
      if (!coords(r).is_zero()) out.emplace_back(first_seed[static_cast<std::size_t>(it->second)] + static_cast<int>(r), coords(r));
    return out;
  };

  std::vector<LoopGenerator> loop_creators;
  for (int e = 1; e <= depth_; ++e)
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) loop_creators.push_back(LoopGenerator::unit(i, j, -e));
  const int depth = depth_;
  auto bounded = [depth](const std::vector<int>&, int energy) {
    return energy <= depth ? WordFate::Keep : WordFate::Overflow;
  };
  affine_ = std::make_unique<InducedModule>(N, weight_.level, order(loop_creators), std::move(seeds), bounded);
  affine_->reduce_all();

  for (const auto& [key, b] : affine_->block_index()) {
    if (affine_->block(b).pivots.empty()) continue;
    index_.emplace(key, static_cast<int>(keys_.size()));
    keys_.push_back(key);
    source_.push_back(b);
  }
}

std::optional<int> TruncatedModule::find_block(const BlockKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int TruncatedModule::block_dim(int b) const {
  return static_cast<int>(affine_->block(source_.at(static_cast<std::size_t>(b))).pivots.size());
}

int TruncatedModule::verma_dim(int b) const {
  return static_cast<int>(affine_->block(source_.at(static_cast<std::size_t>(b))).words.size());
}

int TruncatedModule::total_dim() const {
  int d = 0;
  for (int b = 0; b < block_count(); ++b) d += block_dim(b);
  return d;
}

std::vector<int> TruncatedModule::blocks_up_to_energy(int e) const {
  std::vector<int> out;
  for (int b = 0; b < block_count(); ++b)
    if (keys_[static_cast<std::size_t>(b)].energy <= e) out.push_back(b);
  return out;
}

int TruncatedModule::highest_block() const {
  return *find_block(BlockKey{0, std::vector<int>(static_cast<std::size_t>(N()), 0)});
}

Rational TruncatedModule::weight_component(int b, int k) const {
  return weight_.lambda.at(static_cast<std::size_t>(k - 1)) + Rational(block_key(b).weight.at(static_cast<std::size_t>(k - 1)));
}

const QMatrix& TruncatedModule::form(int b) const { return affine_->block(source_.at(static_cast<std::size_t>(b))).form; }

const QMatrix& TruncatedModule::verma_gram(int b) const {
  return affine_->block(source_.at(static_cast<std::size_t>(b))).gram;
}

TruncatedModule::Action TruncatedModule::action(const LoopGenerator& g, int b) const {
  const BlockKey& key = block_key(b);
  BlockKey target = key;
  if (!g.is_central()) {
    target.energy -= g.s;
    target.weight[static_cast<std::size_t>(g.i - 1)] += 1;
    target.weight[static_cast<std::size_t>(g.j - 1)] -= 1;
  }
  if (target.energy > depth_)
    throw TruncationOverflow(to_string(g) + " maps energy " + std::to_string(key.energy) + " beyond depth " +
                             std::to_string(depth_));
  auto tb = find_block(target);
  if (!tb) return {};

  std::lock_guard lock(mutex_);
  const auto cache_key = std::make_pair(g, b);
  if (auto it = actions_.find(cache_key); it != actions_.end())
    return {it->second.first, it->second.second.get()};

  const int rows = block_dim(*tb);
  const int cols = block_dim(b);
  auto mat = std::make_unique<QSparse>(rows, cols);
  std::vector<Eigen::Triplet<Rational>> trips;
  if (g.is_central() || (g.s == 0 && g.i == g.j)) {
    const Rational k = g.is_central() ? Rational(weight_.level) : weight_component(b, g.i);
    if (!k.is_zero())
      for (int c = 0; c < cols; ++c) trips.emplace_back(c, c, k);
  } else {
    const auto& src = affine_->block(source_[static_cast<std::size_t>(b)]);
    const int dst = source_[static_cast<std::size_t>(*tb)];
    for (int c = 0; c < cols; ++c) {
      const int w = src.words[static_cast<std::size_t>(src.pivots[static_cast<std::size_t>(c)])];
      const detail::SparseVec img = affine_->act(g, w);
      const QVector coords = affine_->project(dst, img);
      for (int r = 0; r < rows; ++r)
        if (!coords(r).is_zero()) trips.emplace_back(r, c, coords(r));
    }
  }
  mat->setFromTriplets(trips.begin(), trips.end());
  auto& slot = actions_[cache_key];
  slot = {*tb, std::move(mat)};
  return {slot.first, slot.second.get()};
}

ModuleVector TruncatedModule::act(const LoopGenerator& g, const ModuleVector& v) const {
  ModuleVector out;
  for (const auto& [b, x] : v.parts) {
    if (is_zero_matrix(x)) continue;
    const Action a = action(g, b);
    if (a.target < 0) continue;
    QVector y = *a.matrix * x;
    out.add(a.target, y);
  }
  return out;
}

ModuleVector TruncatedModule::act(const LoopElement& x, const ModuleVector& v) const {
  ModuleVector out;
  for (const auto& [g, k] : x.terms()) {
    ModuleVector part = act(g, v);
    part *= k;
    out += part;
  }
  return out;
}

ModuleVector TruncatedModule::basis_vector(int b, int k) const {
  ModuleVector v;
  QVector x = QVector::Zero(block_dim(b));
  x(k) = Rational(1);
  v.parts.emplace(b, std::move(x));
  return v;
}

Rational TruncatedModule::inner(const ModuleVector& u, const ModuleVector& v) const {
  Rational sum;
  for (const auto& [b, x] : u.parts) {
    auto it = v.parts.find(b);
    if (it == v.parts.end()) continue;
    const QMatrix& F = form(b);
    for (Eigen::Index r = 0; r < x.size(); ++r) {
      if (x(r).is_zero()) continue;
      for (Eigen::Index c = 0; c < it->second.size(); ++c)
        if (!it->second(c).is_zero()) sum += x(r) * F(r, c) * it->second(c);
    }
  }
  return sum;
}

std::vector<CharacterEntry> TruncatedModule::graded_character() const {
  std::vector<CharacterEntry> out;
  for (int b = 0; b < block_count(); ++b)
    out.push_back({keys_[static_cast<std::size_t>(b)].weight, keys_[static_cast<std::size_t>(b)].energy, block_dim(b)});
  return out;
}

std::string TruncatedModule::basis_label(int b, int k) const {
  const auto& blk = affine_->block(source_.at(static_cast<std::size_t>(b)));
  const auto& w = affine_->word(blk.words[static_cast<std::size_t>(blk.pivots.at(static_cast<std::size_t>(k)))]);
  const auto& fw = finite_->word(seed_word_[static_cast<std::size_t>(w.seed)]);
  std::ostringstream os;
  for (int r : w.gens) os << to_string(affine_->creator(r)) << ' ';
  for (int r : fw.gens) os << to_string(finite_->creator(r)) << ' ';
  os << 'v';
  return os.str();
}

}  // namespace yangeval

#include <random>

#include "doctest.h"
#include "yangeval/errors.hpp"
#include "yangeval/truncated_module.hpp"

using namespace yangeval;

namespace {

HighestWeight hw(std::vector<int> lambda, std::int64_t K) {
  HighestWeight w;
  for (int l : lambda) w.lambda.emplace_back(l);
  w.level = K;
  return w;
}

std::vector<int> zero_offset(int N) { return std::vector<int>(static_cast<std::size_t>(N), 0); }

/// Random basis vector with energy at most `max_energy`.
ModuleVector random_basis_vector(const TruncatedModule& m, int max_energy, std::mt19937_64& rng) {
  auto blocks = m.blocks_up_to_energy(max_energy);
  std::uniform_int_distribution<std::size_t> pick(0, blocks.size() - 1);
  const int b = blocks[pick(rng)];
  std::uniform_int_distribution<int> k(0, m.block_dim(b) - 1);
  return m.basis_vector(b, k(rng));
}

LoopGenerator random_mode(std::mt19937_64& rng, int N, int lo, int hi) {
  std::uniform_int_distribution<int> idx(1, N);
  std::uniform_int_distribution<int> deg(lo, hi);
  return LoopGenerator::unit(idx(rng), idx(rng), deg(rng));
}

int energy_of(const TruncatedModule& m, const ModuleVector& v) {
  int e = 0;
  for (const auto& [b, x] : v.parts) e = std::max(e, m.block_key(b).energy);
  return e;
}

}  // namespace

TEST_CASE("highest weight validation") {
  CHECK_NOTHROW(hw({1, 0, 0}, 2).validate());
  CHECK_THROWS_AS(hw({0, 1, 0}, 1).validate(), DomainError);
  CHECK_THROWS_AS(hw({3, 0, 0}, 2).validate(), DomainError);
  CHECK_THROWS_AS(hw({0, 0}, 1).validate(), DomainError);
  CHECK_THROWS_AS(hw({0, 0, 0}, 0).validate(), DomainError);
  HighestWeight half;
  half.lambda = {Rational(1, 2), Rational(1, 2), Rational(-1, 2)};
  half.level = 1;
  CHECK_NOTHROW(half.validate());
  CHECK(half.h_pairing(0) == 0);
  CHECK(half.h_pairing(2) == 1);
  CHECK_THROWS_AS(TruncatedModule::build(hw({1, 0, 0}, 2), -1), DomainError);
}

TEST_CASE("depth 0 of the vacuum module") {
  auto m = TruncatedModule::build(hw({0, 0, 0}, 1), 0);
  CHECK(m->block_count() == 1);
  CHECK(m->block_dim(m->highest_block()) == 1);
  CHECK(m->form(m->highest_block()) == QMatrix::Constant(1, 1, Rational(1)));
  CHECK(m->graded_character() == std::vector<CharacterEntry>{{zero_offset(3), 0, 1}});
}

TEST_CASE("energy one, weight Lambda of the vacuum module") {
  auto m = TruncatedModule::build(hw({0, 0, 0}, 1), 1);
  auto b = m->find_block({1, zero_offset(3)});
  REQUIRE(b);
  CHECK(m->verma_dim(*b) == 3);
  CHECK(m->block_dim(*b) == 3);
  // The three basis vectors are E[k,k](-1) v with Gram matrix K * identity.
  CHECK(m->form(*b) == QMatrix::Identity(3, 3));
  for (int k = 0; k < 3; ++k) CHECK(m->basis_label(*b, k).find("(-1)") != std::string::npos);
}

TEST_CASE("highest weight vector") {
  const int N = 3;
  auto m = TruncatedModule::build(hw({1, 0, 0}, 2), 2);
  const ModuleVector v = m->highest_vector();
  for (int i = 0; i < N; ++i) CHECK(m->act(chevalley(i, ChevalleyPart::Plus, N), v).is_zero());
  for (int k = 1; k <= N; ++k) {
    ModuleVector expect = v;
    expect *= m->highest_weight().lambda[static_cast<std::size_t>(k - 1)];
    CHECK(m->act(LoopGenerator::unit(k, k, 0), v) == expect);
  }
  CHECK(m->act(chevalley(0, ChevalleyPart::Cartan, N), v) == v);
  ModuleVector twice = v;
  twice *= Rational(2);
  CHECK(m->act(LoopGenerator::central(), v) == twice);
  // Positive modes kill the highest weight vector.
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) CHECK(m->act(LoopGenerator::unit(i, j, 1), v).is_zero());
}

TEST_CASE("norm of x_i^- v equals <h_i, Lambda>") {
  const int N = 3;
  for (auto [lambda, K] : {std::pair{std::vector<int>{1, 0, 0}, 2}, std::pair{std::vector<int>{2, 1, 0}, 3},
                           std::pair{std::vector<int>{0, 0, 0}, 1}}) {
    auto m = TruncatedModule::build(hw(lambda, K), 2);
    const ModuleVector v = m->highest_vector();
    for (int i = 0; i < N; ++i) {
      const ModuleVector u = m->act(chevalley(i, ChevalleyPart::Minus, N), v);
      CHECK(m->inner(u, u) == Rational(m->highest_weight().h_pairing(i)));
    }
  }
}

TEST_CASE("null vectors at vanishing pairings") {
  // <h_1, Lambda> = 0 for lambda = (0,0,0): x_1^- v lies in the radical.
  auto m = TruncatedModule::build(hw({0, 0, 0}, 2), 1);
  const ModuleVector u = m->act(chevalley(1, ChevalleyPart::Minus, 3), m->highest_vector());
  CHECK(u.is_zero());
  CHECK_FALSE(m->find_block({0, {-1, 1, 0}}));

  // <h_0, Lambda> = 0 for lambda = (1,0,0), K = 1: the Verma block survives but its Gram is singular.
  auto n = TruncatedModule::build(hw({1, 0, 0}, 1), 1);
  const ModuleVector w = n->act(chevalley(0, ChevalleyPart::Minus, 3), n->highest_vector());
  CHECK(w.is_zero());
  bool found_singular = false;
  for (int b = 0; b < n->block_count(); ++b) {
    const auto& G = n->verma_gram(b);
    CHECK(n->block_dim(b) == exact_rank(G));
    CHECK(n->block_dim(b) <= n->verma_dim(b));
    if (n->block_dim(b) < n->verma_dim(b)) found_singular = true;
    CHECK(exact_rank(n->form(b)) == n->block_dim(b));
  }
  CHECK(found_singular);
  // The energy-1 block of weight e_1 - e_3 + Lambda contains E[1,3](-1) v, which is null here.
  auto b = n->find_block({1, {1, 0, -1}});
  if (b) CHECK(n->block_dim(*b) < n->verma_dim(*b));
}

TEST_CASE("weight additivity") {
  const int N = 3;
  auto m = TruncatedModule::build(hw({1, 0, 0}, 2), 3);
  for (int b = 0; b < m->block_count(); ++b)
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j)
        for (int s = -1; s <= 2; ++s) {
          const auto g = LoopGenerator::unit(i, j, s);
          if (m->block_key(b).energy - s > m->depth()) {
            CHECK_THROWS_AS(m->action(g, b), TruncationOverflow);
            continue;
          }
          const auto a = m->action(g, b);
          if (a.target < 0) continue;
          BlockKey expect = m->block_key(b);
          expect.energy -= s;
          expect.weight[static_cast<std::size_t>(i - 1)] += 1;
          expect.weight[static_cast<std::size_t>(j - 1)] -= 1;
          CHECK(m->block_key(a.target) == expect);
          CHECK(a.matrix->rows() == m->block_dim(a.target));
          CHECK(a.matrix->cols() == m->block_dim(b));
        }
}

TEST_CASE("contravariance of the form") {
  const int N = 3;
  auto m = TruncatedModule::build(hw({1, 0, 0}, 2), 3);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto g = random_mode(rng, N, -1, 1);
    const int headroom = std::max(0, -g.s);
    const ModuleVector u = random_basis_vector(*m, m->depth() - headroom, rng);
    const ModuleVector v = random_basis_vector(*m, m->depth() - std::max(0, g.s), rng);
    CHECK(m->inner(m->act(g, u), v) == m->inner(u, m->act(omega_U(g), v)));
  }
}

TEST_CASE("integrability of the highest weight vector") {
  const int N = 3;
  for (auto [lambda, K] : {std::pair{std::vector<int>{1, 0, 0}, 2}, std::pair{std::vector<int>{0, 0, 0}, 1},
                           std::pair{std::vector<int>{1, 1, 0}, 1}}) {
    auto m = TruncatedModule::build(hw(lambda, K), 3);
    for (int i = 0; i < N; ++i) {
      const auto k = m->highest_weight().h_pairing(i);
      const LoopElement f = chevalley(i, ChevalleyPart::Minus, N);
      ModuleVector v = m->highest_vector();
      for (std::int64_t p = 0; p < k; ++p) v = m->act(f, v);
      CHECK_FALSE(v.is_zero());
      if (i == 0 && k + 1 > m->depth()) continue;
      CHECK(m->act(f, v).is_zero());
    }
  }
}

TEST_CASE("bracket fidelity") {
  const int N = 3;
  auto m = TruncatedModule::build(hw({1, 0, 0}, 2), 3);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 150; ++t) {
    const auto a = random_mode(rng, N, -1, 2);
    const auto b = random_mode(rng, N, -1, 2);
    const ModuleVector v = random_basis_vector(*m, m->depth() - 2, rng);
    const ModuleVector lhs = m->act(a, m->act(b, v));
    ModuleVector rhs = m->act(b, m->act(a, v));
    rhs *= Rational(-1);
    rhs += lhs;
    CHECK(rhs == m->act(bracket(a, b), v));
  }
}

TEST_CASE("identity at mode zero acts by the sum of lambda") {
  auto m = TruncatedModule::build(hw({2, 1, 0}, 2), 2);
  const LoopElement one = LoopElement::identity(3, 0);
  for (int b = 0; b < m->block_count(); ++b)
    for (int k = 0; k < m->block_dim(b); ++k) {
      ModuleVector v = m->basis_vector(b, k);
      ModuleVector expect = v;
      expect *= Rational(3);
      CHECK(m->act(one, v) == expect);
    }
}

TEST_CASE("character does not depend on the PBW order") {
  for (auto [lambda, K] : {std::pair{std::vector<int>{1, 0, 0}, 2}, std::pair{std::vector<int>{0, 0, 0}, 1}}) {
    auto a = TruncatedModule::build(hw(lambda, K), 3);
    auto b = TruncatedModule::build(hw(lambda, K), 3, ModuleOptions{true});
    CHECK(a->graded_character() == b->graded_character());
  }
}

TEST_CASE("energy bookkeeping of vectors") {
  auto m = TruncatedModule::build(hw({1, 0, 0}, 2), 2);
  ModuleVector v = m->highest_vector();
  v = m->act(LoopGenerator::unit(2, 1, -1), v);
  CHECK(energy_of(*m, v) == 1);
  v = m->act(LoopGenerator::unit(1, 1, -1), v);
  CHECK(energy_of(*m, v) == 2);
  CHECK_THROWS_AS(m->act(LoopGenerator::unit(1, 1, -1), v), TruncationOverflow);
}

#include <random>

#include "doctest.h"
#include "yangeval/evaluation.hpp"

using namespace yangeval;

namespace {

using G = LoopGenerator;
constexpr PbwOrder UF = PbwOrder::UpperFirst;
constexpr PbwOrder LF = PbwOrder::LowerFirst;

NormalExpr W(std::initializer_list<G> gens, PbwOrder order, Rational k = Rational(1)) {
  return NormalExpr::word(Monomial(gens), k, order);
}

NormalExpr random_expr(std::mt19937_64& rng, PbwOrder order) {
  std::uniform_int_distribution<int> idx(1, 3);
  std::uniform_int_distribution<int> deg(-2, 2);
  std::uniform_int_distribution<int> len(0, 2);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> nterms(1, 2);
  NormalExpr x(order);
  for (int t = nterms(rng); t > 0; --t) {
    Monomial m;
    for (int l = len(rng); l > 0; --l) {
      if (coef(rng) == 3) {
        m.push_back(G::central());
      } else {
        m.push_back(G::unit(idx(rng), idx(rng), deg(rng)));
      }
    }
    x.add_word(m, Rational(coef(rng)));
  }
  return x;
}

}  // namespace

TEST_CASE("straightening a single swap") {
  auto x = W({G::unit(2, 1, 0), G::unit(1, 2, 0)}, UF);
  auto expected = W({G::unit(1, 2, 0), G::unit(2, 1, 0)}, UF) + W({G::unit(2, 2, 0)}, UF) -
                  W({G::unit(1, 1, 0)}, UF);
  CHECK(x == expected);
  CHECK(x.size() == 3);
  CHECK(x.coeff({G::unit(1, 2, 0), G::unit(2, 1, 0)}) == Rational(1));
  for (const auto& [m, k] : x.terms()) CHECK(is_normal(m, UF));
}

TEST_CASE("trivial products") {
  auto x = W({G::unit(1, 2, 0)}, LF);
  CHECK(x * NormalExpr::scalar(Rational(1), LF) == x);
  CHECK((x * x).terms().size() == 1);
  CHECK((x * x).coeff({G::unit(1, 2, 0), G::unit(1, 2, 0)}) == Rational(1));
}

TEST_CASE("normal forms in both orders agree as algebra elements") {
  auto a = W({G::unit(1, 3, 1), G::unit(3, 1, -1)}, UF);
  auto b = a.reordered(LF).reordered(UF);
  CHECK(a == b);
  auto lf = a.reordered(LF);
  for (const auto& [m, k] : lf.terms()) CHECK(is_normal(m, LF));
  // E13(1) E31(-1) = E31(-1) E13(1) + E11(0) - E33(0) + c
  auto expected = W({G::unit(3, 1, -1), G::unit(1, 3, 1)}, LF) + W({G::unit(1, 1, 0)}, LF) -
                  W({G::unit(3, 3, 0)}, LF) + W({G::central()}, LF);
  CHECK(lf == expected);
}

TEST_CASE("anti-automorphisms") {
  auto x = W({G::unit(1, 2, 0), G::unit(2, 3, 1)}, UF);
  CHECK(apply_anti(x, AntiMap::OmegaU) == W({G::unit(3, 2, -1), G::unit(2, 1, 0)}, UF));
  auto mu = apply_anti(x, AntiMap::MuU);
  CHECK(mu.order() == LF);
  CHECK(mu == W({G::unit(2, 3, 1), G::unit(1, 2, 0)}, LF));
  CHECK(apply_anti(NormalExpr::generator(G::central(), UF), AntiMap::MuU) ==
        NormalExpr::scalar(Rational(-1), LF) * NormalExpr::generator(G::central(), LF));

  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    auto a = random_expr(rng, UF);
    auto b = random_expr(rng, UF);
    CHECK(apply_anti(apply_anti(a, AntiMap::OmegaU), AntiMap::OmegaU) == a);
    CHECK(apply_anti(a * b, AntiMap::OmegaU) == apply_anti(b, AntiMap::OmegaU) * apply_anti(a, AntiMap::OmegaU));
    CHECK(apply_anti(a * b, AntiMap::MuU) == apply_anti(b, AntiMap::MuU) * apply_anti(a, AntiMap::MuU));
  }
}

TEST_CASE("rho_U is multiplicative on expressions") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 60; ++t) {
    auto a = random_expr(rng, UF);
    auto b = random_expr(rng, UF);
    CHECK(apply_rho(a * b, 3) == apply_rho(a, 3) * apply_rho(b, 3));
  }
}

TEST_CASE("multiplication is associative") {
  std::mt19937_64 rng(29);
  for (auto order : {UF, LF})
    for (int t = 0; t < 60; ++t) {
      auto a = random_expr(rng, order);
      auto b = random_expr(rng, order);
      auto d = random_expr(rng, order);
      CHECK((a * b) * d == a * (b * d));
    }
}

TEST_CASE("binding the central element") {
  auto x = W({G::central(), G::unit(1, 2, 0)}, UF, Rational(3)) + W({G::central(), G::central()}, UF);
  auto b = bind_central(x, Rational(2));
  CHECK(b == W({G::unit(1, 2, 0)}, UF, Rational(6)) + NormalExpr::scalar(Rational(4), UF));
}

TEST_CASE("dump format") {
  auto x = W({G::unit(1, 1, 0), G::unit(1, 2, 0)}, LF, Rational(-3, 4));
  CHECK(x.dump() == "-3/4 * E[1,1](0) E[1,2](0)\n");
}

TEST_CASE("abcd sums") {
  auto s = abcd(1, 3, 0);
  CHECK(s.A == W({G::unit(1, 1, 0), G::unit(1, 1, 0)}, UF));
  CHECK(s.C == W({G::unit(1, 2, 0), G::unit(2, 1, 0)}, UF));
  CHECK(abcd(2, 3, -1).B.is_zero());
  CHECK_THROWS_AS(abcd(0, 3, 1), DomainError);
  CHECK_THROWS_AS(abcd(3, 3, 1), DomainError);
}

#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "oracles/character_oracle.hpp"
#include "yangeval/truncated_module.hpp"

using namespace yangeval;

namespace {

HighestWeight hw(std::vector<int> lambda, std::int64_t K) {
  HighestWeight w;
  for (int l : lambda) w.lambda.emplace_back(l);
  w.level = K;
  return w;
}

oracle::Character module_character(const TruncatedModule& m) {
  oracle::Character out;
  for (const auto& e : m.graded_character()) out[{e.weight_offset, e.energy}] = e.dim;
  return out;
}

nlohmann::json load_golden(const std::string& name) {
  std::ifstream in(std::string(YANGEVAL_GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("Weyl dimension oracle") {
  auto dim = [](std::vector<int> l) {
    std::vector<Rational> q(l.begin(), l.end());
    return oracle::weyl_dimension(q);
  };
  CHECK(dim({0, 0, 0}) == 1);
  CHECK(dim({1, 0, 0}) == 3);
  CHECK(dim({2, 1, 0}) == 8);
  CHECK(dim({2, 0, 0}) == 6);
  CHECK(dim({1, 1, 0, 0}) == 6);
}

TEST_CASE("Freudenthal oracle sanity") {
  // Level-1 vacuum of gl_3^: energy 1 carries the adjoint of sl_3 plus one Heisenberg mode.
  auto c = oracle::gl_character({Rational(0), Rational(0), Rational(0)}, 1, 1);
  std::int64_t e1 = 0;
  for (const auto& [key, m] : c)
    if (key.second == 1) e1 += m;
  CHECK(e1 == 9);
  CHECK(c.at({{0, 0, 0}, 1}) == 3);
}

TEST_CASE("truncated characters agree with the Freudenthal oracle") {
  for (auto [lambda, K, D] : {std::tuple{std::vector<int>{1, 0, 0}, 2, 3}, std::tuple{std::vector<int>{0, 0, 0}, 1, 3},
                              std::tuple{std::vector<int>{2, 1, 0}, 3, 2}, std::tuple{std::vector<int>{1, 0, 0, 0}, 1, 3},
                              std::tuple{std::vector<int>{1, 1, 0}, 1, 3}}) {
    CAPTURE(K);
    CAPTURE(D);
    const HighestWeight w = hw(lambda, K);
    auto m = TruncatedModule::build(w, D);
    CHECK(module_character(*m) == oracle::gl_character(w.lambda, K, D));
    int energy0 = 0;
    for (int b : m->blocks_up_to_energy(0)) energy0 += m->block_dim(b);
    CHECK(energy0 == oracle::weyl_dimension(w.lambda));
  }
}

TEST_CASE("rational highest weight") {
  HighestWeight w;
  w.lambda = {Rational(1, 3), Rational(-2, 3), Rational(-2, 3)};
  w.level = 1;
  auto m = TruncatedModule::build(w, 2);
  CHECK(module_character(*m) == oracle::gl_character(w.lambda, 1, 2));
}

TEST_CASE("golden character files") {
  for (const char* name : {"char_n3_k2_l100_d3.json", "char_n3_k1_l000_d3.json", "char_n4_k1_l1000_d3.json",
                           "char_n3_k3_l210_d2.json"}) {
    CAPTURE(name);
    const auto g = load_golden(name);
    const HighestWeight w = hw(g.at("lambda").get<std::vector<int>>(), g.at("K").get<std::int64_t>());
    auto m = TruncatedModule::build(w, g.at("depth").get<int>());
    std::vector<CharacterEntry> expect;
    for (const auto& e : g.at("character"))
      expect.push_back({e.at("weight_offset").get<std::vector<int>>(), e.at("energy").get<int>(), e.at("dim").get<int>()});
    CHECK(m->graded_character() == expect);
  }
}

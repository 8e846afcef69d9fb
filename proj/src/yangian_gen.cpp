#include "yangeval/yangian_gen.hpp"

#include "yangeval/loop_algebra.hpp"

namespace yangeval {

std::string to_string(const YGen& g) {
  std::string name;
  switch (g.kind) {
    case YGen::Kind::Xplus:
      name = "x+";
      break;
    case YGen::Kind::Xminus:
      name = "x-";
      break;
    case YGen::Kind::H:
      name = "h";
      break;
    case YGen::Kind::Htilde:
      name = "ht";
      break;
  }
  return name + "[" + std::to_string(g.i) + "," + std::to_string(g.r) + "]";
}

void validate(const YGen& g, int N) {
  if (g.i < 0 || g.i >= N) throw DomainError("Yangian node index out of range: " + to_string(g));
  if (g.r < 0 || g.r > 1) throw DomainError("only degree 0 and 1 generators are primitive: " + to_string(g));
  if (g.kind == YGen::Kind::Htilde && g.r != 1) throw DomainError("htilde exists only in degree 1");
}

std::vector<YGen> all_generators(int N) {
  std::vector<YGen> out;
  for (int r = 0; r <= 1; ++r)
    for (int i = 0; i < N; ++i) {
      out.push_back(YGen::xplus(i, r));
      out.push_back(YGen::xminus(i, r));
      out.push_back(YGen::h(i, r));
    }
  for (int i = 0; i < N; ++i) out.push_back(YGen::htilde(i));
  return out;
}

namespace {

YGen degree_zero(const YGen& g, int i) {
  const auto kind = g.kind == YGen::Kind::Htilde ? YGen::Kind::H : g.kind;
  return {kind, i, 0};
}

}  // namespace

YComb tau_alpha(const YGen& g, const Rational& a) {
  YComb out{{g, Rational(1)}};
  if (g.r == 1 && !a.is_zero()) out[degree_zero(g, g.i)] += a;
  return out;
}

YComb mu(const YGen& g) { return {{g, Rational(-1)}}; }

YComb rho(const YGen& g, int N, const Rational& eps2) {
  const int i = (g.i + N - 1) % N;
  YComb out{{YGen{g.kind, i, g.r}, Rational(1)}};
  if (g.r == 1 && !eps2.is_zero()) out[degree_zero(g, i)] += eps2;
  return out;
}

}  // namespace yangeval

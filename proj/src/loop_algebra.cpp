#include "yangeval/loop_algebra.hpp"

#include <sstream>

namespace yangeval {

int wrap_index(int i, int N) {
  int r = (i - 1) % N;
  if (r < 0) r += N;
  return r + 1;
}

std::string to_string(const LoopGenerator& g) {
  if (g.is_central()) return "c";
  std::ostringstream os;
  os << "E[" << g.i << ',' << g.j << "](" << g.s << ')';
  return os.str();
}

TriangularPart triangular_part(const LoopGenerator& g) {
  if (g.is_central()) return TriangularPart::Cartan;
  if (g.s > 0 || (g.s == 0 && g.i < g.j)) return TriangularPart::Upper;
  if (g.s < 0 || (g.s == 0 && g.i > g.j)) return TriangularPart::Lower;
  return TriangularPart::Cartan;
}

WeightEnergy weight_and_energy(const LoopGenerator& g, int N) {
  WeightEnergy we{std::vector<int>(static_cast<std::size_t>(N), 0), 0};
  if (g.is_central()) return we;
  we.weight[static_cast<std::size_t>(g.i - 1)] += 1;
  we.weight[static_cast<std::size_t>(g.j - 1)] -= 1;
  we.energy = -g.s;
  return we;
}

LoopElement::LoopElement(const LoopGenerator& g, Rational coeff) { add(g, coeff); }

LoopElement LoopElement::identity(int N, int s) {
  LoopElement x;
  for (int k = 1; k <= N; ++k) x.add(LoopGenerator::unit(k, k, s), Rational(1));
  return x;
}

Rational LoopElement::coeff(const LoopGenerator& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LoopElement::add(const LoopGenerator& g, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(g, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

LoopElement& LoopElement::operator+=(const LoopElement& rhs) {
  for (const auto& [g, k] : rhs.terms_) add(g, k);
  return *this;
}

LoopElement& LoopElement::operator-=(const LoopElement& rhs) {
  for (const auto& [g, k] : rhs.terms_) add(g, -k);
  return *this;
}

LoopElement& LoopElement::operator*=(const Rational& k) {
  if (k.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [g, v] : terms_) v *= k;
  return *this;
}

std::string LoopElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, k] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << k << " * " << to_string(g);
  }
  return os.str();
}

LoopElement bracket(const LoopGenerator& a, const LoopGenerator& b) {
  LoopElement out;
  if (a.is_central() || b.is_central()) return out;
  const int deg = a.s + b.s;
  if (a.j == b.i) out.add(LoopGenerator::unit(a.i, b.j, deg), Rational(1));
  if (b.j == a.i) out.add(LoopGenerator::unit(b.i, a.j, deg), Rational(-1));
  if (deg == 0 && a.s != 0 && a.j == b.i && a.i == b.j) out.add(LoopGenerator::central(), Rational(a.s));
  return out;
}

LoopElement bracket(const LoopElement& a, const LoopElement& b) {
  LoopElement out;
  for (const auto& [ga, ka] : a.terms())
    for (const auto& [gb, kb] : b.terms()) {
      const Rational k = ka * kb;
      const LoopElement term = bracket(ga, gb);
      for (const auto& [g, v] : term.terms()) out.add(g, k * v);
    }
  return out;
}

LoopElement chevalley(int i, ChevalleyPart part, int N) {
  const int r = wrap_index(i, N) % N;
  if (r == 0) {
    switch (part) {
      case ChevalleyPart::Plus:
        return LoopElement::unit(N, 1, 1);
      case ChevalleyPart::Minus:
        return LoopElement::unit(1, N, -1);
      case ChevalleyPart::Cartan:
        return LoopElement::unit(N, N, 0) - LoopElement::unit(1, 1, 0) + LoopElement::central();
    }
  }
  switch (part) {
    case ChevalleyPart::Plus:
      return LoopElement::unit(r, r + 1, 0);
    case ChevalleyPart::Minus:
      return LoopElement::unit(r + 1, r, 0);
    case ChevalleyPart::Cartan:
      break;
  }
  return LoopElement::unit(r, r, 0) - LoopElement::unit(r + 1, r + 1, 0);
}

LoopGenerator omega_U(const LoopGenerator& g) {
  if (g.is_central()) return g;
  return LoopGenerator::unit(g.j, g.i, -g.s);
}

LoopElement mu_U(const LoopGenerator& g) { return LoopElement(g, Rational(-1)); }

LoopElement rho_U(const LoopGenerator& g, int N) {
  if (g.is_central()) return LoopElement(g);
  const int di = g.i == 1 ? 1 : 0;
  const int dj = g.j == 1 ? 1 : 0;
  LoopElement out = LoopElement::unit(wrap_index(g.i - 1, N), wrap_index(g.j - 1, N), g.s + di - dj);
  if (g.s == 0 && di == 1 && dj == 1) out.add(LoopGenerator::central(), Rational(1));
  return out;
}

namespace {

template <class F>
LoopElement map_linear(const LoopElement& x, F&& f) {
  LoopElement out;
  for (const auto& [g, k] : x.terms()) {
    LoopElement img = f(g);
    img *= k;
    out += img;
  }
  return out;
}

}  // namespace

LoopElement omega_U(const LoopElement& x) {
  return map_linear(x, [](const LoopGenerator& g) { return LoopElement(omega_U(g)); });
}

LoopElement mu_U(const LoopElement& x) {
  return map_linear(x, [](const LoopGenerator& g) { return mu_U(g); });
}

LoopElement rho_U(const LoopElement& x, int N) {
  return map_linear(x, [N](const LoopGenerator& g) { return rho_U(g, N); });
}

LoopElement rho_U_power(const LoopElement& x, int N, int n) {
  LoopElement y = x;
  for (int k = 0; k < n; ++k) y = rho_U(y, N);
  return y;
}

}  // namespace yangeval

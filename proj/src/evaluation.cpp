#include "yangeval/evaluation.hpp"

namespace yangeval {

PbwOrder native_order(EvalMode mode) {
  return mode == EvalMode::EV ? PbwOrder::UpperFirst : PbwOrder::LowerFirst;
}

namespace {

using G = LoopGenerator;

/// Accumulates images term by term. Quadratic terms are given in the
/// ev order (positive mode on the left); for ev^+ the factors swap.
struct Builder {
  NormalExpr out;
  bool swap;

  Builder(PbwOrder order, bool swap_pairs) : out(order), swap(swap_pairs) {}

  void linear(const LoopElement& x, const Rational& k) {
    NormalExpr e = NormalExpr::element(x, out.order());
    e *= k;
    out += e;
  }
  void pair(const G& a, const G& b, const Rational& k) {
    if (swap) {
      out.add_word({b, a}, k);
    } else {
      out.add_word({a, b}, k);
    }
  }
  void quadratic(const LoopElement& a, const LoopElement& b, const Rational& k) {
    for (const auto& [ga, ka] : a.terms())
      for (const auto& [gb, kb] : b.terms()) out.add_word({ga, gb}, k * ka * kb);
  }
};

/// Sum over s <= s_max of the x^+_{i,1} quadratic part, ev convention.
void xplus_tail(Builder& b, int i, int N, int s_max, const Rational& hbar) {
  for (int s = 0; s <= s_max; ++s) {
    if (i == 0) {
      for (int k = 1; k <= N; ++k) b.pair(G::unit(k, 1, s + 1), G::unit(N, k, -s), hbar);
      continue;
    }
    for (int k = 1; k <= i; ++k) b.pair(G::unit(k, i + 1, s), G::unit(i, k, -s), hbar);
    for (int k = i + 1; k <= N; ++k) b.pair(G::unit(k, i + 1, s + 1), G::unit(i, k, -s - 1), hbar);
  }
}

void xminus_tail(Builder& b, int i, int N, int s_max, const Rational& hbar) {
  for (int s = 0; s <= s_max; ++s) {
    if (i == 0) {
      for (int k = 1; k <= N; ++k) b.pair(G::unit(k, N, s), G::unit(1, k, -s - 1), hbar);
      continue;
    }
    for (int k = 1; k <= i; ++k) b.pair(G::unit(k, i, s), G::unit(i + 1, k, -s), hbar);
    for (int k = i + 1; k <= N; ++k) b.pair(G::unit(k, i, s + 1), G::unit(i + 1, k, -s - 1), hbar);
  }
}

void h_tail(Builder& b, int i, int N, int s_max, const Rational& hbar) {
  const Rational neg = -hbar;
  for (int s = 0; s <= s_max; ++s) {
    if (i == 0) {
      for (int k = 1; k <= N; ++k) {
        b.pair(G::unit(k, N, s), G::unit(N, k, -s), hbar);
        b.pair(G::unit(k, 1, s + 1), G::unit(1, k, -s - 1), neg);
      }
      continue;
    }
    for (int k = 1; k <= i; ++k) {
      b.pair(G::unit(k, i, s), G::unit(i, k, -s), hbar);
      b.pair(G::unit(k, i + 1, s), G::unit(i + 1, k, -s), neg);
    }
    for (int k = i + 1; k <= N; ++k) {
      b.pair(G::unit(k, i, s + 1), G::unit(i, k, -s - 1), hbar);
      b.pair(G::unit(k, i + 1, s + 1), G::unit(i + 1, k, -s - 1), neg);
    }
  }
}

/// Weight and net loop degree that every monomial of an image must carry.
void check_grading(const NormalExpr& x, const YGen& g, int N) {
  std::vector<int> weight(static_cast<std::size_t>(N), 0);
  int degree = 0;
  if (g.kind == YGen::Kind::Xplus || g.kind == YGen::Kind::Xminus) {
    const int sign = g.kind == YGen::Kind::Xplus ? 1 : -1;
    const int a = g.i == 0 ? N : g.i;
    const int c = g.i == 0 ? 1 : g.i + 1;
    weight[static_cast<std::size_t>(a - 1)] += sign;
    weight[static_cast<std::size_t>(c - 1)] -= sign;
    degree = g.i == 0 ? sign : 0;
  }
  for (const auto& [m, k] : x.terms()) {
    std::vector<int> w(static_cast<std::size_t>(N), 0);
    for (const auto& f : m) {
      auto we = weight_and_energy(f, N);
      for (int t = 0; t < N; ++t) w[static_cast<std::size_t>(t)] += we.weight[static_cast<std::size_t>(t)];
    }
    if (w != weight || net_degree(m) != degree)
      throw Error("internal: evaluation image of " + to_string(g) + " has a term of wrong grading: " +
                  to_string(m));
  }
}

}  // namespace

NormalExpr ev_image(const YGen& g, const ParamPoint& p, int s_max, CentralBinding binding) {
  const int N = p.N();
  validate(g, N);
  if (s_max < 0) throw DomainError("s_max must be nonnegative");
  const bool plus = p.mode() == EvalMode::EV_PLUS;
  Builder b(native_order(p.mode()), plus);
  const int i = g.i;
  const int ii = i == 0 ? N : i;
  const Rational coef = plus ? p.alpha() - Rational(ii) * p.eps1() : Rational(1) + Rational(ii) * p.eps2();
  const Rational& hbar = p.hbar();

  switch (g.kind) {
    case YGen::Kind::Xplus:
      if (g.r == 0) {
        b.linear(chevalley(i, ChevalleyPart::Plus, N), Rational(1));
      } else {
        b.linear(chevalley(i, ChevalleyPart::Plus, N), coef);
        xplus_tail(b, i, N, s_max, hbar);
      }
      break;
    case YGen::Kind::Xminus:
      if (g.r == 0) {
        b.linear(chevalley(i, ChevalleyPart::Minus, N), Rational(1));
      } else {
        b.linear(chevalley(i, ChevalleyPart::Minus, N), coef);
        xminus_tail(b, i, N, s_max, hbar);
      }
      break;
    case YGen::Kind::H:
    case YGen::Kind::Htilde: {
      const LoopElement hi = chevalley(i, ChevalleyPart::Cartan, N);
      if (g.r == 0) {
        b.linear(hi, Rational(1));
        break;
      }
      b.linear(hi, coef);
      // -hbar E_NN (E_11 - c) for i = 0, -hbar E_ii E_{i+1,i+1} otherwise.
      if (i == 0) {
        b.quadratic(LoopElement::unit(N, N, 0), LoopElement::unit(1, 1, 0) - LoopElement::central(), -hbar);
      } else {
        b.quadratic(LoopElement::unit(i, i, 0), LoopElement::unit(i + 1, i + 1, 0), -hbar);
      }
      h_tail(b, i, N, s_max, hbar);
      if (g.kind == YGen::Kind::Htilde) b.quadratic(hi, hi, -hbar / Rational(2));
      break;
    }
  }

  NormalExpr out = std::move(b.out);
  if (binding == CentralBinding::Level) out = bind_central(out, Rational(p.level()));
  check_grading(out, g, N);
  return out;
}

NormalExpr ev_image(const YComb& x, const ParamPoint& p, int s_max, CentralBinding binding) {
  NormalExpr out(native_order(p.mode()));
  for (const auto& [g, k] : x) {
    NormalExpr e = ev_image(g, p, s_max, binding);
    e *= k;
    out += e;
  }
  return out;
}

Abcd abcd(int i, int N, int s_max) {
  if (i < 1 || i > N - 1) throw DomainError("abcd is defined for 1 <= i <= N-1");
  const PbwOrder order = PbwOrder::UpperFirst;
  Abcd out{NormalExpr(order), NormalExpr(order), NormalExpr(order), NormalExpr(order)};
  const Rational one(1);
  for (int r = 0; r <= s_max; ++r) {
    for (int k = 1; k <= i; ++k) {
      out.A.add_word({G::unit(k, i, r), G::unit(i, k, -r)}, one);
      out.C.add_word({G::unit(k, i + 1, r), G::unit(i + 1, k, -r)}, one);
    }
    for (int k = i + 1; k <= N; ++k) {
      out.B.add_word({G::unit(k, i, r + 1), G::unit(i, k, -r - 1)}, one);
      out.D.add_word({G::unit(k, i + 1, r + 1), G::unit(i + 1, k, -r - 1)}, one);
    }
  }
  return out;
}

}  // namespace yangeval

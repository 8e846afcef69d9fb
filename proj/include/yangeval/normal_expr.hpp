#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "yangeval/loop_algebra.hpp"

namespace yangeval {

/// Product of loop generators; the leftmost factor acts last.
using Monomial = std::vector<LoopGenerator>;

/// PBW orders of U(gl_N^). UpperFirst writes monomials as
/// (upper)(cartan)(lower) and suits lowest-weight modules; LowerFirst writes
/// (lower)(cartan)(upper) so that raising factors hit a highest-weight vector first.
/// Inside a segment factors are sorted by (central first, energy, i, j).
enum class PbwOrder { UpperFirst, LowerFirst };

PbwOrder opposite(PbwOrder order);

/// Strict total order on generators used for PBW normal forms.
bool pbw_less(const LoopGenerator& a, const LoopGenerator& b, PbwOrder order);
bool is_normal(const Monomial& m, PbwOrder order);

int net_degree(const Monomial& m);
std::string to_string(const Monomial& m);

/// Finite linear combination of PBW-normal monomials in a fixed order.
class NormalExpr {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit NormalExpr(PbwOrder order = PbwOrder::LowerFirst) : order_(order) {}

  static NormalExpr scalar(const Rational& k, PbwOrder order);
  static NormalExpr generator(const LoopGenerator& g, PbwOrder order);
  static NormalExpr element(const LoopElement& x, PbwOrder order);
  /// Normal form of an arbitrary word.
  static NormalExpr word(const Monomial& m, const Rational& coeff, PbwOrder order);
  /// Normal form of the product x_1 x_2 ... x_n of loop elements.
  static NormalExpr product(const std::vector<LoopElement>& factors, PbwOrder order);

  PbwOrder order() const noexcept { return order_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Rational coeff(const Monomial& m) const;

  /// Adds the normal form of coeff * m.
  void add_word(const Monomial& m, const Rational& coeff);

  NormalExpr& operator+=(const NormalExpr& rhs);
  NormalExpr& operator-=(const NormalExpr& rhs);
  NormalExpr& operator*=(const Rational& k);

  friend NormalExpr operator+(NormalExpr a, const NormalExpr& b) { return a += b; }
  friend NormalExpr operator-(NormalExpr a, const NormalExpr& b) { return a -= b; }
  friend NormalExpr operator-(NormalExpr a) { return a *= Rational(-1); }
  friend NormalExpr operator*(const Rational& k, NormalExpr a) { return a *= k; }
  friend NormalExpr operator*(const NormalExpr& a, const NormalExpr& b);

  friend bool operator==(const NormalExpr& a, const NormalExpr& b) {
    return a.order_ == b.order_ && a.terms_ == b.terms_;
  }

  /// Keeps only monomials satisfying pred.
  NormalExpr filtered(const std::function<bool(const Monomial&)>& pred) const;
  /// Rewrites in another PBW order.
  NormalExpr reordered(PbwOrder order) const;

  /// One monomial per line: "coeff * E[i,j](s) ...".
  std::string dump() const;

 private:
  void add_normal(const Monomial& m, const Rational& coeff);

  PbwOrder order_;
  Terms terms_;
};

NormalExpr commutator(const NormalExpr& a, const NormalExpr& b);
NormalExpr anticommutator(const NormalExpr& a, const NormalExpr& b);

enum class AntiMap { OmegaU, MuU };

/// Applies an anti-automorphism factorwise in reversed order and renormalizes.
/// omega_U keeps the order type, mu_U lands in the opposite order.
NormalExpr apply_anti(const NormalExpr& x, AntiMap which);

/// Applies rho_U factorwise (an automorphism) and renormalizes.
NormalExpr apply_rho(const NormalExpr& x, int N);

/// Replaces every factor c by the scalar value.
NormalExpr bind_central(const NormalExpr& x, const Rational& value);

}  // namespace yangeval

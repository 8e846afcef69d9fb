#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "yangeval/rational.hpp"

namespace yangeval {

/// Basis element of the affine Lie algebra gl_N^: a matrix unit E[i,j](s)
/// with indices in 1..N, or the central element c.
struct LoopGenerator {
  enum class Kind : std::uint8_t { MatrixUnit, Central };

  Kind kind = Kind::Central;
  int i = 0;
  int j = 0;
  int s = 0;

  static LoopGenerator unit(int i, int j, int s) { return {Kind::MatrixUnit, i, j, s}; }
  static LoopGenerator central() { return {}; }

  bool is_central() const noexcept { return kind == Kind::Central; }
  int degree() const noexcept { return is_central() ? 0 : s; }

  friend auto operator<=>(const LoopGenerator&, const LoopGenerator&) = default;
};

/// Canonical representative of an index modulo N in 1..N.
int wrap_index(int i, int N);

std::string to_string(const LoopGenerator& g);

enum class TriangularPart { Lower, Cartan, Upper };

/// Upper iff (i<j, s>=0) or (i>=j, s>0); lower iff (i>j, s<=0) or (i<=j, s<0).
TriangularPart triangular_part(const LoopGenerator& g);

/// gl_N weight e_i - e_j (as offsets, length N) and energy -s.
struct WeightEnergy {
  std::vector<int> weight;
  int energy = 0;
};
WeightEnergy weight_and_energy(const LoopGenerator& g, int N);

/// Finite Q-linear combination of loop generators; zero coefficients are never stored.
class LoopElement {
 public:
  using Terms = std::map<LoopGenerator, Rational>;

  LoopElement() = default;
  LoopElement(const LoopGenerator& g, Rational coeff = Rational(1));

  static LoopElement unit(int i, int j, int s) { return LoopElement(LoopGenerator::unit(i, j, s)); }
  static LoopElement central() { return LoopElement(LoopGenerator::central()); }
  /// The identity matrix times t^s, expanded as a sum of E[k,k](s).
  static LoopElement identity(int N, int s);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coeff(const LoopGenerator& g) const;

  void add(const LoopGenerator& g, const Rational& coeff);
  LoopElement& operator+=(const LoopElement& rhs);
  LoopElement& operator-=(const LoopElement& rhs);
  LoopElement& operator*=(const Rational& k);

  friend LoopElement operator+(LoopElement a, const LoopElement& b) { return a += b; }
  friend LoopElement operator-(LoopElement a, const LoopElement& b) { return a -= b; }
  friend LoopElement operator-(LoopElement a) { return a *= Rational(-1); }
  friend LoopElement operator*(const Rational& k, LoopElement a) { return a *= k; }

  friend bool operator==(const LoopElement&, const LoopElement&) = default;

  std::string str() const;

 private:
  Terms terms_;
};

/// [X(r), Y(s)] = [X,Y](r+s) + r delta_{r+s,0} tr(XY) c on basis elements.
LoopElement bracket(const LoopGenerator& a, const LoopGenerator& b);
LoopElement bracket(const LoopElement& a, const LoopElement& b);

enum class ChevalleyPart { Plus, Minus, Cartan };

/// x_i^+, x_i^- or h_i for i taken modulo N (i = 0 is the affine node).
LoopElement chevalley(int i, ChevalleyPart part, int N);

/// Transpose with loop degree negated; c fixed.
LoopGenerator omega_U(const LoopGenerator& g);
/// X -> -X, including c -> -c.
LoopElement mu_U(const LoopGenerator& g);
/// Diagram rotation: E[i,j](s) -> E[i-1,j-1](s + d_{i,1} - d_{j,1}) + d_{s,0} d_{i,1} d_{j,1} c.
LoopElement rho_U(const LoopGenerator& g, int N);

LoopElement omega_U(const LoopElement& x);
LoopElement mu_U(const LoopElement& x);
LoopElement rho_U(const LoopElement& x, int N);

/// rho_U applied n times.
LoopElement rho_U_power(const LoopElement& x, int N, int n);

}  // namespace yangeval

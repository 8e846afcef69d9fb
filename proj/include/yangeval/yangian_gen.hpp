#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "yangeval/rational.hpp"

namespace yangeval {

/// Degree <= 1 generator of the affine Yangian: x^+_{i,r}, x^-_{i,r}, h_{i,r}
/// or htilde_{i,1} = h_{i,1} - (hbar/2) h_{i,0}^2. The node i lives in 0..N-1.
struct YGen {
  enum class Kind : std::uint8_t { Xplus, Xminus, H, Htilde };

  Kind kind = Kind::H;
  int i = 0;
  int r = 0;

  static YGen xplus(int i, int r) { return {Kind::Xplus, i, r}; }
  static YGen xminus(int i, int r) { return {Kind::Xminus, i, r}; }
  static YGen h(int i, int r) { return {Kind::H, i, r}; }
  static YGen htilde(int i) { return {Kind::Htilde, i, 1}; }

  friend auto operator<=>(const YGen&, const YGen&) = default;
};

std::string to_string(const YGen& g);

/// Throws DomainError unless 0 <= i < N, r in {0,1}, and htilde has r = 1.
void validate(const YGen& g, int N);

/// Every degree <= 1 generator for a given N, in a fixed order.
std::vector<YGen> all_generators(int N);

/// Formal Q-linear combination of generators.
using YComb = std::map<YGen, Rational>;

/// x_{i,1} -> x_{i,1} + a x_{i,0} (same for h and htilde); degree 0 fixed.
YComb tau_alpha(const YGen& g, const Rational& a);

/// g -> -g, read as a generator of the opposite Yangian Y_{-eps2,-eps1}.
/// htilde maps to minus the opposite algebra's htilde.
YComb mu(const YGen& g);

/// Diagram rotation on the Yangian: x_{i,1} -> x_{i-1,1} + eps2 x_{i-1,0}.
YComb rho(const YGen& g, int N, const Rational& eps2);

/// Linear extension of a generator map to combinations.
template <class F>
YComb map_comb(const YComb& x, F&& f) {
  YComb out;
  for (const auto& [g, k] : x)
    for (const auto& [h, v] : f(g)) {
      auto& slot = out[h];
      slot += k * v;
      if (slot.is_zero()) out.erase(h);
    }
  return out;
}

}  // namespace yangeval

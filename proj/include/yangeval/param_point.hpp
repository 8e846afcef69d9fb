#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "yangeval/rational.hpp"

namespace yangeval {

/// Which evaluation map a parameter point is tuned for.
enum class EvalMode { EV, EV_PLUS };

std::string_view to_string(EvalMode mode);
EvalMode parse_mode(std::string_view text);

/// Parameters (N, eps1, eps2, alpha, K) of one evaluation map.
///
/// eps2 is derived from the other data so that the central constraint
/// K * hbar == N * eps2 (EV) or K * hbar == -N * eps1 (EV_PLUS) holds exactly.
class ParamPoint {
 public:
  /// Throws DomainError for N < 3, K < 1, or an unsolvable constraint.
  static ParamPoint make(int N, const Rational& eps1, std::int64_t K, const Rational& alpha,
                         EvalMode mode);

  /// Arbitrary eps2, no constraint check. Intended for negative controls.
  static ParamPoint unconstrained(int N, const Rational& eps1, const Rational& eps2, std::int64_t K,
                                  const Rational& alpha, EvalMode mode);

  int N() const noexcept { return n_; }
  const Rational& eps1() const noexcept { return eps1_; }
  const Rational& eps2() const noexcept { return eps2_; }
  const Rational& hbar() const noexcept { return hbar_; }
  const Rational& alpha() const noexcept { return alpha_; }
  std::int64_t level() const noexcept { return level_; }
  EvalMode mode() const noexcept { return mode_; }

  /// True iff the mode constraint holds exactly.
  bool satisfies_constraint() const;

  /// K*hbar + N*eps1 for EV_PLUS, K*hbar - N*eps2 for EV.
  Rational constraint_defect() const;

  /// The EV point of the opposite Yangian Y_{-eps2,-eps1} paired with this
  /// EV_PLUS point. Its level is -K because the anti-automorphism sends c to -c.
  ParamPoint mu_dual() const;

  friend bool operator==(const ParamPoint&, const ParamPoint&) = default;

 private:
  ParamPoint(int N, Rational eps1, Rational eps2, std::int64_t K, Rational alpha, EvalMode mode);

  int n_;
  Rational eps1_;
  Rational eps2_;
  Rational hbar_;
  Rational alpha_;
  std::int64_t level_;
  EvalMode mode_;
};

}  // namespace yangeval

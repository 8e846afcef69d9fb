#include "yangeval/param_point.hpp"

namespace yangeval {

std::string_view to_string(EvalMode mode) { return mode == EvalMode::EV ? "EV" : "EV_PLUS"; }

EvalMode parse_mode(std::string_view text) {
  if (text == "EV" || text == "ev") return EvalMode::EV;
  if (text == "EV_PLUS" || text == "ev_plus" || text == "ev+") return EvalMode::EV_PLUS;
  throw DomainError("unknown evaluation mode '" + std::string(text) + "'");
}

ParamPoint::ParamPoint(int N, Rational eps1, Rational eps2, std::int64_t K, Rational alpha,
                       EvalMode mode)
    : n_(N),
      eps1_(std::move(eps1)),
      eps2_(std::move(eps2)),
      hbar_(eps1_ + eps2_),
      alpha_(std::move(alpha)),
      level_(K),
      mode_(mode) {}

ParamPoint ParamPoint::make(int N, const Rational& eps1, std::int64_t K, const Rational& alpha,
                            EvalMode mode) {
  if (N < 3) throw DomainError("N must be at least 3");
  if (K < 1) throw DomainError("level K must be at least 1");
  Rational eps2;
  if (mode == EvalMode::EV_PLUS) {
    eps2 = -eps1 * Rational(N + K) / Rational(K);
  } else if (N != K) {
    eps2 = Rational(K) * eps1 / Rational(N - K);
  } else if (eps1.is_zero()) {
    eps2 = Rational(0);
  } else {
    throw DomainError("constraint K*hbar = N*eps2 is unsolvable for N = K and eps1 != 0");
  }
  ParamPoint p(N, eps1, eps2, K, alpha, mode);
  if (!p.satisfies_constraint()) throw Error("internal: derived eps2 violates the constraint");
  return p;
}

ParamPoint ParamPoint::unconstrained(int N, const Rational& eps1, const Rational& eps2,
                                     std::int64_t K, const Rational& alpha, EvalMode mode) {
  if (N < 3) throw DomainError("N must be at least 3");
  return ParamPoint(N, eps1, eps2, K, alpha, mode);
}

Rational ParamPoint::constraint_defect() const {
  Rational kh = Rational(level_) * hbar_;
  return mode_ == EvalMode::EV_PLUS ? kh + Rational(n_) * eps1_ : kh - Rational(n_) * eps2_;
}

bool ParamPoint::satisfies_constraint() const { return constraint_defect().is_zero(); }

ParamPoint ParamPoint::mu_dual() const {
  if (mode_ != EvalMode::EV_PLUS) throw DomainError("mu_dual expects an EV_PLUS point");
  return ParamPoint(n_, -eps2_, -eps1_, -level_, alpha_, EvalMode::EV);
}

}  // namespace yangeval

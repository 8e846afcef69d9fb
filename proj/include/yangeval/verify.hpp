#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "yangeval/realization.hpp"

namespace yangeval {

/// Relation families of the degree <= 1 presentation of the affine Yangian.
enum class Family { HH, XmX, H0X, H1X, XX, SERRE };

std::string_view to_string(Family f);
/// Case-insensitive; throws DomainError on unknown names.
Family parse_family(std::string_view text);
std::vector<Family> all_families();
/// HH, XmX, H1X and XX: enough together with the degree-zero relations.
std::vector<Family> minimal_families();

int cartan_entry(int i, int j, int N);
/// 1 if j = i - 1, -1 if j = i + 1 (mod N), else 0.
int m_entry(int i, int j, int N);

/// First basis vector (in block order) on which a residual operator is nonzero.
struct Witness {
  std::string variant;
  BlockKey block;
  int index = 0;
  std::string label;
  ModuleVector residual;
};

struct RelationReport {
  std::string family;
  int i = 0;
  int j = 0;
  bool pass = true;
  /// Number of (variant, basis vector) pairs checked.
  int tested = 0;
  std::optional<Witness> witness;
};

/// Worker count from YANGEVAL_THREADS, else the hardware concurrency.
int worker_count();

/// Checks every relation of the given families on every basis vector with
/// energy <= depth - max(headroom, operator peak). Failures are reported,
/// never thrown.
std::vector<RelationReport> verify_family(const YangianRealization& y, const std::vector<Family>& families,
                                          int headroom = 2);

struct AbcdOptions {
  /// Cut of the sums; negative means the module depth.
  int s_max = -1;
  /// Highest tested energy; negative means the module depth.
  int max_energy = -1;
};

/// The four vanishing sums [X_i, Y_j] with X, Y in {A+B, C+D}, for
/// 1 <= i < j <= N-1, checked on the module through their mu_U images.
RelationReport verify_abcd(int i, int j, const ModulePtr& m, AbcdOptions options = {});

/// Expression-level rho_U o ev = ev o rho for every degree <= 1 generator,
/// compared on monomials whose modes all satisfy |s| <= s_max - 1.
/// p must be an EV point.
RelationReport verify_rho_compat(const ParamPoint& p, int s_max);

/// ev^+_alpha = mu_U^{-1} o ev o tau_{alpha-1} o mu, termwise for every
/// degree <= 1 generator. p must be an EV_PLUS point.
RelationReport verify_mu_conjugation(const ParamPoint& p, int s_max);

struct DrinfeldNode {
  Rational a;
  std::int64_t pairing = 0;
  /// Coefficients of pi_i(u), constant term first.
  std::vector<Rational> pi;
};

struct HwVerdict {
  int i = 0;
  int r = 0;
  Rational expected;
  /// Eigenvalue read off the operator, if h_{i,r} v is a multiple of v.
  std::optional<Rational> eigenvalue;
  bool h_ok = false;
  bool xplus_ok = false;
  ModuleVector residual;
};

struct HwReport {
  std::vector<DrinfeldNode> nodes;
  std::vector<HwVerdict> verdicts;
  /// Per node: 1 + hbar sum_r h_{i,r}-eigenvalue u^{-r-1} = pi(u+hbar)/pi(u) through u^{-r_max-1}.
  std::vector<bool> series_ok;
  bool pass = true;
};

/// a_i from the closed form, pi_i(u) = prod_{k < <h_i,Lambda>} (u - a_i + k hbar).
std::vector<DrinfeldNode> drinfeld_data(const HighestWeight& w, const ParamPoint& p);

/// Throws DomainError if r_max < 0 or r_max > depth.
HwReport highest_weight_check(const YangianRealization& y, int r_max);

/// Coefficients of w^0..w^order of Q(w)/P(w) with pi(u) = u^m P(1/u), pi(u+hbar) = u^m Q(1/u).
std::vector<Rational> drinfeld_series(const std::vector<Rational>& pi, const Rational& hbar, int order);

}  // namespace yangeval

#pragma once

// Independent character oracles for L(Lambda): the Freudenthal multiplicity
// recursion for sl_N^ combined with Heisenberg partitions, and the Weyl
// dimension formula for gl_N. Nothing here uses the module construction.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "yangeval/rational.hpp"

namespace oracle {

using yangeval::Rational;

/// (weight offset from lambda, energy) -> multiplicity.
using Character = std::map<std::pair<std::vector<int>, int>, std::int64_t>;

inline Rational finite_norm(const std::vector<Rational>& v) {
  Rational sq, tr;
  for (const auto& x : v) {
    sq += x * x;
    tr += x;
  }
  return sq - tr * tr / Rational(static_cast<std::int64_t>(v.size()));
}

class Freudenthal {
 public:
  Freudenthal(std::vector<Rational> lambda, std::int64_t level) : lam_(std::move(lambda)), k_(level) {
    n_ = static_cast<int>(lam_.size());
    top_ = norm_shifted(std::vector<int>(static_cast<std::size_t>(n_), 0), 0);
  }

  /// Multiplicity of the sl_N^ weight lambda + off - d delta.
  std::int64_t mult(const std::vector<int>& off, int d) {
    if (d < 0 || !in_cone(off, d)) return 0;
    bool top = d == 0;
    for (int x : off) top = top && x == 0;
    if (top) return 1;
    const auto key = std::make_pair(off, d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const Rational gap = top_ - norm_shifted(off, d);
    std::int64_t result = 0;
    if (gap.sign() > 0) {
      Rational s;
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
          if (i == j) continue;
          const Rational pair = mu(off, i) - mu(off, j);
          for (int n = 0; n <= d; ++n) {
            if (n == 0 && i > j) continue;
            for (int k = 1; d - k * n >= 0; ++k) {
              std::vector<int> shifted = off;
              shifted[static_cast<std::size_t>(i)] += k;
              shifted[static_cast<std::size_t>(j)] -= k;
              if (!in_cone(shifted, d - k * n)) break;
              s += (pair + Rational(n * k_ + 2 * k)) * Rational(mult(shifted, d - k * n));
            }
          }
        }
      for (int n = 1; n <= d; ++n)
        for (int k = 1; d - k * n >= 0; ++k) s += Rational((n_ - 1) * n * k_) * Rational(mult(off, d - k * n));
      const Rational r = Rational(2) * s / gap;
      if (!r.is_integer()) throw std::logic_error("Freudenthal recursion produced a fraction");
      result = r.numerator().get_si();
    }
    memo_.emplace(key, result);
    return result;
  }

  /// All nonzero multiplicities with energy <= depth.
  Character character(int depth) {
    int spread = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        const Rational d = lam_[static_cast<std::size_t>(i)] - lam_[static_cast<std::size_t>(j)];
        if (d.is_integer()) spread = std::max(spread, static_cast<int>(d.numerator().get_si()));
      }
    // Each creation operator moves every coordinate by at most one.
    const int R = depth + spread;
    Character out;
    std::vector<int> off(static_cast<std::size_t>(n_), 0);
    std::function<void(int, int)> rec = [&](int pos, int sum) {
      if (pos == n_ - 1) {
        off[static_cast<std::size_t>(pos)] = -sum;
        if (-sum < -R || -sum > R) return;
        for (int d = 0; d <= depth; ++d)
          if (auto m = mult(off, d)) out[{off, d}] = m;
        return;
      }
      for (int x = -R; x <= R; ++x) {
        off[static_cast<std::size_t>(pos)] = x;
        rec(pos + 1, sum + x);
      }
    };
    rec(0, 0);
    return out;
  }

 private:
  Rational mu(const std::vector<int>& off, int i) const {
    return lam_[static_cast<std::size_t>(i)] + Rational(off[static_cast<std::size_t>(i)]);
  }

  Rational norm_shifted(const std::vector<int>& off, int d) const {
    std::vector<Rational> v;
    for (int i = 0; i < n_; ++i) v.push_back(mu(off, i) + Rational(n_ - 1 - i));
    return finite_norm(v) - Rational(2 * (k_ + n_) * d);
  }

  /// Lambda - mu is a nonnegative combination of simple roots with alpha_0 coefficient d.
  bool in_cone(const std::vector<int>& off, int d) const {
    std::vector<int> diff(static_cast<std::size_t>(n_));
    int total = 0;
    for (int i = 0; i < n_; ++i) {
      diff[static_cast<std::size_t>(i)] = -off[static_cast<std::size_t>(i)];
      total += diff[static_cast<std::size_t>(i)];
    }
    if (total != 0) return false;
    diff.front() += d;
    diff.back() -= d;
    int acc = 0;
    for (int i = 0; i + 1 < n_; ++i) {
      acc += diff[static_cast<std::size_t>(i)];
      if (acc < 0) return false;
    }
    return true;
  }

  std::vector<Rational> lam_;
  std::int64_t k_;
  int n_;
  Rational top_;
  std::map<std::pair<std::vector<int>, int>, std::int64_t> memo_;
};

inline std::vector<std::int64_t> partitions(int n) {
  std::vector<std::int64_t> p(static_cast<std::size_t>(n + 1), 0);
  p[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int m = k; m <= n; ++m) p[static_cast<std::size_t>(m)] += p[static_cast<std::size_t>(m - k)];
  return p;
}

/// Graded character of the gl_N^ module: sl_N^ part times the Heisenberg Fock space.
inline Character gl_character(const std::vector<Rational>& lambda, std::int64_t level, int depth) {
  Freudenthal f(lambda, level);
  const Character sl = f.character(depth);
  const auto p = partitions(depth);
  Character gl;
  for (const auto& [key, m] : sl)
    for (int e = 0; key.second + e <= depth; ++e) gl[{key.first, key.second + e}] += m * p[static_cast<std::size_t>(e)];
  return gl;
}

/// Weyl dimension formula for the gl_N irreducible of highest weight lambda.
inline std::int64_t weyl_dimension(const std::vector<Rational>& lambda) {
  const int n = static_cast<int>(lambda.size());
  Rational d(1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d *= (lambda[static_cast<std::size_t>(i)] - lambda[static_cast<std::size_t>(j)] + Rational(j - i)) / Rational(j - i);
  return d.numerator().get_si();
}

}  // namespace oracle

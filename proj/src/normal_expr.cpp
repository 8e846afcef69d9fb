#include "yangeval/normal_expr.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace yangeval {

PbwOrder opposite(PbwOrder order) {
  return order == PbwOrder::UpperFirst ? PbwOrder::LowerFirst : PbwOrder::UpperFirst;
}

namespace {

int segment_rank(TriangularPart part, PbwOrder order) {
  switch (part) {
    case TriangularPart::Cartan:
      return 1;
    case TriangularPart::Upper:
      return order == PbwOrder::UpperFirst ? 0 : 2;
    case TriangularPart::Lower:
      return order == PbwOrder::UpperFirst ? 2 : 0;
  }
  return 1;
}

auto pbw_key(const LoopGenerator& g, PbwOrder order) {
  return std::make_tuple(segment_rank(triangular_part(g), order), g.is_central() ? 0 : 1, -g.s, g.i,
                         g.j);
}

using Terms = NormalExpr::Terms;

void accumulate(Terms& into, const Monomial& m, const Rational& k) {
  if (k.is_zero()) return;
  auto [it, inserted] = into.try_emplace(m, k);
  if (inserted) return;
  it->second += k;
  if (it->second.is_zero()) into.erase(it);
}

/// Memoized normal form of a single word. The cache is per thread, so
/// concurrent callers never share mutable state.
const Terms& normalize(const Monomial& m, PbwOrder order) {
  thread_local std::map<Monomial, Terms> caches[2];
  auto& cache = caches[order == PbwOrder::UpperFirst ? 0 : 1];
  if (auto it = cache.find(m); it != cache.end()) return it->second;

  Terms out;
  std::size_t p = 0;
  while (p + 1 < m.size() && !pbw_less(m[p + 1], m[p], order)) ++p;
  if (p + 1 >= m.size()) {
    out.emplace(m, Rational(1));
  } else {
    Monomial swapped = m;
    std::swap(swapped[p], swapped[p + 1]);
    for (const auto& [w, k] : normalize(swapped, order)) accumulate(out, w, k);
    const LoopElement br = bracket(m[p], m[p + 1]);
    for (const auto& [g, k] : br.terms()) {
      Monomial shorter;
      shorter.reserve(m.size() - 1);
      shorter.insert(shorter.end(), m.begin(), m.begin() + static_cast<std::ptrdiff_t>(p));
      shorter.push_back(g);
      shorter.insert(shorter.end(), m.begin() + static_cast<std::ptrdiff_t>(p + 2), m.end());
      for (const auto& [w, v] : normalize(shorter, order)) accumulate(out, w, k * v);
    }
  }
  return cache.emplace(m, std::move(out)).first->second;
}

}  // namespace

bool pbw_less(const LoopGenerator& a, const LoopGenerator& b, PbwOrder order) {
  return pbw_key(a, order) < pbw_key(b, order);
}

bool is_normal(const Monomial& m, PbwOrder order) {
  for (std::size_t p = 0; p + 1 < m.size(); ++p)
    if (pbw_less(m[p + 1], m[p], order)) return false;
  return true;
}

int net_degree(const Monomial& m) {
  int d = 0;
  for (const auto& g : m) d += g.degree();
  return d;
}

std::string to_string(const Monomial& m) {
  if (m.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (k) out += ' ';
    out += to_string(m[k]);
  }
  return out;
}

NormalExpr NormalExpr::scalar(const Rational& k, PbwOrder order) {
  NormalExpr x(order);
  x.add_normal({}, k);
  return x;
}

NormalExpr NormalExpr::generator(const LoopGenerator& g, PbwOrder order) {
  NormalExpr x(order);
  x.add_normal({g}, Rational(1));
  return x;
}

NormalExpr NormalExpr::element(const LoopElement& e, PbwOrder order) {
  NormalExpr x(order);
  for (const auto& [g, k] : e.terms()) x.add_normal({g}, k);
  return x;
}

NormalExpr NormalExpr::word(const Monomial& m, const Rational& coeff, PbwOrder order) {
  NormalExpr x(order);
  x.add_word(m, coeff);
  return x;
}

NormalExpr NormalExpr::product(const std::vector<LoopElement>& factors, PbwOrder order) {
  NormalExpr acc = scalar(Rational(1), order);
  for (const auto& f : factors) acc = acc * element(f, order);
  return acc;
}

Rational NormalExpr::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void NormalExpr::add_normal(const Monomial& m, const Rational& coeff) { accumulate(terms_, m, coeff); }

void NormalExpr::add_word(const Monomial& m, const Rational& coeff) {
  if (coeff.is_zero()) return;
  if (is_normal(m, order_)) {
    add_normal(m, coeff);
    return;
  }
  for (const auto& [w, k] : normalize(m, order_)) add_normal(w, coeff * k);
}

NormalExpr& NormalExpr::operator+=(const NormalExpr& rhs) {
  if (rhs.order_ != order_) return *this += rhs.reordered(order_);
  for (const auto& [m, k] : rhs.terms_) add_normal(m, k);
  return *this;
}

NormalExpr& NormalExpr::operator-=(const NormalExpr& rhs) {
  if (rhs.order_ != order_) return *this -= rhs.reordered(order_);
  for (const auto& [m, k] : rhs.terms_) add_normal(m, -k);
  return *this;
}

NormalExpr& NormalExpr::operator*=(const Rational& k) {
  if (k.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= k;
  return *this;
}

NormalExpr operator*(const NormalExpr& a, const NormalExpr& b) {
  if (a.order_ != b.order_) return a * b.reordered(a.order_);
  NormalExpr out(a.order_);
  Monomial w;
  for (const auto& [ma, ka] : a.terms_)
    for (const auto& [mb, kb] : b.terms_) {
      w.assign(ma.begin(), ma.end());
      w.insert(w.end(), mb.begin(), mb.end());
      out.add_word(w, ka * kb);
    }
  return out;
}

NormalExpr NormalExpr::filtered(const std::function<bool(const Monomial&)>& pred) const {
  NormalExpr out(order_);
  for (const auto& [m, k] : terms_)
    if (pred(m)) out.terms_.emplace(m, k);
  return out;
}

NormalExpr NormalExpr::reordered(PbwOrder order) const {
  if (order == order_) return *this;
  NormalExpr out(order);
  for (const auto& [m, k] : terms_) out.add_word(m, k);
  return out;
}

std::string NormalExpr::dump() const {
  std::ostringstream os;
  for (const auto& [m, k] : terms_) os << k << " * " << to_string(m) << '\n';
  return os.str();
}

NormalExpr commutator(const NormalExpr& a, const NormalExpr& b) { return a * b - b * a; }
NormalExpr anticommutator(const NormalExpr& a, const NormalExpr& b) { return a * b + b * a; }

NormalExpr apply_anti(const NormalExpr& x, AntiMap which) {
  const PbwOrder target = which == AntiMap::OmegaU ? x.order() : opposite(x.order());
  NormalExpr out(target);
  Monomial w;
  for (const auto& [m, k] : x.terms()) {
    w.assign(m.rbegin(), m.rend());
    Rational coeff = k;
    for (auto& g : w) {
      if (which == AntiMap::OmegaU) {
        g = omega_U(g);
      } else {
        coeff = -coeff;
      }
    }
    out.add_word(w, coeff);
  }
  return out;
}

NormalExpr apply_rho(const NormalExpr& x, int N) {
  NormalExpr out(x.order());
  for (const auto& [m, k] : x.terms()) {
    std::vector<LoopElement> images;
    images.reserve(m.size());
    for (const auto& g : m) images.push_back(rho_U(g, N));
    NormalExpr img = NormalExpr::product(images, x.order());
    img *= k;
    out += img;
  }
  return out;
}

NormalExpr bind_central(const NormalExpr& x, const Rational& value) {
  NormalExpr out(x.order());
  for (const auto& [m, k] : x.terms()) {
    Monomial w;
    unsigned powers = 0;
    for (const auto& g : m) {
      if (g.is_central()) {
        ++powers;
      } else {
        w.push_back(g);
      }
    }
    out.add_word(w, k * value.pow(powers));
  }
  return out;
}

}  // namespace yangeval

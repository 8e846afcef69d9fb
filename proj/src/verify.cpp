#include "yangeval/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>

#include "yangeval/errors.hpp"

namespace yangeval {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::HH:
      return "HH";
    case Family::XmX:
      return "XmX";
    case Family::H0X:
      return "H0X";
    case Family::H1X:
      return "H1X";
    case Family::XX:
      return "XX";
    case Family::SERRE:
      return "SERRE";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
  };
  const std::string t = lower(text);
  for (Family f : all_families())
    if (lower(to_string(f)) == t) return f;
  throw DomainError("unknown relation family '" + std::string(text) + "'");
}

std::vector<Family> all_families() {
  return {Family::HH, Family::XmX, Family::H0X, Family::H1X, Family::XX, Family::SERRE};
}

std::vector<Family> minimal_families() { return {Family::HH, Family::XmX, Family::H1X, Family::XX}; }

int cartan_entry(int i, int j, int N) {
  if (i == j) return 2;
  const int d = ((j - i) % N + N) % N;
  return (d == 1 || d == N - 1) ? -1 : 0;
}

int m_entry(int i, int j, int N) {
  const int d = ((j - i) % N + N) % N;
  if (d == N - 1) return 1;
  if (d == 1) return -1;
  return 0;
}

int worker_count() {
  if (const char* env = std::getenv("YANGEVAL_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(std::min(n, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Check {
  std::string variant;
  BlockOperator residual;
};

/// First nonzero column of a sparse matrix, or -1.
int first_nonzero_column(const QSparse& m) {
  for (int k = 0; k < m.outerSize(); ++k)
    for (QSparse::InnerIterator it(m, k); it; ++it)
      if (!it.value().is_zero()) return k;
  return -1;
}

void run_checks(const TruncatedModule& m, const std::vector<Check>& checks, int headroom, RelationReport& rep) {
  for (const auto& c : checks) {
    const int reach = m.depth() - std::max(headroom, c.residual.peak());
    if (reach < 0) continue;
    for (int b : m.blocks_up_to_energy(reach)) {
      rep.tested += m.block_dim(b);
      const auto& img = c.residual.on_block(b);
      if (img.is_zero()) continue;
      const int k = first_nonzero_column(*img.matrix);
      if (k < 0) continue;
      QVector col = QVector::Zero(img.matrix->rows());
      for (QSparse::InnerIterator it(*img.matrix, k); it; ++it) col(it.row()) = it.value();
      Witness w;
      w.variant = c.variant;
      w.block = m.block_key(b);
      w.index = k;
      w.label = m.basis_label(b, k);
      w.residual.add(img.target, col);
      rep.pass = false;
      rep.witness = std::move(w);
      return;
    }
  }
}

struct Task {
  Family family;
  int i;
  int j;
};

std::vector<Check> checks_for(const YangianRealization& y, const Task& t) {
  const int N = y.module()->N();
  const int i = t.i, j = t.j;
  const Rational a(cartan_entry(i, j, N));
  const Rational mm(m_entry(i, j, N));
  const ParamPoint& p = y.point();
  const Rational skew = (p.eps1() - p.eps2()) / Rational(2);
  const Rational half_hbar = p.hbar() / Rational(2);
  auto x = [&](int sign, int node, int r) { return sign > 0 ? y.xplus(node, r) : y.xminus(node, r); };
  auto sign_name = [](int sign) { return std::string(sign > 0 ? "+" : "-"); };

  std::vector<Check> out;
  switch (t.family) {
    case Family::HH:
      for (int r = 0; r <= 1; ++r)
        for (int s = 0; s <= 1; ++s)
          out.push_back({"[h_{i," + std::to_string(r) + "},h_{j," + std::to_string(s) + "}]",
                         commutator(y.h(i, r), y.h(j, s))});
      break;
    case Family::XmX: {
      auto rel = [&](const BlockOperator& lhs, int r) {
        return i == j ? lhs - y.h(i, r) : lhs;
      };
      out.push_back({"[x+_{i,0},x-_{j,0}]", rel(commutator(y.xplus(i, 0), y.xminus(j, 0)), 0)});
      out.push_back({"[x+_{i,1},x-_{j,0}]", rel(commutator(y.xplus(i, 1), y.xminus(j, 0)), 1)});
      out.push_back({"[x+_{i,0},x-_{j,1}]", rel(commutator(y.xplus(i, 0), y.xminus(j, 1)), 1)});
      break;
    }
    case Family::H0X:
      for (int sign : {1, -1})
        for (int r = 0; r <= 1; ++r)
          out.push_back({"[h_{i,0},x" + sign_name(sign) + "_{j," + std::to_string(r) + "}]",
                         commutator(y.h(i, 0), x(sign, j, r)) - x(sign, j, r).scaled(Rational(sign) * a)});
      break;
    case Family::H1X:
      for (int sign : {1, -1}) {
        const BlockOperator rhs = x(sign, j, 1) - x(sign, j, 0).scaled(mm * skew);
        out.push_back({"[htilde_{i,1},x" + sign_name(sign) + "_{j,0}]",
                       commutator(y.htilde(i), x(sign, j, 0)) - rhs.scaled(Rational(sign) * a)});
      }
      break;
    case Family::XX:
      for (int sign : {1, -1}) {
        const BlockOperator lhs =
            commutator(x(sign, i, 1), x(sign, j, 0)) - commutator(x(sign, i, 0), x(sign, j, 1));
        const BlockOperator rhs = anticommutator(x(sign, i, 0), x(sign, j, 0)).scaled(Rational(sign) * a * half_hbar) -
                                  commutator(x(sign, i, 0), x(sign, j, 0)).scaled(mm * skew);
        out.push_back({"x" + sign_name(sign) + " degree-one mixing", lhs - rhs});
      }
      break;
    case Family::SERRE:
      for (int sign : {1, -1}) {
        BlockOperator op = x(sign, j, 0);
        for (int n = 0; n < 1 - cartan_entry(i, j, N); ++n) op = commutator(x(sign, i, 0), op);
        out.push_back({"(ad x" + sign_name(sign) + "_{i,0})^{1-a_ij} x" + sign_name(sign) + "_{j,0}", op});
      }
      break;
  }
  return out;
}

/// Runs f(k) for k in [0, n) on the worker pool; rethrows the first failure.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
  const int workers = std::min<int>(worker_count(), static_cast<int>(std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto loop = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < n;) {
      try {
        f(k);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    loop();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(loop);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

std::string first_difference(const NormalExpr& d) {
  if (d.is_zero()) return {};
  const auto& [mono, k] = *d.terms().begin();
  return k.str() + " * " + to_string(mono);
}

RelationReport compare_expressions(const std::string& family, const std::vector<YGen>& gens,
                                   const std::function<std::pair<NormalExpr, NormalExpr>(const YGen&)>& sides) {
  RelationReport rep;
  rep.family = family;
  std::vector<NormalExpr> diffs(gens.size());
  parallel_for(gens.size(), [&](std::size_t k) {
    auto [lhs, rhs] = sides(gens[k]);
    diffs[k] = lhs - rhs;
  });
  for (std::size_t k = 0; k < gens.size(); ++k) {
    ++rep.tested;
    if (diffs[k].is_zero()) continue;
    rep.pass = false;
    Witness w;
    w.variant = to_string(gens[k]);
    w.label = first_difference(diffs[k]);
    rep.i = gens[k].i;
    rep.j = gens[k].r;
    rep.witness = std::move(w);
    break;
  }
  return rep;
}

}  // namespace

std::vector<RelationReport> verify_family(const YangianRealization& y, const std::vector<Family>& families,
                                          int headroom) {
  const ModulePtr& m = y.module();
  if (headroom < 0 || headroom > m->depth())
    throw DomainError("headroom " + std::to_string(headroom) + " does not fit depth " + std::to_string(m->depth()));
  const int N = m->N();
  std::vector<Task> tasks;
  for (Family f : families)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (f != Family::SERRE || i != j) tasks.push_back({f, i, j});

  std::vector<RelationReport> reports(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t k) {
    const Task& t = tasks[k];
    RelationReport rep;
    rep.family = std::string(to_string(t.family));
    rep.i = t.i;
    rep.j = t.j;
    run_checks(*m, checks_for(y, t), headroom, rep);
    reports[k] = std::move(rep);
  });
  return reports;
}

RelationReport verify_abcd(int i, int j, const ModulePtr& m, AbcdOptions options) {
  const int N = m->N();
  if (!(1 <= i && i < j && j <= N - 1)) throw DomainError("abcd sums need 1 <= i < j <= N-1");
  const int s_max = options.s_max < 0 ? m->depth() : options.s_max;
  const int max_energy = options.max_energy < 0 ? m->depth() : std::min(options.max_energy, m->depth());

  const Abcd si = abcd(i, N, s_max);
  const Abcd sj = abcd(j, N, s_max);
  auto op = [&](const NormalExpr& x) { return BlockOperator::expression(m, apply_anti(x, AntiMap::MuU)); };
  const BlockOperator Xi = op(si.A + si.B), Yi = op(si.C + si.D);
  const BlockOperator Xj = op(sj.A + sj.B), Yj = op(sj.C + sj.D);

  // mu_U reverses products, so [P, Q] = 0 is checked as [mu Q, mu P] = 0.
  const std::vector<Check> checks = {
      {"[A_i+B_i, A_j+B_j]", commutator(Xj, Xi)},
      {"[A_i+B_i, C_j+D_j]", commutator(Yj, Xi)},
      {"[C_i+D_i, A_j+B_j]", commutator(Xj, Yi)},
      {"[C_i+D_i, C_j+D_j]", commutator(Yj, Yi)},
  };
  RelationReport rep;
  rep.family = "ABCD";
  rep.i = i;
  rep.j = j;
  run_checks(*m, checks, m->depth() - max_energy, rep);
  return rep;
}

RelationReport verify_rho_compat(const ParamPoint& p, int s_max) {
  if (p.mode() != EvalMode::EV) throw DomainError("rho compatibility is stated for EV points");
  if (s_max < 1) throw DomainError("rho compatibility needs s_max >= 1");
  const int N = p.N();
  const Rational K(p.level());
  auto inside = [s_max](const Monomial& mono) {
    return std::all_of(mono.begin(), mono.end(), [s_max](const LoopGenerator& g) {
      return std::abs(g.degree()) <= s_max - 1;
    });
  };
  return compare_expressions("RHO", all_generators(N), [&](const YGen& g) {
    const NormalExpr lhs = bind_central(apply_rho(ev_image(g, p, s_max, CentralBinding::Symbolic), N), K);
    const NormalExpr rhs = ev_image(rho(g, N, p.eps2()), p, s_max, CentralBinding::Level);
    return std::make_pair(lhs.filtered(inside), rhs.filtered(inside));
  });
}

RelationReport verify_mu_conjugation(const ParamPoint& p, int s_max) {
  if (p.mode() != EvalMode::EV_PLUS) throw DomainError("mu conjugation is stated for EV_PLUS points");
  const ParamPoint dual = p.mu_dual();
  const Rational shift = p.alpha() - Rational(1);
  return compare_expressions("MU", all_generators(p.N()), [&](const YGen& g) {
    const NormalExpr lhs = ev_image(g, p, s_max, CentralBinding::Symbolic);
    const YComb pre = map_comb(mu(g), [&](const YGen& h) { return tau_alpha(h, shift); });
    const NormalExpr rhs = apply_anti(ev_image(pre, dual, s_max, CentralBinding::Symbolic), AntiMap::MuU);
    return std::make_pair(lhs, rhs);
  });
}

std::vector<DrinfeldNode> drinfeld_data(const HighestWeight& w, const ParamPoint& p) {
  const int N = w.N();
  const Rational K(w.level);
  std::vector<DrinfeldNode> out;
  for (int i = 0; i < N; ++i) {
    DrinfeldNode d;
    const Rational shift = i == 0 ? w.lambda.back() + K : w.lambda[static_cast<std::size_t>(i - 1)] + Rational(i) * K / Rational(N);
    d.a = p.alpha() + shift * p.hbar();
    d.pairing = w.h_pairing(i);
    d.pi = {Rational(1)};
    for (std::int64_t k = 0; k < d.pairing; ++k) {
      const Rational root_shift = Rational(k) * p.hbar() - d.a;
      std::vector<Rational> next(d.pi.size() + 1);
      for (std::size_t t = 0; t < d.pi.size(); ++t) {
        next[t + 1] += d.pi[t];
        next[t] += root_shift * d.pi[t];
      }
      d.pi = std::move(next);
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Rational> drinfeld_series(const std::vector<Rational>& pi, const Rational& hbar, int order) {
  if (pi.empty() || pi.back().is_zero()) throw DomainError("polynomial must have a nonzero leading coefficient");
  const std::size_t m = pi.size() - 1;
  // Taylor shift: coefficients of pi(u + hbar).
  std::vector<Rational> shifted = pi;
  for (std::size_t pass = 0; pass < m; ++pass)
    for (std::size_t t = m - 1; t + 1 > pass; --t) shifted[t] += hbar * shifted[t + 1];
  auto coeff_w = [m](const std::vector<Rational>& c, int k) {
    return static_cast<std::size_t>(k) <= m ? c[m - static_cast<std::size_t>(k)] : Rational(0);
  };
  std::vector<Rational> r(static_cast<std::size_t>(order + 1));
  for (int k = 0; k <= order; ++k) {
    Rational acc = coeff_w(shifted, k);
    for (int l = 1; l <= k; ++l) acc -= coeff_w(pi, l) * r[static_cast<std::size_t>(k - l)];
    r[static_cast<std::size_t>(k)] = acc / pi.back();
  }
  return r;
}

HwReport highest_weight_check(const YangianRealization& y, int r_max) {
  const ModulePtr& m = y.module();
  if (r_max < 0) throw DomainError("r_max must be nonnegative");
  if (r_max > m->depth())
    throw DomainError("r_max " + std::to_string(r_max) + " exceeds the module depth " + std::to_string(m->depth()));
  const int N = m->N();
  HwReport rep;
  rep.nodes = drinfeld_data(m->highest_weight(), y.point());
  const ModuleVector v = m->highest_vector();
  const int top = m->highest_block();

  std::vector<HwVerdict> verdicts(static_cast<std::size_t>(N * (r_max + 1)));
  parallel_for(verdicts.size(), [&](std::size_t k) {
    HwVerdict h;
    h.i = static_cast<int>(k) / (r_max + 1);
    h.r = static_cast<int>(k) % (r_max + 1);
    const DrinfeldNode& d = rep.nodes[static_cast<std::size_t>(h.i)];
    h.expected = d.a.pow(static_cast<unsigned>(h.r)) * Rational(d.pairing);
    const ModuleVector hv = y.h(h.i, h.r).apply(v);
    bool multiple = true;
    Rational value;
    for (const auto& [b, x] : hv.parts) {
      if (b == top)
        value = x(0);
      else if (!is_zero_matrix(x))
        multiple = false;
    }
    if (multiple) h.eigenvalue = value;
    ModuleVector scaled_v = v;
    scaled_v *= -h.expected;
    h.residual = hv;
    h.residual += scaled_v;
    h.h_ok = h.residual.is_zero();
    h.xplus_ok = y.xplus(h.i, h.r).apply(v).is_zero();
    verdicts[k] = std::move(h);
  });
  rep.verdicts = std::move(verdicts);

  for (int i = 0; i < N; ++i) {
    const DrinfeldNode& d = rep.nodes[static_cast<std::size_t>(i)];
    const auto series = drinfeld_series(d.pi, y.point().hbar(), r_max + 1);
    bool ok = series[0] == Rational(1);
    for (int r = 0; r <= r_max && ok; ++r) {
      const auto& e = rep.verdicts[static_cast<std::size_t>(i * (r_max + 1) + r)].eigenvalue;
      ok = e && series[static_cast<std::size_t>(r + 1)] == y.point().hbar() * *e;
    }
    rep.series_ok.push_back(ok);
  }
  rep.pass = std::all_of(rep.verdicts.begin(), rep.verdicts.end(), [](const HwVerdict& h) { return h.h_ok && h.xplus_ok; }) &&
             std::all_of(rep.series_ok.begin(), rep.series_ok.end(), [](bool b) { return b; });
  return rep;
}

}  // namespace yangeval

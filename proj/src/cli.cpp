#include "yangeval/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "yangeval/errors.hpp"

namespace yangeval::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::int64_t get_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw DomainError("config field '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

Rational get_rational(const json& v, const std::string& key) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const Error&) {
      throw DomainError("config field '" + key + "' is not a rational string: " + v.get<std::string>());
    }
  }
  throw DomainError("config field '" + key + "' must be an integer or a rational string such as \"1/2\"");
}

int small_int(const json& v, const std::string& key) {
  const std::int64_t n = get_int(v, key);
  if (n < 0 || n > 1000) throw DomainError("config field '" + key + "' out of range");
  return static_cast<int>(n);
}

std::vector<Family> parse_family_list(std::string_view text) {
  std::vector<Family> out;
  std::set<Family> seen;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string_view item = text.substr(start, end - start);
    if (!item.empty()) {
      const Family f = parse_family(item);
      if (seen.insert(f).second) out.push_back(f);
    }
    start = end + 1;
  }
  if (out.empty()) throw DomainError("empty family list");
  return out;
}

ordered_json point_json(const ParamPoint& p) {
  return {{"N", p.N()},
          {"K", p.level()},
          {"mode", std::string(to_string(p.mode()))},
          {"eps1", p.eps1().str()},
          {"eps2", p.eps2().str()},
          {"hbar", p.hbar().str()},
          {"alpha", p.alpha().str()},
          {"constraint_satisfied", p.satisfies_constraint()},
          {"constraint_defect", p.constraint_defect().str()}};
}

ordered_json block_json(const BlockKey& k) { return {{"energy", k.energy}, {"weight_offset", k.weight}}; }

ordered_json weight_json(const HighestWeight& w) {
  ordered_json lam = ordered_json::array();
  for (const auto& x : w.lambda) lam.push_back(x.str());
  return {{"N", w.N()}, {"K", w.level}, {"lambda", lam}};
}

ordered_json vector_json(const TruncatedModule& m, const ModuleVector& v) {
  ordered_json parts = ordered_json::array();
  for (const auto& [b, x] : v.parts) {
    ordered_json entries = ordered_json::array();
    for (Eigen::Index k = 0; k < x.size(); ++k)
      if (!x(k).is_zero()) entries.push_back({k, x(k).str()});
    if (!entries.empty()) parts.push_back({{"block", block_json(m.block_key(b))}, {"entries", entries}});
  }
  return parts;
}

ordered_json report_json(const TruncatedModule& m, const RelationReport& r) {
  ordered_json j = {{"family", r.family},
                    {"i", r.i},
                    {"j", r.j},
                    {"status", r.pass ? "pass" : "fail"},
                    {"tested", r.tested},
                    {"residual_norm_is_zero", r.pass}};
  if (r.witness) {
    const Witness& w = *r.witness;
    j["witness"] = {{"variant", w.variant},
                    {"block", block_json(w.block)},
                    {"index", w.index},
                    {"label", w.label},
                    {"residual", vector_json(m, w.residual)}};
  }
  return j;
}

ParamPoint point_for(const JobConfig& c, const Rational& eps1) {
  const ParamPoint p = ParamPoint::make(c.weight.N(), eps1, c.weight.level, c.alpha, c.mode);
  if (!c.violate_constraint) return p;
  return ParamPoint::unconstrained(p.N(), p.eps1(), p.eps2() + Rational(1, 7), p.level(), p.alpha(), p.mode());
}

void require_ev_plus(const JobConfig& c, const char* command) {
  if (c.mode != EvalMode::EV_PLUS)
    throw DomainError(std::string(command) + " acts on L(Lambda) through ev+ and needs mode EV_PLUS");
}

}  // namespace

JobConfig parse_config(const json& j) {
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  static const std::set<std::string> known = {"N",     "lambda", "K",        "eps1",  "alpha", "mode", "depth",
                                              "headroom", "r_max", "families", "sweep", "seed",  "out"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw DomainError("unknown config field '" + key + "'");

  JobConfig c;
  if (!j.contains("lambda") || !j.at("lambda").is_array()) throw DomainError("config needs a 'lambda' list");
  for (const auto& x : j.at("lambda")) c.weight.lambda.push_back(get_rational(x, "lambda"));
  if (!j.contains("K")) throw DomainError("config needs the level 'K'");
  c.weight.level = get_int(j.at("K"), "K");
  if (j.contains("N") && get_int(j.at("N"), "N") != c.weight.N())
    throw DomainError("config field 'N' does not match the length of 'lambda'");
  if (j.contains("eps1")) c.eps1 = get_rational(j.at("eps1"), "eps1");
  if (j.contains("alpha")) c.alpha = get_rational(j.at("alpha"), "alpha");
  if (j.contains("mode")) {
    if (!j.at("mode").is_string()) throw DomainError("config field 'mode' must be a string");
    c.mode = parse_mode(j.at("mode").get<std::string>());
  }
  if (j.contains("depth")) c.depth = small_int(j.at("depth"), "depth");
  if (j.contains("headroom")) c.headroom = small_int(j.at("headroom"), "headroom");
  c.r_max = std::min(c.depth, 3);
  if (j.contains("r_max")) c.r_max = small_int(j.at("r_max"), "r_max");
  if (j.contains("families")) {
    const auto& f = j.at("families");
    if (f.is_string()) {
      c.families = parse_family_list(f.get<std::string>());
    } else if (f.is_array()) {
      std::string joined;
      for (const auto& x : f) {
        if (!x.is_string()) throw DomainError("config field 'families' must list names");
        joined += x.get<std::string>() + ",";
      }
      c.families = parse_family_list(joined);
    } else {
      throw DomainError("config field 'families' must be a list of names");
    }
  }
  if (j.contains("sweep")) c.sweep = small_int(j.at("sweep"), "sweep");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer() || j.at("seed").get<std::int64_t>() < 0)
      throw DomainError("config field 'seed' must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("out")) {
    if (!j.at("out").is_string()) throw DomainError("config field 'out' must be a path string");
    c.out = j.at("out").get<std::string>();
  }
  validate(c);
  return c;
}

void validate(const JobConfig& c) {
  c.weight.validate();
  if (c.depth < 0) throw DomainError("depth must be non-negative");
  if (c.headroom < 0 || c.headroom > c.depth)
    throw DomainError("headroom " + std::to_string(c.headroom) + " must lie in 0..depth (" + std::to_string(c.depth) +
                      ")");
  if (c.r_max < 0 || c.r_max > c.depth)
    throw DomainError("r_max " + std::to_string(c.r_max) + " exceeds the depth " + std::to_string(c.depth));
  if (c.families.empty()) throw DomainError("no relation families requested");
  (void)ParamPoint::make(c.weight.N(), c.eps1, c.weight.level, c.alpha, c.mode);
}

std::vector<ParamPoint> sweep_points(const JobConfig& c) {
  if (c.sweep == 0) return {point_for(c, c.eps1)};
  // Raw engine output keeps the sequence identical across standard libraries.
  std::mt19937_64 rng(c.seed);
  std::vector<ParamPoint> out;
  std::set<Rational> seen;
  while (static_cast<int>(out.size()) < c.sweep) {
    const auto num = static_cast<std::int64_t>(rng() % 19) - 9;
    const auto den = static_cast<std::int64_t>(rng() % 9) + 1;
    if (num == 0) continue;
    const Rational eps1(num, den);
    if (!seen.insert(eps1).second) continue;
    out.push_back(point_for(c, eps1));
  }
  return out;
}

ordered_json cmd_build(const JobConfig& c) {
  const auto m = TruncatedModule::build(c.weight, c.depth);
  ordered_json blocks = ordered_json::array();
  int total = 0;
  for (int b = 0; b < m->block_count(); ++b) {
    ordered_json e = block_json(m->block_key(b));
    e["dim"] = m->block_dim(b);
    total += m->block_dim(b);
    blocks.push_back(e);
  }
  ordered_json character = ordered_json::array();
  for (const auto& e : m->graded_character())
    character.push_back({{"weight_offset", e.weight_offset}, {"energy", e.energy}, {"dim", e.dim}});
  ordered_json j = {{"command", "build"}, {"weight", weight_json(c.weight)}, {"depth", c.depth}};
  j["blocks"] = blocks;
  j["total_dim"] = total;
  j["character"] = character;
  j["pass"] = true;
  return j;
}

ordered_json cmd_verify(const JobConfig& c) {
  const auto m = TruncatedModule::build(c.weight, c.depth);
  ordered_json families = ordered_json::array();
  for (Family f : c.families) families.push_back(std::string(to_string(f)));
  ordered_json runs = ordered_json::array();
  bool all = true;
  for (const ParamPoint& p : sweep_points(c)) {
    const YangianRealization y(m, p);
    ordered_json reports = ordered_json::array();
    bool pass = true;
    for (const auto& r : verify_family(y, c.families, c.headroom)) {
      pass = pass && r.pass;
      reports.push_back(report_json(*m, r));
    }
    all = all && pass;
    runs.push_back({{"params", point_json(p)}, {"pass", pass}, {"reports", reports}});
  }
  ordered_json j = {{"command", "verify"}, {"weight", weight_json(c.weight)}, {"depth", c.depth}};
  j["headroom"] = c.headroom;
  j["families"] = families;
  j["sweep"] = c.sweep;
  j["seed"] = c.seed;
  j["violate_constraint"] = c.violate_constraint;
  j["runs"] = runs;
  j["pass"] = all;
  return j;
}

ordered_json cmd_hw(const JobConfig& c) {
  const auto m = TruncatedModule::build(c.weight, c.depth);
  const ParamPoint p = point_for(c, c.eps1);
  const YangianRealization y(m, p);
  const HwReport rep = highest_weight_check(y, c.r_max);
  ordered_json nodes = ordered_json::array();
  for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
    const auto& n = rep.nodes[i];
    ordered_json pi = ordered_json::array();
    for (const auto& x : n.pi) pi.push_back(x.str());
    nodes.push_back({{"i", i}, {"a", n.a.str()}, {"pairing", n.pairing}, {"pi", pi}, {"series_ok", bool(rep.series_ok[i])}});
  }
  ordered_json verdicts = ordered_json::array();
  for (const auto& v : rep.verdicts) {
    ordered_json e = {{"i", v.i}, {"r", v.r}, {"expected", v.expected.str()}};
    e["eigenvalue"] = v.eigenvalue ? ordered_json(v.eigenvalue->str()) : ordered_json(nullptr);
    e["h_ok"] = v.h_ok;
    e["xplus_ok"] = v.xplus_ok;
    if (!v.h_ok) e["residual"] = vector_json(*m, v.residual);
    verdicts.push_back(e);
  }
  ordered_json j = {{"command", "hw"}, {"weight", weight_json(c.weight)}, {"depth", c.depth}};
  j["r_max"] = c.r_max;
  j["params"] = point_json(p);
  j["nodes"] = nodes;
  j["verdicts"] = verdicts;
  j["pass"] = rep.pass;
  return j;
}

ordered_json cmd_export_ops(const JobConfig& c) {
  const auto m = TruncatedModule::build(c.weight, c.depth);
  const ParamPoint p = point_for(c, c.eps1);
  const YangianRealization y(m, p);
  ordered_json blocks = ordered_json::array();
  for (int b = 0; b < m->block_count(); ++b) {
    ordered_json e = {{"index", b}};
    e.update(block_json(m->block_key(b)));
    e["dim"] = m->block_dim(b);
    blocks.push_back(e);
  }
  ordered_json ops = ordered_json::array();
  for (const YGen& g : all_generators(c.weight.N())) {
    const BlockOperator op = y.gen(g);
    ordered_json images = ordered_json::array();
    for (int b : m->blocks_up_to_energy(c.depth - op.peak())) {
      const auto& img = op.on_block(b);
      if (img.is_zero()) continue;
      ordered_json entries = ordered_json::array();
      for (int k = 0; k < img.matrix->outerSize(); ++k)
        for (QSparse::InnerIterator it(*img.matrix, k); it; ++it)
          if (!it.value().is_zero()) entries.push_back({it.row(), it.col(), it.value().str()});
      if (!entries.empty()) images.push_back({{"source", b}, {"target", img.target}, {"entries", entries}});
    }
    ops.push_back({{"generator", to_string(g)}, {"peak", op.peak()}, {"images", images}});
  }
  ordered_json j = {{"command", "export-ops"}, {"weight", weight_json(c.weight)}, {"depth", c.depth}};
  j["params"] = point_json(p);
  j["blocks"] = blocks;
  j["operators"] = ops;
  j["pass"] = true;
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Affine Yangian evaluation maps on truncated gl_N^ modules"};
  app.require_subcommand(1);
  std::string config_path, families, out_path;
  std::optional<int> depth, sweep;
  std::optional<std::uint64_t> seed;
  bool violate = false;
  for (const char* name : {"build", "verify", "hw", "export-ops"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON job configuration")->required();
    sub->add_option("--depth", depth, "Truncation depth D");
    sub->add_option("--families", families, "Comma-separated relation families");
    sub->add_option("--sweep", sweep, "Number of random eps1 values");
    sub->add_option("--seed", seed, "Sweep seed");
    sub->add_flag("--violate-constraint", violate, "Perturb eps2 off the central constraint");
    sub->add_option("--out", out_path, "Report path (default: stdout)");
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    std::ifstream in(config_path);
    if (!in) throw DomainError("cannot read config file " + config_path);
    json raw;
    try {
      raw = json::parse(in);
    } catch (const json::parse_error& e) {
      throw DomainError(std::string("config is not valid JSON: ") + e.what());
    }
    if (depth) raw["depth"] = *depth;
    if (!families.empty()) raw["families"] = families;
    if (sweep) raw["sweep"] = *sweep;
    if (seed) raw["seed"] = *seed;
    if (!out_path.empty()) raw["out"] = out_path;
    JobConfig c = parse_config(raw);
    c.violate_constraint = violate;
    if (command != "build") require_ev_plus(c, command.c_str());

    const auto start = std::chrono::steady_clock::now();
    ordered_json report;
    if (command == "build") report = cmd_build(c);
    else if (command == "verify") report = cmd_verify(c);
    else if (command == "hw") report = cmd_hw(c);
    else report = cmd_export_ops(c);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string text = report.dump(1) + "\n";
    if (c.out) {
      std::ofstream file(*c.out, std::ios::binary);
      if (!file) throw DomainError("cannot write " + *c.out);
      file << text;
    } else {
      out << text;
    }
    const bool pass = report.at("pass").get<bool>();
    std::ostringstream summary;
    summary << command << ": " << (pass ? "pass" : "FAIL");
    if (command == "build") summary << ", " << report.at("blocks").size() << " blocks, total dim " << report.at("total_dim");
    if (command == "verify") {
      int failed = 0, total = 0;
      for (const auto& r : report.at("runs"))
        for (const auto& x : r.at("reports")) {
          ++total;
          if (x.at("status") == "fail") ++failed;
        }
      summary << ", " << failed << " of " << total << " reports failed";
    }
    summary.setf(std::ios::fixed);
    summary.precision(2);
    summary << " (" << seconds << " s)";
    err << summary.str() << "\n";
    return pass ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace yangeval::cli

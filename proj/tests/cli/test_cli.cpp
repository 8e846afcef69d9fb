#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "yangeval/cli.hpp"
#include "yangeval/errors.hpp"

using namespace yangeval;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("yangeval_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_config(const std::string& name, const json& j) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << j.dump();
  return p.string();
}

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "yangeval");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const json base = {{"lambda", {1, 0, 0}}, {"K", 2}, {"eps1", "1/2"}, {"alpha", "0"}, {"depth", 3}};

}  // namespace

TEST_CASE("config parsing") {
  const cli::JobConfig c = cli::parse_config(base);
  CHECK(c.weight.N() == 3);
  CHECK(c.eps1 == Rational(1, 2));
  CHECK(c.r_max == 3);
  CHECK(c.families == all_families());

  json floats = base;
  floats["eps1"] = 0.5;
  CHECK_THROWS_AS(cli::parse_config(floats), DomainError);
  json unknown = base;
  unknown["epsilon"] = "1";
  CHECK_THROWS_AS(cli::parse_config(unknown), DomainError);
  json bad_n = base;
  bad_n["N"] = 4;
  CHECK_THROWS_AS(cli::parse_config(bad_n), DomainError);
  json fams = base;
  fams["families"] = {"serre", "HH", "hh"};
  CHECK(cli::parse_config(fams).families == std::vector<Family>{Family::SERRE, Family::HH});
  json rmax = base;
  rmax["r_max"] = 4;
  CHECK_THROWS_AS(cli::parse_config(rmax), DomainError);
}

TEST_CASE("sweep points are seeded and distinct") {
  json j = base;
  j["sweep"] = 3;
  j["seed"] = 11;
  const auto a = cli::sweep_points(cli::parse_config(j));
  const auto b = cli::sweep_points(cli::parse_config(j));
  REQUIRE(a.size() == 3);
  CHECK(a == b);
  CHECK(a[0].eps1() != a[1].eps1());
  CHECK(a[1].eps1() != a[2].eps1());
  for (const auto& p : a) CHECK(p.satisfies_constraint());
}

TEST_CASE("build: trivial weight has the top block of dim 1") {
  const std::string cfg = write_config("zero.json", {{"lambda", {0, 0, 0}}, {"K", 1}, {"depth", 2}});
  const Result r = run({"build", "--config", cfg});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("blocks").at(0) == json{{"energy", 0}, {"weight_offset", {0, 0, 0}}, {"dim", 1}});
}

TEST_CASE("build: character matches the golden file") {
  const std::string cfg = write_config("l100.json", base);
  const fs::path out = scratch() / "char.json";
  const Result r = run({"build", "--config", cfg, "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const json golden = read_json(fs::path(YANGEVAL_GOLDEN_DIR) / "char_n3_k2_l100_d3.json");
  CHECK(read_json(out).at("character") == golden.at("character"));
  const std::string first = slurp(out);
  REQUIRE(run({"build", "--config", cfg, "--out", out.string()}).code == 0);
  CHECK(slurp(out) == first);
}

TEST_CASE("build: dominance violation is rejected") {
  const std::string cfg = write_config("bad.json", {{"lambda", {0, 1, 0}}, {"K", 1}});
  const fs::path out = scratch() / "never.json";
  const Result r = run({"build", "--config", cfg, "--out", out.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(!fs::exists(out));
}

TEST_CASE("verify: serre only passes") {
  const std::string cfg = write_config("serre.json", base);
  const Result r = run({"verify", "--config", cfg, "--families", "serre"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("pass") == true);
  const auto& reports = j.at("runs").at(0).at("reports");
  CHECK(reports.size() == 6);
  for (const auto& x : reports) CHECK(x.at("family") == "SERRE");
  CHECK(j.at("runs").at(0).at("params").at("eps2") == "-5/4");
}

TEST_CASE("verify: violated constraint fails H1X at (1,0)") {
  const std::string cfg = write_config("violate.json", base);
  const Result r = run({"verify", "--config", cfg, "--families", "h1x", "--violate-constraint"});
  CHECK(r.code == 1);
  const json j = json::parse(r.out);
  const auto& run0 = j.at("runs").at(0);
  CHECK(run0.at("params").at("constraint_satisfied") == false);
  bool found = false;
  for (const auto& x : run0.at("reports"))
    if (x.at("i") == 1 && x.at("j") == 0) {
      found = true;
      CHECK(x.at("status") == "fail");
      CHECK(x.at("residual_norm_is_zero") == false);
      CHECK(!x.at("witness").at("residual").empty());
    }
  CHECK(found);
}

TEST_CASE("verify: exit code follows the reports") {
  const std::string cfg = write_config("all.json", base);
  const Result r = run({"verify", "--config", cfg});
  const json j = json::parse(r.out);
  bool all = true;
  for (const auto& x : j.at("runs").at(0).at("reports")) all = all && x.at("status") == "pass";
  CHECK(j.at("pass") == all);
  CHECK(r.code == (all ? 0 : 1));
}

TEST_CASE("verify: reports are byte-identical for a fixed seed") {
  const std::string cfg = write_config("sweep.json", base);
  const fs::path a = scratch() / "a.json", b = scratch() / "b.json";
  const std::vector<std::string> common = {"verify", "--config", cfg, "--families", "xx,h0x", "--sweep", "2", "--seed", "5"};
  auto with_out = [&](const fs::path& p) {
    auto v = common;
    v.push_back("--out");
    v.push_back(p.string());
    return v;
  };
  setenv("YANGEVAL_THREADS", "1", 1);
  REQUIRE(run(with_out(a)).code == 0);
  setenv("YANGEVAL_THREADS", "4", 1);
  REQUIRE(run(with_out(b)).code == 0);
  unsetenv("YANGEVAL_THREADS");
  CHECK(slurp(a) == slurp(b));
  CHECK(read_json(a).at("runs").size() == 2);
}

TEST_CASE("hw: spec point and Fock point") {
  const std::string cfg = write_config("hw.json", base);
  const Result r = run({"hw", "--config", cfg});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("nodes").at(1).at("a") == "-5/4");
  for (const auto& v : j.at("verdicts"))
    if (v.at("i") == 1 && v.at("r") == 2) CHECK(v.at("eigenvalue") == "25/16");

  // K hbar = -N eps1 gives hbar = -1 for N = 3, K = 1, eps1 = 1/3, so alpha = -hbar = 1.
  const std::string fock =
      write_config("fock.json", {{"lambda", {0, 0, 0}}, {"K", 1}, {"eps1", "1/3"}, {"alpha", "1"}, {"depth", 2}});
  const Result f = run({"hw", "--config", fock});
  REQUIRE(f.code == 0);
  const json fj = json::parse(f.out);
  CHECK(fj.at("params").at("hbar") == "-1");
  CHECK(fj.at("nodes").at(0).at("pi") == json{"0", "1"});
  CHECK(fj.at("nodes").at(1).at("pi") == json{"1"});
  CHECK(fj.at("nodes").at(2).at("pi") == json{"1"});
}

TEST_CASE("hw: r_max beyond the depth is a clean error") {
  json j = base;
  j["r_max"] = 3;
  const std::string cfg = write_config("rmax.json", j);
  const fs::path out = scratch() / "hw_never.json";
  const Result r = run({"hw", "--config", cfg, "--depth", "2", "--out", out.string()});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("r_max") != std::string::npos);
  CHECK(!fs::exists(out));
}

TEST_CASE("export-ops writes block matrices") {
  const std::string cfg = write_config("ops.json", {{"lambda", {1, 0, 0}}, {"K", 2}, {"eps1", "1/2"}, {"depth", 1}, {"headroom", 0}});
  const Result r = run({"export-ops", "--config", cfg});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("operators").size() == all_generators(3).size());
  bool any = false;
  for (const auto& op : j.at("operators"))
    for (const auto& img : op.at("images")) any = any || !img.at("entries").empty();
  CHECK(any);
}

TEST_CASE("command line errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"verify", "--config", (scratch() / "missing.json").string()}).code == 2);
  const std::string cfg = write_config("ev.json", {{"lambda", {1, 0, 0}}, {"K", 2}, {"mode", "EV"}});
  CHECK(run({"hw", "--config", cfg}).code == 2);
  CHECK(run({"verify", "--config", write_config("fam.json", base), "--families", "nope"}).code == 2);
}

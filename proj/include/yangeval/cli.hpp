#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "yangeval/verify.hpp"

namespace yangeval::cli {

/// One batch job. Rationals come from JSON strings or integers; floats are rejected.
struct JobConfig {
  HighestWeight weight;
  Rational eps1 = Rational(1, 2);
  Rational alpha;
  EvalMode mode = EvalMode::EV_PLUS;
  int depth = 3;
  int headroom = 2;
  int r_max = 3;
  std::vector<Family> families = all_families();
  int sweep = 0;
  std::uint64_t seed = 1;
  bool violate_constraint = false;
  std::optional<std::string> out;
};

/// Parses and validates; throws DomainError on any invalid field.
JobConfig parse_config(const nlohmann::json& j);

/// Rejects configurations that violate HighestWeight or ParamPoint invariants.
void validate(const JobConfig& c);

/// The parameter points a verify run sweeps over, in order.
std::vector<ParamPoint> sweep_points(const JobConfig& c);

nlohmann::ordered_json cmd_build(const JobConfig& c);
nlohmann::ordered_json cmd_verify(const JobConfig& c);
nlohmann::ordered_json cmd_hw(const JobConfig& c);
nlohmann::ordered_json cmd_export_ops(const JobConfig& c);

/// Full command line (args[0] is the program name). Returns 0 iff the command
/// succeeded and every check passed, 1 on a failed check, 2 on invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace yangeval::cli

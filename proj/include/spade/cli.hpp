#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spade/contour.hpp"
#include "spade/expression.hpp"

namespace spade::cli {

inline constexpr int kSchemaVersion = 1;

// Exit statuses.
enum Exit : int { kOk = 0, kConfig = 2, kAssumption = 3, kNumerical = 4, kVerify = 5 };

struct Thresholds {
  double szego_jump = 1e-25;
  double prop1 = 1e-25;
  std::optional<double> orthogonality;  // default: rank_tol
  double boundary = 1e-20;
};

struct VerifySettings {
  std::vector<cd> K;                   // empty: default test points
  std::optional<int> sigma_override;   // negative controls only
  Thresholds thresholds;
  std::optional<double> prop1_radius;  // empty: auto
  int samples = 100;
  bool boundary = false;
};

struct ValueGrid {
  double re_min = -2, re_max = 2, im_min = -2, im_max = 2;
  int nx = 9, ny = 9;
};

struct RunConfig {
  ArcPath arc = ArcPath::segment();
  DensitySpec density;
  std::optional<SchemeSpec> scheme;
  std::optional<int> n, m;
  std::vector<int> n_list;
  int bits = 256;
  int quad_nodes = 2048;
  GridSpec grid;
  std::vector<cd> value_points;  // explicit points win over the grid
  ValueGrid value_grid;
  VerifySettings verify;
  std::string output_dir = ".";
  std::string canonical;  // sorted-key dump of the input, hashed with bits and nodes
};

// Throws Error(ConfigError) (or ParseError from the density) on any problem,
// including unknown fields.
RunConfig parse_config(const std::string& text);

// Applies command-line overrides and validates the precision settings.
void apply_overrides(RunConfig& cfg, std::optional<int> bits, std::optional<int> nodes,
                     std::optional<std::string> out);

std::uint64_t fnv1a(const std::string& bytes);
std::string config_hash(const RunConfig& cfg);  // 16 hex digits

int exit_code_for(ErrorCode code);

int cmd_trace(const RunConfig& cfg);
int cmd_approximate(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_figure(const RunConfig& cfg);

// Full front end: parses argv, runs, maps errors to exit codes.
int run(int argc, char** argv);

}  // namespace spade::cli

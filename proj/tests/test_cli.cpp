#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spade/cli.hpp"

using namespace spade;
namespace fs = std::filesystem;

namespace {

const char* kA = R"({
  "schema_version": 1,
  "arc": {"kind": "segment"},
  "density": "1",
  "scheme": {"base": [{"point": "inf", "multiplicity": 1}], "n": 3, "n_list": [2, 3]},
  "values": {"points": [[2, 0], [0, 1.5]]}
})";

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("spade_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run_cli(std::vector<std::string> args) {
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("config parsing and hashing") {
  auto cfg = cli::parse_config(kA);
  CHECK(cfg.n == 3);
  CHECK(cfg.bits == 256);
  auto h = cli::config_hash(cfg);
  CHECK(h.size() == 16);
  cli::apply_overrides(cfg, 512, std::nullopt, std::nullopt);
  CHECK(cli::config_hash(cfg) != h);
  CHECK(cli::fnv1a("") == 0xcbf29ce484222325ULL);
}

TEST_CASE("config errors") {
  auto code = [](const std::string& text) {
    try {
      cli::parse_config(text);
    } catch (const Error& e) {
      return cli::exit_code_for(e.code());
    }
    return 0;
  };
  CHECK(code(R"({"schema_version": 1, "arc": {"kind": "segment"}, "density": "1", "extra": 0})") == cli::kConfig);
  CHECK(code(R"({"schema_version": 2, "arc": {"kind": "segment"}, "density": "1"})") == cli::kConfig);
  CHECK(code(R"({"schema_version": 1, "arc": {"kind": "segment"}, "density": "s+"})") == cli::kConfig);
  CHECK(code("not json") == cli::kConfig);
  CHECK(code(R"({"schema_version": 1, "arc": {"kind": "segment"}, "density": "1",
                 "precision": {"bits": 1024}})") == cli::kConfig);
  CHECK(cli::exit_code_for(ErrorCode::SelfIntersection) == cli::kAssumption);
  CHECK(cli::exit_code_for(ErrorCode::NonConvergence) == cli::kNumerical);
}

TEST_CASE("outputs are byte-identical across runs") {
  auto dir = scratch("det");
  std::ofstream(dir / "a.json") << kA;
  for (const char* cmd : {"trace", "approximate", "figure"}) {
    CAPTURE(cmd);
    const auto o1 = dir / (std::string(cmd) + "1"), o2 = dir / (std::string(cmd) + "2");
    REQUIRE(run_cli({"spade", cmd, "--config", (dir / "a.json").string(), "--out", o1.string()}) == 0);
    REQUIRE(run_cli({"spade", cmd, "--config", (dir / "a.json").string(), "--out", o2.string()}) == 0);
    int files = 0;
    for (auto& f : fs::directory_iterator(o1)) {
      ++files;
      CHECK(slurp(f.path()) == slurp(o2 / f.path().filename()));
    }
    CHECK(files > 0);
  }
  auto poles = slurp(dir / "approximate1" / "poles.csv");
  CHECK(poles.rfind("# spade config_hash=", 0) == 0);
  CHECK(fs::exists(dir / "trace1" / "regions.json"));
  CHECK(fs::exists(dir / "figure1" / "figure.svg"));
}

TEST_CASE("verify and exit codes") {
  auto dir = scratch("verify");
  std::ofstream(dir / "a.json") << kA;
  CHECK(run_cli({"spade", "verify", "--config", (dir / "a.json").string(), "--out", (dir / "ok").string()}) == 0);
  CHECK(fs::exists(dir / "ok" / "report.json"));

  std::ofstream(dir / "bad.json") << R"({"schema_version": 1, "arc": {"kind": "segment"}, "density": "1", "x": 1})";
  CHECK(run_cli({"spade", "trace", "--config", (dir / "bad.json").string(), "--out", (dir / "b").string()}) ==
        cli::kConfig);
  CHECK(run_cli({"spade", "trace", "--config", (dir / "missing.json").string()}) == cli::kConfig);
  CHECK(run_cli({"spade", "trace", "--config", (dir / "a.json").string(), "--bits", "2048"}) == cli::kConfig);

  std::ofstream(dir / "b5.json") << R"({"schema_version": 1, "arc": {"kind": "lower_semicircle"}, "density": "1",
    "scheme": {"base": [{"point": "inf", "multiplicity": 5}, {"point": [0, -0.75], "multiplicity": 1}]}})";
  CHECK(run_cli({"spade", "trace", "--config", (dir / "b5.json").string(), "--out", (dir / "b5").string()}) ==
        cli::kAssumption);

  // A wrong sigma makes the jump check fail.
  std::string neg = kA;
  neg.insert(neg.rfind('}'), R"(, "verify": {"sigma_override": -1})");
  std::string negd = neg;
  negd.replace(negd.find("\"1\""), 3, "\"exp(s)\"");
  std::ofstream(dir / "neg.json") << negd;
  CHECK(run_cli({"spade", "verify", "--config", (dir / "neg.json").string(), "--out", (dir / "neg").string()}) ==
        cli::kVerify);
}

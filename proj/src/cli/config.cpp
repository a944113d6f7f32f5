#include <cstdio>
#include <set>

#include <json.hpp>

#include "spade/cli.hpp"

namespace spade::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) fail("unknown field '" + it.key() + "' in " + where);
}

double number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      std::size_t used = 0;
      const std::string s = j.get<std::string>();
      double x = std::stod(s, &used);
      if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
  }
  fail(where + " must be a number or a decimal string");
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + " must be an integer");
  return j.get<int>();
}

cd complex_value(const json& j, const std::string& where) {
  if (j.is_array() && j.size() == 2) return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
  if (j.is_number()) return {j.get<double>(), 0};
  fail(where + " must be [re, im]");
}

InterpPoint point(const json& j, const std::string& where) {
  if (j.is_string() && (j == "inf" || j == "infinity")) return InterpPoint::infinity();
  return InterpPoint::finite(complex_value(j, where));
}

Disk disk(const json& j, const std::string& where) {
  only_keys(j, where, {"center", "radius"});
  if (!j.contains("center") || !j.contains("radius")) fail(where + " needs center and radius");
  Disk d{complex_value(j["center"], where + ".center"), number(j["radius"], where + ".radius")};
  if (!(d.radius > 0)) fail(where + ".radius must be positive");
  return d;
}

ArcPath arc(const json& j) {
  only_keys(j, "arc", {"kind", "height", "x_star", "control"});
  if (!j.contains("kind") || !j["kind"].is_string()) fail("arc.kind is required");
  const std::string kind = j["kind"];
  auto need = [&](const char* key) {
    if (!j.contains(key)) fail(std::string("arc.") + key + " is required for kind " + kind);
    return j[key];
  };
  try {
    if (kind == "segment") return ArcPath::segment();
    if (kind == "lower_semicircle") return ArcPath::lower_semicircle();
    if (kind == "circular_arc") return ArcPath::circular_arc(number(need("height"), "arc.height"));
    if (kind == "teardrop") return ArcPath::teardrop(number(need("x_star"), "arc.x_star"));
    if (kind == "bezier") {
      std::vector<cd> ctrl;
      const json& c = need("control");
      if (!c.is_array()) fail("arc.control must be a list of points");
      for (std::size_t k = 0; k < c.size(); ++k) ctrl.push_back(complex_value(c[k], "arc.control"));
      return ArcPath::bezier(ctrl);
    }
  } catch (const Error& e) {
    fail(std::string("arc: ") + e.what());
  }
  fail("unknown arc kind '" + kind + "'");
}

DensitySpec density(const json& j) {
  if (j.is_string()) return DensitySpec::entire(j.get<std::string>());
  only_keys(j, "density", {"expression", "within", "excluded"});
  if (!j.contains("expression") || !j["expression"].is_string()) fail("density.expression is required");
  DensitySpec d = DensitySpec::entire(j["expression"].get<std::string>());
  if (j.contains("within")) d.region.within = disk(j["within"], "density.within");
  if (j.contains("excluded")) {
    if (!j["excluded"].is_array()) fail("density.excluded must be a list");
    for (auto& x : j["excluded"]) d.region.excluded.push_back(disk(x, "density.excluded"));
  }
  return d;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  only_keys(j, "config",
            {"schema_version", "arc", "density", "scheme", "precision", "grid", "values", "verify", "output_dir"});
  if (!j.contains("schema_version") || integer(j["schema_version"], "schema_version") != kSchemaVersion)
    fail("schema_version must be " + std::to_string(kSchemaVersion));
  if (!j.contains("arc")) fail("arc is required");
  if (!j.contains("density")) fail("density is required");

  RunConfig cfg;
  cfg.arc = arc(j["arc"]);
  cfg.density = density(j["density"]);

  if (j.contains("scheme")) {
    const json& s = j["scheme"];
    only_keys(s, "scheme", {"base", "enumeration", "n", "m", "n_list"});
    if (!s.contains("base") || !s["base"].is_array() || s["base"].empty()) fail("scheme.base must be a non-empty list");
    InterpolationMultiSet base;
    for (auto& e : s["base"]) {
      only_keys(e, "scheme.base entry", {"point", "multiplicity"});
      if (!e.contains("point")) fail("scheme.base entry needs a point");
      int mult = e.contains("multiplicity") ? integer(e["multiplicity"], "multiplicity") : 1;
      if (mult < 1) fail("multiplicity must be positive");
      base.add(point(e["point"], "scheme.base.point"), mult);
    }
    std::vector<InterpPoint> order;
    if (s.contains("enumeration")) {
      if (!s["enumeration"].is_array()) fail("scheme.enumeration must be a list");
      for (auto& p : s["enumeration"]) order.push_back(point(p, "scheme.enumeration"));
    }
    try {
      cfg.scheme.emplace(base, order);
    } catch (const Error& e) {
      fail(std::string("scheme: ") + e.what());
    }
    if (s.contains("n")) cfg.n = integer(s["n"], "scheme.n");
    if (s.contains("m")) cfg.m = integer(s["m"], "scheme.m");
    if (s.contains("n_list")) {
      if (!s["n_list"].is_array()) fail("scheme.n_list must be a list");
      for (auto& x : s["n_list"]) cfg.n_list.push_back(integer(x, "scheme.n_list"));
    }
    if (cfg.n && *cfg.n < 0) fail("scheme.n must be >= 0");
    for (int x : cfg.n_list)
      if (x < 0) fail("scheme.n_list entries must be >= 0");
    if (cfg.m && cfg.n && *cfg.m < *cfg.n - 1) fail("scheme.m must be >= n - 1");
  }

  if (j.contains("precision")) {
    const json& p = j["precision"];
    only_keys(p, "precision", {"bits", "quad_nodes"});
    if (p.contains("bits")) cfg.bits = integer(p["bits"], "precision.bits");
    if (p.contains("quad_nodes")) cfg.quad_nodes = integer(p["quad_nodes"], "precision.quad_nodes");
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    only_keys(g, "grid", {"nx", "ny", "refine_passes", "min_component_nodes"});
    if (g.contains("nx")) cfg.grid.nx = integer(g["nx"], "grid.nx");
    if (g.contains("ny")) cfg.grid.ny = integer(g["ny"], "grid.ny");
    if (g.contains("refine_passes")) cfg.grid.refine_passes = integer(g["refine_passes"], "grid.refine_passes");
    if (g.contains("min_component_nodes"))
      cfg.grid.min_component_nodes = integer(g["min_component_nodes"], "grid.min_component_nodes");
    if (cfg.grid.nx < 16 || cfg.grid.ny < 16) fail("grid.nx and grid.ny must be >= 16");
  }
  if (j.contains("values")) {
    const json& v = j["values"];
    only_keys(v, "values", {"points", "grid"});
    if (v.contains("points")) {
      if (!v["points"].is_array()) fail("values.points must be a list");
      for (auto& p : v["points"]) cfg.value_points.push_back(complex_value(p, "values.points"));
    }
    if (v.contains("grid")) {
      const json& g = v["grid"];
      only_keys(g, "values.grid", {"re", "im", "nx", "ny"});
      auto range = [&](const char* key, double& lo, double& hi) {
        if (!g.contains(key)) return;
        if (!g[key].is_array() || g[key].size() != 2) fail(std::string("values.grid.") + key + " must be [lo, hi]");
        lo = number(g[key][0], "values.grid");
        hi = number(g[key][1], "values.grid");
      };
      range("re", cfg.value_grid.re_min, cfg.value_grid.re_max);
      range("im", cfg.value_grid.im_min, cfg.value_grid.im_max);
      if (g.contains("nx")) cfg.value_grid.nx = integer(g["nx"], "values.grid.nx");
      if (g.contains("ny")) cfg.value_grid.ny = integer(g["ny"], "values.grid.ny");
      if (cfg.value_grid.nx < 1 || cfg.value_grid.ny < 1) fail("values.grid sizes must be positive");
    }
  }
  if (j.contains("verify")) {
    const json& v = j["verify"];
    only_keys(v, "verify", {"K", "sigma_override", "thresholds", "prop1_radius", "samples", "boundary"});
    if (v.contains("K")) {
      if (!v["K"].is_array()) fail("verify.K must be a list");
      for (auto& p : v["K"]) cfg.verify.K.push_back(complex_value(p, "verify.K"));
    }
    if (v.contains("sigma_override")) {
      int s = integer(v["sigma_override"], "verify.sigma_override");
      if (s != 1 && s != -1) fail("verify.sigma_override must be +1 or -1");
      cfg.verify.sigma_override = s;
    }
    if (v.contains("thresholds")) {
      const json& t = v["thresholds"];
      only_keys(t, "verify.thresholds", {"szego_jump", "prop1", "orthogonality", "boundary"});
      auto& th = cfg.verify.thresholds;
      if (t.contains("szego_jump")) th.szego_jump = number(t["szego_jump"], "thresholds.szego_jump");
      if (t.contains("prop1")) th.prop1 = number(t["prop1"], "thresholds.prop1");
      if (t.contains("orthogonality")) th.orthogonality = number(t["orthogonality"], "thresholds.orthogonality");
      if (t.contains("boundary")) th.boundary = number(t["boundary"], "thresholds.boundary");
    }
    if (v.contains("prop1_radius")) {
      const json& r = v["prop1_radius"];
      if (r.is_string() && r == "auto")
        cfg.verify.prop1_radius.reset();
      else
        cfg.verify.prop1_radius = number(r, "verify.prop1_radius");
      if (cfg.verify.prop1_radius && !(*cfg.verify.prop1_radius > 0)) fail("verify.prop1_radius must be positive");
    }
    if (v.contains("samples")) cfg.verify.samples = integer(v["samples"], "verify.samples");
    if (cfg.verify.samples < 1) fail("verify.samples must be positive");
    if (v.contains("boundary")) {
      if (!v["boundary"].is_boolean()) fail("verify.boundary must be true or false");
      cfg.verify.boundary = v["boundary"].get<bool>();
    }
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) fail("output_dir must be a string");
    cfg.output_dir = j["output_dir"].get<std::string>();
  }
  cfg.canonical = j.dump();
  try {
    make_context(cfg.bits, cfg.quad_nodes);
    working_bits(cfg.bits);
  } catch (const Error& e) {
    fail(std::string("precision: ") + e.what());
  }
  return cfg;
}

void apply_overrides(RunConfig& cfg, std::optional<int> bits, std::optional<int> nodes,
                     std::optional<std::string> out) {
  if (bits) cfg.bits = *bits;
  if (nodes) cfg.quad_nodes = *nodes;
  if (out) cfg.output_dir = *out;
  try {
    make_context(cfg.bits, cfg.quad_nodes);
    working_bits(cfg.bits);
  } catch (const Error& e) {
    fail(std::string("precision: ") + e.what());
  }
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string config_hash(const RunConfig& cfg) {
  const std::string key = cfg.canonical + "|bits=" + std::to_string(cfg.bits) +
                          "|nodes=" + std::to_string(cfg.quad_nodes);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(key)));
  return buf;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArc:
    case ErrorCode::InsufficientPrecision:
    case ErrorCode::UnsupportedPrecision:
      return kConfig;
    case ErrorCode::AssumptionViolated:
    case ErrorCode::SelfIntersection:
    case ErrorCode::ZeroDensity:
    case ErrorCode::DomainViolation:
    case ErrorCode::GeometryViolation:
    case ErrorCode::PoleAtOrigin:
      return kAssumption;
    default:
      return kNumerical;
  }
}

}  // namespace spade::cli

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spade/asymptotics.hpp"
#include "spade/cli.hpp"

namespace spade::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", x);
  return buf;
}

std::string fmt6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

template <class Real>
ojson cjson(const cplx<Real>& z) {
  return ojson::array({format_real(Real(re(z))), format_real(Real(im(z)))});
}

ojson cjson(cd z) { return ojson::array({fmt(z.real()), fmt(z.imag())}); }

class Writer {
 public:
  explicit Writer(const RunConfig& cfg)
      : dir_(cfg.output_dir), hash_(config_hash(cfg)), bits_(cfg.bits), nodes_(cfg.quad_nodes) {
    fs::create_directories(dir_);
  }

  std::string csv_header() const {
    return "# spade config_hash=" + hash_ + " bits=" + std::to_string(bits_) + " nodes=" + std::to_string(nodes_) +
           "\n";
  }

  ojson json_header() const {
    ojson h;
    h["config_hash"] = hash_;
    h["bits"] = bits_;
    h["quad_nodes"] = nodes_;
    h["schema_version"] = kSchemaVersion;
    return h;
  }

  void write(const std::string& name, const std::string& content) const {
    std::ofstream f(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::ConfigError, "cannot write " + (dir_ / name).string());
    f << content;
  }

  void write_json(const std::string& name, const ojson& body) const {
    ojson j;
    j["header"] = json_header();
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    write(name, j.dump(2) + "\n");
  }

  const std::string& hash() const { return hash_; }

 private:
  fs::path dir_;
  std::string hash_;
  int bits_, nodes_;
};

const SchemeSpec& need_scheme(const RunConfig& cfg) {
  if (!cfg.scheme) throw Error(ErrorCode::ConfigError, "this command needs a scheme");
  return *cfg.scheme;
}

SymmetricContour trace(const RunConfig& cfg) { return build_symmetric_contour(need_scheme(cfg), cfg.arc, cfg.grid); }

std::vector<int> n_values(const RunConfig& cfg) {
  if (!cfg.n_list.empty()) return cfg.n_list;
  if (cfg.n) return {*cfg.n};
  throw Error(ErrorCode::ConfigError, "scheme.n or scheme.n_list is required");
}

std::vector<cd> value_points(const RunConfig& cfg) {
  if (!cfg.value_points.empty()) return cfg.value_points;
  std::vector<cd> pts;
  const auto& g = cfg.value_grid;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.nx > 1 ? g.re_min + (g.re_max - g.re_min) * i / (g.nx - 1) : g.re_min;
      const double y = g.ny > 1 ? g.im_min + (g.im_max - g.im_min) * j / (g.ny - 1) : g.im_min;
      pts.push_back({x, y});
    }
  return pts;
}

template <class Real>
struct Pipeline {
  SymmetricContour sc;
  std::shared_ptr<const DiscretizedContour<Real>> dc;
  std::shared_ptr<WeightedContour<Real>> wc;

  Pipeline(const RunConfig& cfg, std::optional<int> sigma_override = std::nullopt) : sc(trace(cfg)) {
    dc = DiscretizedContour<Real>::build(sc, make_context(cfg.bits, cfg.quad_nodes));
    wc = std::make_shared<WeightedContour<Real>>(dc, cfg.density, sigma_override);
  }
};

template <class Real>
int approximate(const RunConfig& cfg) {
  using C = cplx<Real>;
  if (!cfg.n) throw Error(ErrorCode::ConfigError, "scheme.n is required for approximate");
  const int n = *cfg.n, m = cfg.m.value_or(n);
  Pipeline<Real> P(cfg);
  auto ps = solve_pade(*P.wc, need_scheme(cfg), m, n);
  SecondKind<Real> sk(P.wc, ps);
  Writer out(cfg);

  std::ostringstream poles;
  poles << out.csv_header() << "index,re,im\n";
  for (std::size_t k = 0; k < ps.poles.size(); ++k)
    poles << k << "," << format_real(Real(re(ps.poles[k]))) << "," << format_real(Real(im(ps.poles[k]))) << "\n";
  out.write("poles.csv", poles.str());

  std::ostringstream vals;
  vals << out.csv_header() << "z_re,z_im,approximant_re,approximant_im,markov_re,markov_im,status\n";
  for (cd zd : value_points(cfg)) {
    vals << fmt(zd.real()) << "," << fmt(zd.imag()) << ",";
    try {
      const C z = lift<Real>(zd);
      const C a = sk.approximant(z), r = P.wc->markov(z);
      vals << format_real(Real(re(a))) << "," << format_real(Real(im(a))) << "," << format_real(Real(re(r))) << ","
           << format_real(Real(im(r))) << ",ok\n";
    } catch (const Error& e) {
      vals << ",,,," << to_string(e.code()) << "\n";
    }
  }
  out.write("values.csv", vals.str());

  ojson sol;
  sol["m"] = ps.m;
  sol["n"] = ps.n;
  sol["degree"] = ps.q.degree();
  sol["rank_deficiency"] = ps.rank_deficiency;
  sol["sigma"] = P.sc.sigma;
  ojson mu = ojson::array(), q = ojson::array(), p = ojson::array(), res = ojson::array(), pl = ojson::array();
  for (auto& x : ps.moments) mu.push_back(cjson<Real>(x));
  for (int k = 0; k <= ps.q.degree(); ++k) q.push_back(cjson<Real>(ps.q[k]));
  auto pc = sk.numerator_coefficients();
  for (int k = 0; k <= pc.degree(); ++k) p.push_back(cjson<Real>(pc[k]));
  for (double r : ps.orthogonality_residual) res.push_back(r);
  for (auto& x : ps.poles) pl.push_back(cjson<Real>(x));
  sol["moments"] = mu;
  sol["q"] = q;
  sol["p"] = p;
  sol["orthogonality_residual"] = res;
  sol["poles"] = pl;
  out.write_json("solution.json", sol);
  return kOk;
}

template <class Real>
int verify(const RunConfig& cfg) {
  const auto& scheme = need_scheme(cfg);
  const auto& vs = cfg.verify;
  Pipeline<Real> P(cfg, vs.sigma_override);
  auto se = std::make_shared<SzegoEvaluator<Real>>(P.wc);
  const double orth_tol = vs.thresholds.orthogonality.value_or(P.dc->context().rank_tol);
  std::vector<std::string> failed;
  ojson rep;
  rep["sigma"] = P.sc.sigma;
  if (vs.sigma_override) rep["sigma_override"] = *vs.sigma_override;

  // Szego jumps.
  {
    ojson j = ojson::array();
    double worst = 0;
    for (auto& d : verify_szego_jumps(*se, vs.samples)) {
      j.push_back({{"component", d.component}, {"max_defect", d.max_defect}});
      worst = std::max(worst, d.max_defect);
    }
    const bool pass = worst <= vs.thresholds.szego_jump;
    rep["szego_jump"] = {{"threshold", vs.thresholds.szego_jump}, {"max_defect", worst}, {"pass", pass},
                         {"components", j}};
    if (!pass) failed.push_back("szego_jump");
  }

  // Asymptotics and orthogonality.
  const std::vector<int> ns = n_values(cfg);
  const std::vector<cd> K = vs.K.empty() ? default_test_points(P.sc, scheme.base()) : vs.K;
  auto ar = convergence_report<Real>(se, scheme, ns, K);
  {
    ojson rows = ojson::array(), kj = ojson::array();
    double worst = 0;
    bool row_error = false;
    for (cd z : K) kj.push_back(cjson(z));
    for (auto& r : ar.rows) {
      ojson row = {{"n", r.n}, {"degree", r.degree}, {"dev_q", r.dev1}, {"dev_R", r.dev2}, {"dev_error", r.dev3},
                   {"orthogonality", r.orthogonality}};
      if (!r.error.empty()) {
        row["error"] = r.error;
        row_error = true;
      }
      rows.push_back(row);
      worst = std::max(worst, r.orthogonality);
    }
    rep["asymptotics"] = {{"K", kj},
                          {"rows", rows},
                          {"slopes", {ar.slope1, ar.slope2, ar.slope3}},
                          {"monotone", {ar.monotone1, ar.monotone2, ar.monotone3}}};
    const bool pass = worst <= orth_tol && !row_error;
    rep["orthogonality"] = {{"threshold", orth_tol}, {"max_residual", worst}, {"pass", pass}};
    if (!pass) failed.push_back("orthogonality");
  }

  // Continuation check at each base point, plus the U_b negative control.
  {
    ArcTransform<Real> tl(cfg.arc, cfg.density, cfg.quad_nodes);
    ojson pts = ojson::array();
    bool pass = true;
    for (auto& e : scheme.base().entries()) {
      const double r = vs.prop1_radius.value_or(prop1_auto_radius(e.point, P.sc, cfg.arc));
      ojson pj = {{"point", e.point.label()}, {"radius", r}};
      try {
        const double d = prop1_check(e.point, r, *P.wc, tl, cfg.arc);
        pj["defect"] = d;
        if (!(d <= vs.thresholds.prop1)) pass = false;
      } catch (const Error& err) {
        pj["error"] = err.what();
        pass = false;
      }
      pts.push_back(pj);
    }
    ojson pr = {{"threshold", vs.thresholds.prop1}, {"points", pts}, {"pass", pass}};
    if (auto nc = prop1_negative_control(*P.wc, tl, cfg.arc))
      pr["negative_control"] = {{"z", cjson(nc->z)}, {"defect", nc->defect}, {"expected", nc->expected}};
    rep["prop1"] = pr;
    if (!pass) failed.push_back("prop1");
  }

  if (vs.boundary) {
    ojson rows = ojson::array();
    double worst = 0;
    for (int n : ns) {
      OuterFunction<Real> of(se, scheme, n);
      const double d = boundary_defect(of, vs.samples);
      rows.push_back({{"n", n}, {"defect", d}});
      worst = std::max(worst, d);
    }
    const bool pass = worst <= vs.thresholds.boundary;
    rep["boundary"] = {{"threshold", vs.thresholds.boundary}, {"rows", rows}, {"pass", pass}};
    if (!pass) failed.push_back("boundary");
  }

  rep["failed"] = failed;
  Writer(cfg).write_json("report.json", rep);
  if (!failed.empty()) {
    std::cerr << "spade: verification failed: " << failed.front() << "\n";
    return kVerify;
  }
  return kOk;
}

struct Box {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  void add(cd z) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  }
};

std::string svg_path(const std::vector<cd>& pts, bool closed, const std::function<cd(cd)>& px) {
  std::string d;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    cd p = px(pts[k]);
    d += (k ? " L" : "M") + fmt6(p.real()) + "," + fmt6(p.imag());
  }
  if (closed) d += " Z";
  return d;
}

template <class Real>
std::vector<cd> figure_poles(const RunConfig& cfg, const SymmetricContour& sc) {
  auto dc = DiscretizedContour<Real>::build(sc, make_context(cfg.bits, cfg.quad_nodes));
  WeightedContour<Real> wc(dc, cfg.density);
  auto ps = solve_pade(wc, need_scheme(cfg), cfg.m.value_or(*cfg.n), *cfg.n);
  std::vector<cd> out;
  for (auto& p : ps.poles) out.push_back(to_cd(p));
  return out;
}

}  // namespace

int cmd_trace(const RunConfig& cfg) {
  SymmetricContour sc = trace(cfg);
  Writer out(cfg);
  std::ostringstream g;
  g << out.csv_header() << "component_index,re,im\n";
  for (auto& c : sc.gamma.components)
    for (cd t : c.nodes) g << c.index << "," << fmt(t.real()) << "," << fmt(t.imag()) << "\n";
  out.write("gamma.csv", g.str());

  std::ostringstream d;
  d << out.csv_header() << "component_index,re,im\n";
  for (cd s : sc.delta0) d << 0 << "," << fmt(s.real()) << "," << fmt(s.imag()) << "\n";
  for (std::size_t l = 0; l < sc.loops.size(); ++l)
    for (cd s : sc.loops[l]) d << l + 1 << "," << fmt(s.real()) << "," << fmt(s.imag()) << "\n";
  out.write("delta.csv", d.str());

  ojson r;
  r["sigma"] = sc.sigma;
  r["gamma_components"] = sc.gamma.components.size();
  r["delta_components"] = sc.components();
  r["M_estimate"] = sc.gamma.M_estimate;
  ojson loops = ojson::array();
  for (std::size_t l = 0; l < sc.loops.size(); ++l)
    loops.push_back({{"index", l + 1}, {"orientation", sc.loop_orientation[l] > 0 ? "ccw" : "cw"}});
  r["loops"] = loops;
  ojson regs = ojson::array();
  for (auto& x : sc.regions.regions)
    regs.push_back({{"component", x.component},
                    {"holes", x.holes},
                    {"label", to_string(x.label)},
                    {"sample_z", cjson(x.sample_z)}});
  r["regions"] = regs;
  out.write_json("regions.json", r);
  return kOk;
}

int cmd_approximate(const RunConfig& cfg) {
  return dispatch_precision(cfg.bits, [&](auto tag) { return approximate<decltype(tag)>(cfg); });
}

int cmd_verify(const RunConfig& cfg) {
  return dispatch_precision(cfg.bits, [&](auto tag) { return verify<decltype(tag)>(cfg); });
}

int cmd_figure(const RunConfig& cfg) {
  SymmetricContour sc = trace(cfg);
  std::vector<cd> poles;
  if (cfg.n)
    poles = dispatch_precision(cfg.bits, [&](auto tag) { return figure_poles<decltype(tag)>(cfg, sc); });

  Box box;
  for (cd s : sc.delta0) box.add(s);
  for (auto& l : sc.loops)
    for (cd s : l) box.add(s);
  const auto arc_pts = cfg.arc.polyline(256);
  for (cd s : arc_pts) box.add(s);
  for (auto& e : sc.gamma.base.finite_entries()) box.add(e.point.value);
  for (cd p : poles)
    if (std::abs(p) < 10) box.add(p);
  const double span = std::max(box.x1 - box.x0, box.y1 - box.y0) * 1.15 + 1e-9;
  const double cx = 0.5 * (box.x0 + box.x1), cy = 0.5 * (box.y0 + box.y1);
  const double size = 800;
  auto px = [&](cd z) { return cd((z.real() - cx) / span * size + size / 2, size / 2 - (z.imag() - cy) / span * size); };

  Writer out(cfg);
  std::ostringstream s;
  s << "<!-- spade config_hash=" << out.hash() << " bits=" << cfg.bits << " nodes=" << cfg.quad_nodes << " -->\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  s << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  s << "<path d=\"" << svg_path(arc_pts, false, px)
    << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
  s << "<path d=\"" << svg_path(sc.delta0, false, px) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  for (auto& l : sc.loops)
    s << "<path d=\"" << svg_path(l, true, px) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  // Disk area proportional to multiplicity; infinity is drawn in the corner.
  for (auto& e : sc.gamma.base.entries()) {
    const double r = 4 * std::sqrt(static_cast<double>(e.multiplicity));
    if (e.point.at_infinity) {
      s << "<circle cx=\"" << fmt6(40) << "\" cy=\"" << fmt6(40) << "\" r=\"" << fmt6(r)
        << "\" fill=\"#3366cc\"/>\n<text x=\"" << fmt6(48 + r) << "\" y=\"44\" font-size=\"14\">inf</text>\n";
    } else {
      cd p = px(e.point.value);
      s << "<circle cx=\"" << fmt6(p.real()) << "\" cy=\"" << fmt6(p.imag()) << "\" r=\"" << fmt6(r)
        << "\" fill=\"#3366cc\"/>\n";
    }
  }
  for (cd z : poles) {
    cd p = px(z);
    if (p.real() < 0 || p.real() > size || p.imag() < 0 || p.imag() > size) continue;
    const double a = 4;
    s << "<path d=\"M" << fmt6(p.real() - a) << "," << fmt6(p.imag() - a) << " L" << fmt6(p.real() + a) << ","
      << fmt6(p.imag() + a) << " M" << fmt6(p.real() - a) << "," << fmt6(p.imag() + a) << " L" << fmt6(p.real() + a)
      << "," << fmt6(p.imag() - a) << "\" stroke=\"#cc2222\" stroke-width=\"1.5\"/>\n";
  }
  s << "</svg>\n";
  out.write("figure.svg", s.str());
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Multipoint Pade approximants of Cauchy integrals on an arc"};
  app.require_subcommand(1);
  std::string config_path;
  std::optional<int> bits, nodes;
  std::optional<std::string> out;
  std::string command;
  for (const char* name : {"trace", "approximate", "verify", "figure"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out, "output directory");
    sub->add_option("--bits", bits, "binary precision (<= 512)");
    sub->add_option("--nodes", nodes, "quadrature nodes per component (power of two)");
    sub->callback([&command, name] { command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    std::ifstream f(config_path);
    if (!f) throw Error(ErrorCode::ConfigError, "cannot read " + config_path);
    std::stringstream buf;
    buf << f.rdbuf();
    RunConfig cfg = parse_config(buf.str());
    apply_overrides(cfg, bits, nodes, out);
    if (command == "trace") return cmd_trace(cfg);
    if (command == "approximate") return cmd_approximate(cfg);
    if (command == "verify") return cmd_verify(cfg);
    return cmd_figure(cfg);
  } catch (const Error& e) {
    std::cerr << "spade: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "spade: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace spade::cli

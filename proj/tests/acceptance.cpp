// One PASS/FAIL line per acceptance criterion.
//
//   acceptance [--known-infeasible k ...]
//
// Exit status counts the criteria that failed without being listed as known
// infeasible. A listed criterion that passes is also counted, so the list
// cannot go stale silently.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "scenarios.hpp"
#include "spade/cli.hpp"

using namespace spade;
using namespace spade::testing;
namespace fs = std::filesystem;

namespace {

using R = real256;
using C = complex256;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int count_in_tube(const SymmetricContour& sc, const std::vector<C>& poles, double tube) {
  int in = 0;
  for (auto& p : poles)
    if (sc.distance(to_cd(p)) <= tube) ++in;
  return in;
}

Outcome chebyshev_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  Setup<R> a(scheme_a(), ArcPath::segment(), "1");
  double coef = 0, pole = 0;
  for (int n = 1; n <= 20; ++n) {
    auto ps = solve_pade(*a.wc, a.scheme, n, n);
    if (ps.q.degree() != n) return {false, "degree " + std::to_string(ps.q.degree()) + " at n=" + std::to_string(n)};
    auto t = monic_chebyshev(n);
    for (int k = 0; k <= n; ++k) coef = std::max(coef, static_cast<double>(cabs(ps.q[k] - C(t[k]))));
    for (int k = 0; k < n; ++k) {
      R x = cos(pi<R>() * (2 * k + 1) / (2 * n));
      R best(10);
      for (auto& p : ps.poles) best = std::min(best, R(cabs(p - C(x))));
      pole = std::max(pole, static_cast<double>(best));
    }
  }
  const double t = seconds_since(t0);
  return {coef <= 1e-40 && pole <= 1e-30 && t <= 60,
          "max coef err " + sci(coef) + ", max pole err " + sci(pole) + ", " + sci(t) + " s"};
}

Outcome asymptotic_anchors() {
  Setup<R> a(scheme_a(), ArcPath::segment(), "1");
  auto se = std::make_shared<SzegoEvaluator<R>>(a.wc);
  double w1 = 0, w3 = 0;
  for (int n = 2; n <= 16; ++n) {
    OuterFunction<R> of(se, a.scheme, n);
    auto ps = solve_pade(*a.wc, a.scheme, n, n, false);
    SecondKind<R> sk(a.wc, ps);
    for (cd zd : {cd(2, 0), cd(0, 1.5), cd(-3, 0)}) {
      const C z = lift<R>(zd);
      const C f = ipow(phi_map<R>(z, a.L), 2 * n);
      const double dev1 = static_cast<double>(cabs(ps.q(z) / of.normalized(z) - C(1)));
      w1 = std::max(w1, std::abs(dev1 / static_cast<double>(cabs(f)) - 1));
      const C actual = ps.v(z) * sk(z) / ps.q(z);
      const C ratio = actual / of.predicted_error(z);
      w3 = std::max(w3, static_cast<double>(cabs(ratio * (C(1) + f) - C(1))));
    }
  }
  return {w1 <= 1e-6 && w3 <= 1e-6,
          "max rel dev |q/N-1| vs |phi|^2n " + sci(w1) + ", max rel dev of ratio vs 1/(1+phi^2n) " + sci(w3)};
}

Outcome contour_structure() {
  const ArcPath L = ArcPath::lower_semicircle();
  std::string d;
  bool ok = true;
  double worst = 0;
  for (int ratio : {4, 6, 5}) {
    auto t0 = std::chrono::steady_clock::now();
    std::string got;
    try {
      got = std::to_string(build_symmetric_contour(scheme_b(ratio), L).components()) + " components";
    } catch (const Error& e) {
      got = to_string(e.code());
    }
    worst = std::max(worst, seconds_since(t0));
    const std::string want = ratio == 4 ? "1 components" : ratio == 6 ? "2 components" : "SelfIntersection";
    ok = ok && got == want;
    d += std::to_string(ratio) + ":1 -> " + got + "; ";
  }
  return {ok && worst <= 120, d + "slowest trace " + sci(worst) + " s"};
}

Outcome pole_attraction(SchemeSpec s, ArcPath L, int n, int allowed_outside, double limit_s) {
  auto t0 = std::chrono::steady_clock::now();
  Setup<R> b(std::move(s), L, "1");
  auto ps = solve_pade(*b.wc, b.scheme, n, n);
  const int in = count_in_tube(b.sc, ps.poles, 0.05);
  const int total = static_cast<int>(ps.poles.size());
  const double t = seconds_since(t0);
  return {total == n && in >= n - allowed_outside && t <= limit_s,
          std::to_string(in) + "/" + std::to_string(total) + " poles within 0.05 of Delta, " + sci(t) + " s"};
}

Outcome szego_suite() {
  double worst = 0;
  for (int which : {0, 1})
    for (const char* rho : {"1", "4", "exp(s)"}) {
      Setup<R> s(which ? scheme_b() : scheme_a(), which ? ArcPath::lower_semicircle() : ArcPath::segment(), rho);
      SzegoEvaluator<R> se(s.wc);
      for (auto& d : verify_szego_jumps(se, 100)) worst = std::max(worst, d.max_defect);
    }
  return {worst <= 1e-25, "max jump defect " + sci(worst) + " over 6 cases, 100 samples per component"};
}

Outcome prop1_suite() {
  Setup<R> b(scheme_b(), ArcPath::lower_semicircle(), "exp(s)");
  ArcTransform<R> tl(b.L, DensitySpec::entire("exp(s)"), 2048);
  bool ok = true;
  std::string d;
  for (auto& e : b.scheme.base().entries()) {
    d += e.point.label() + ": ";
    try {
      const double x = prop1_check(e.point, 0.05, *b.wc, tl, b.L);
      ok = ok && x <= 1e-25;
      d += sci(x);
    } catch (const Error& err) {
      ok = false;
      const double r = prop1_auto_radius(e.point, b.sc, b.L);
      d += std::string(to_string(err.code())) + " (dist to Delta " + sci(b.sc.distance(e.point.value)) +
           " < 0.05); radius " + sci(r) + " gives " + sci(prop1_check(e.point, r, *b.wc, tl, b.L));
    }
    d += "; ";
  }
  auto nc = prop1_negative_control(*b.wc, tl, b.L);
  if (!nc) return {false, d + "no U_b point for the negative control"};
  ok = ok && nc->defect >= 1e-3;
  return {ok, d + "negative control " + sci(nc->defect) + " at (" + sci(nc->z.real()) + "," + sci(nc->z.imag()) + ")"};
}

Outcome boundary_relation() {
  Setup<R> b(scheme_b(), ArcPath::lower_semicircle(), "exp(s)");
  auto se = std::make_shared<SzegoEvaluator<R>>(b.wc);
  double worst = 0;
  std::string d;
  for (int n : {8, 16, 28}) {
    const double x = boundary_defect(OuterFunction<R>(se, b.scheme, n), 100);
    worst = std::max(worst, x);
    d += "n=" + std::to_string(n) + " " + sci(x) + "; ";
  }
  return {worst <= 1e-20, d + "threshold 1e-20"};
}

bool same_outputs(const fs::path& a, const fs::path& b) {
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  };
  int files = 0;
  for (auto& f : fs::directory_iterator(a)) {
    ++files;
    if (!fs::exists(b / f.path().filename()) || slurp(f.path()) != slurp(b / f.path().filename())) return false;
  }
  return files > 0;
}

Outcome invariants() {
  std::vector<std::string> bad;
  Setup<R> b(scheme_b(), ArcPath::lower_semicircle(), "exp(s)");
  const double tol = b.dc->context().rank_tol;

  auto ps = solve_pade(*b.wc, b.scheme, 28, 28);
  double orth = 0;
  for (double r : ps.orthogonality_residual) orth = std::max(orth, r);
  if (orth > tol) bad.push_back("orthogonality " + sci(orth));

  const double nd = node_doubling_defect<R>(b.sc, DensitySpec::entire("exp(s)"), make_context(256, 1024),
                                           {{2, 0}, {0, 1.5}, {0.4, -1.6}, {-1.5, -0.5}});
  if (nd > 1e-30) bad.push_back("node doubling " + sci(nd));

  double sym = 0;
  for (cd t : {cd(0.3, 0.1), cd(-0.7, 0.5), cd(1.5, -0.2), cd(0.05, -0.9)}) {
    C z = lift<R>(t);
    sym = std::max(sym, static_cast<double>(cabs(b.dc->B().value(z) * b.dc->B().value(C(1) / z) - C(1))));
  }
  if (sym > 1e-60) bad.push_back("B reciprocal symmetry " + sci(sym));

  Setup<R> four(scheme_b(), ArcPath::lower_semicircle(), "4*exp(s)");
  auto p1 = solve_pade(*b.wc, b.scheme, 16, 16), p4 = solve_pade(*four.wc, four.scheme, 16, 16);
  double eq = p1.q.degree() == p4.q.degree() ? 0 : 1;
  for (int k = 0; eq < 1 && k <= p1.q.degree(); ++k) eq = std::max(eq, static_cast<double>(cabs(p1.q[k] - p4.q[k])));
  if (eq > 1e-40) bad.push_back("scalar equivariance " + sci(eq));

  auto dir = fs::temp_directory_path() / "spade_acceptance_det";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "b.json") << R"J({"schema_version": 1, "arc": {"kind": "lower_semicircle"}, "density": "exp(s)",
    "scheme": {"base": [{"point": "inf", "multiplicity": 6}, {"point": [0, -0.75], "multiplicity": 1}], "n": 12},
    "values": {"points": [[2, 0], [0.3, -1.2]]}})J";
  bool det = true;
  for (std::string cmd : {"trace", "approximate", "figure"}) {
    for (std::string k : {"1", "2"}) {
      std::vector<std::string> args{"spade", cmd, "--config", (dir / "b.json").string(), "--out",
                                    (dir / (cmd + k)).string()};
      std::vector<char*> argv;
      for (auto& s : args) argv.push_back(s.data());
      if (cli::run(static_cast<int>(argv.size()), argv.data()) != 0) det = false;
    }
    det = det && same_outputs(dir / (cmd + "1"), dir / (cmd + "2"));
  }
  if (!det) bad.push_back("CLI outputs differ between runs");

  std::string d = "orthogonality " + sci(orth) + ", node doubling " + sci(nd) + ", B symmetry " + sci(sym) +
                  ", equivariance " + sci(eq) + ", CLI determinism " + (det ? "ok" : "broken");
  return {bad.empty(), d};
}

Outcome geometric_decay() {
  using R5 = real512;
  Setup<R5> b(scheme_b(), ArcPath::lower_semicircle(), "exp(s)", 512, 2048);
  auto se = std::make_shared<SzegoEvaluator<R5>>(b.wc);
  auto K = default_test_points(b.sc, b.scheme.base());
  auto rep = convergence_report<R5>(se, b.scheme, {8, 12, 16, 20, 24, 28}, K);
  bool errors = false;
  for (auto& r : rep.rows) errors = errors || !r.error.empty();
  const bool ok = !errors && rep.monotone1 && rep.monotone2 && rep.monotone3 && rep.slope1 < 0 && rep.slope2 < 0 &&
                  rep.slope3 < 0;
  return {ok, "512 bits, |K|=" + std::to_string(K.size()) + ", slopes " + sci(rep.slope1) + " " + sci(rep.slope2) +
                  " " + sci(rep.slope3) + ", monotone " + std::to_string(rep.monotone1) +
                  std::to_string(rep.monotone2) + std::to_string(rep.monotone3)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> infeasible;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--known-infeasible" && i + 1 < argc) infeasible.insert(std::atoi(argv[++i]));

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Chebyshev oracle", chebyshev_oracle},
      {"exact asymptotic anchors", asymptotic_anchors},
      {"contour structure by ratio", contour_structure},
      {"Scenario B pole attraction",
       [] { return pole_attraction(scheme_b(), ArcPath::lower_semicircle(), 28, 2, 600); }},
      {"Scenario C pole attraction", [] { return pole_attraction(scheme_c(), ArcPath::teardrop(2.0), 25, 2, 600); }},
      {"Szego jump suite", szego_suite},
      {"continuation suite", prop1_suite},
      {"boundary relation", boundary_relation},
      {"property invariants", invariants},
      {"geometric decay", geometric_decay},
  };

  int status = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const bool known = infeasible.count(id) > 0;
    std::printf("%s %d %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(), o.detail.c_str(),
                known ? (o.pass ? " [listed as infeasible but passed]" : " [known infeasible]") : "");
    std::fflush(stdout);
    if (o.pass == known) ++status;
  }
  return status;
}

// legfront command-line tool. Reports go to stdout; files are written only through -o/--svg.

#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "legfront/legfront.hpp"

using namespace legfront;

namespace {

std::uint64_t g_seed = 0;

void kv(const std::string& k, const std::string& v) { std::cout << k << ": " << v << "\n"; }
void kv(const std::string& k, double v) { kv(k, fmt_sig(v)); }
void kv(const std::string& k, long long v) { kv(k, std::to_string(v)); }
void kv(const std::string& k, int v) { kv(k, std::to_string(v)); }
void kv(const std::string& k, std::size_t v) { kv(k, std::to_string(v)); }
void kv(const std::string& k, bool v) { kv(k, std::string(v ? "yes" : "no")); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

Rational rational_flag(const std::string& s, const char* name) {
  const Rational r = parse_rational(s);
  require(r > 0, std::string("--") + name + " must be positive");
  return r;
}

// ---------------------------------------------------------------------------------------
// Front inputs

struct FrontSource {
  std::string file, builtin;
  int samples = 64;

  void attach(CLI::App* sub) {
    sub->add_option("file", file, "front JSON");
    sub->add_option("--builtin", builtin, "unknot | stabilized | stabilized2 | zigzag | saucer | random");
    sub->add_option("--samples", samples, "plat samples per half window for builtins")->capture_default_str();
  }
  FrontDiagram load() const {
    require(samples >= 4, "--samples must be at least 4");
    if (file.empty() == builtin.empty()) throw SchemaError("give exactly one of a front file or --builtin");
    if (!builtin.empty()) return builtin_front(builtin, g_seed, samples);
    return front_from_json(read_json_file(file));
  }
};

// Prints the violation report and returns false when the front is invalid.
bool report_validity(const FrontDiagram& f) {
  const auto rep = validate_front(f);
  if (!rep.ok()) {
    kv("valid", false);
    std::cout << rep.summary();
    return false;
  }
  kv("valid", true);
  return true;
}

void write_svg(const std::string& path, const FrontDiagram& f) {
  if (!path.empty()) write_text_file(path, render_svg(f));
}

void write_json(const std::string& path, const Json& j) {
  if (!path.empty()) write_text_file(path, dump(j));
}

Json charts_to_json(const std::vector<LooseChart>& cs) {
  Json j = detail::header("charts");
  Json arr = Json::array();
  for (const auto& c : cs) arr.push_back(chart_to_json(c));
  j["charts"] = std::move(arr);
  return j;
}

std::vector<LooseChart> charts_from_file(const std::string& path) {
  const Json j = read_json_file(path);
  if (j.is_object() && j.value("type", "") == "charts") {
    detail::expect_type(j, "charts");
    std::vector<LooseChart> out;
    for (const auto& c : detail::get_field<Json>(j, "charts", "charts")) out.push_back(chart_from_json(c, 200));
    return out;
  }
  return {chart_from_json(j, 200)};
}

MoveKind move_kind_from(const std::string& s) {
  if (s == "r1" || s == "R1") return MoveKind::R1;
  if (s == "r2" || s == "R2") return MoveKind::R2;
  if (s == "r3" || s == "R3") return MoveKind::R3;
  if (s == "stabilize") return MoveKind::Stabilize;
  throw SchemaError("unknown move '" + s + "'");
}

WrinkleMode wrinkle_mode_from(const std::string& s) {
  for (auto m : {WrinkleMode::Standard, WrinkleMode::InsideOut, WrinkleMode::Embryo, WrinkleMode::Pair})
    if (s == to_string(m)) return m;
  throw SchemaError("unknown wrinkle mode '" + s + "'");
}

std::string vec_str(const Eigen::VectorXd& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt_sig(v[i]);
  return s + ")";
}

// Planar loci on [-e, e]^2, y axis up; wrinkle points small, swallowtails larger and red.
std::string loci_svg(const SingularLocus& L, double e) {
  const double m = 0.05 * 2 * e, lo = -e - m, w = 2 * (e + m);
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" +
                  fmt_sig(lo) + " " + fmt_sig(lo) + " " + fmt_sig(w) + " " + fmt_sig(w) + "\">\n";
  auto dot = [&](const Eigen::VectorXd& p, double r, const char* cls, const char* fill) {
    s += "<circle class=\"" + std::string(cls) + "\" cx=\"" + fmt_sig(p[0]) + "\" cy=\"" + fmt_sig(-p[1]) +
         "\" r=\"" + fmt_sig(r) + "\" fill=\"" + fill + "\"/>\n";
  };
  for (const auto& p : L.wrinkle) dot(p, w / 400, "wrinkle", "black");
  for (const auto& p : L.swallowtail) dot(p, w / 100, "swallowtail", "red");
  return s + "</svg>\n";
}

std::string edge_list(const StrataPoset& P, const std::set<int>& es) {
  std::string s;
  for (int e : es) s += (s.empty() ? "" : " ") + P.edge_name(e);
  return s.empty() ? "-" : s;
}

std::string dims_str(const SheafRep& r) {
  std::string s;
  for (std::size_t i = 0; i < r.dims.size(); ++i)
    s += (i ? " " : "") + r.poset.strata[i].name + "=" + std::to_string(r.dims[i]);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Legendrian fronts, loose charts, wrinkles and sheaf certificates", "legfront"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g_seed, "seed for every random choice")->capture_default_str();

  std::function<int()> action;
  std::string out, svg;

  // validate
  FrontSource vsrc;
  auto* validate = app.add_subcommand("validate", "check a front for generic position");
  vsrc.attach(validate);
  validate->callback([&] {
    action = [&] {
      const auto f = vsrc.load();
      if (!report_validity(f)) return 1;
      const auto rep = validate_front(f);
      kv("arcs", f.arcs.size());
      kv("components", front_components(f).size());
      kv("cusps", cusp_list(f).size());
      kv("crossings", rep.crossings.size());
      return 0;
    };
  });

  // lift
  FrontSource lsrc;
  auto* lift = app.add_subcommand("lift", "lift a front to a Legendrian in R3Std");
  lsrc.attach(lift);
  lift->add_option("-o,--output", out, "curve JSON");
  lift->callback([&] {
    action = [&] {
      const auto f = lsrc.load();
      if (!report_validity(f)) return 1;
      const auto lifts = lift_components(f);
      for (std::size_t c = 0; c < lifts.size(); ++c) {
        kv("component " + std::to_string(c) + " samples", lifts[c].size());
        kv("component " + std::to_string(c) + " residual", legendrian_residual(lifts[c]));
      }
      kv("roundtrip_error", roundtrip_error(f, lifts));
      if (!out.empty()) write_json(out, lifts.size() == 1 ? curve_to_json(lifts[0]) : curves_to_json(lifts));
      return 0;
    };
  });

  // invariants
  FrontSource isrc;
  auto* inv = app.add_subcommand("invariants", "Thurston-Bennequin and rotation numbers");
  isrc.attach(inv);
  inv->callback([&] {
    action = [&] {
      const auto f = isrc.load();
      if (!report_validity(f)) return 1;
      const auto ci = classical_invariants(f);
      if (f.plat) kv("word", word_to_string(f.plat->word));
      kv("tb", ci.tb);
      kv("rot", ci.rot);
      kv("writhe", ci.writhe);
      kv("cusps", ci.cusps);
      kv("down_cusps", ci.down);
      kv("up_cusps", ci.up);
      return 0;
    };
  });

  // move
  FrontSource msrc;
  std::string move_kind;
  MoveSite site;
  int random_count = 0;
  auto* move = app.add_subcommand("move", "apply a Legendrian Reidemeister move or a stabilization");
  msrc.attach(move);
  move->add_option("--kind", move_kind, "r1 | r2 | r3 | stabilize");
  move->add_option("--event", site.event, "event index in the plat word")->capture_default_str();
  move->add_option("--pos", site.pos, "strand position")->capture_default_str();
  move->add_option("--variant", site.variant, "0 or 1")->capture_default_str();
  move->add_flag("--inverse", site.inverse, "undo the move");
  move->add_option("--random", random_count, "apply this many random R1/R2/R3 moves (seeded)");
  move->add_option("-o,--output", out, "front JSON");
  move->add_option("--svg", svg, "SVG of the result");
  move->callback([&] {
    action = [&] {
      require(site.variant == 0 || site.variant == 1, "--variant must be 0 or 1");
      require(random_count >= 0, "--random must be non-negative");
      if (move_kind.empty() == (random_count == 0)) throw SchemaError("give exactly one of --kind or --random");
      const auto f = msrc.load();
      if (!report_validity(f)) return 1;
      const auto before = classical_invariants(f);
      FrontDiagram g;
      if (random_count > 0) {
        PlatData pd = f.plat ? *f.plat : derive_word(f);
        g = realize_plat(random_isotopy(pd, random_count, g_seed));
      } else {
        g = apply_move(f, move_kind_from(move_kind), site).front;
      }
      const auto after = classical_invariants(g);
      if (g.plat) kv("word", word_to_string(g.plat->word));
      kv("tb_before", before.tb);
      kv("rot_before", before.rot);
      kv("tb_after", after.tb);
      kv("rot_after", after.rot);
      write_json(out, front_to_json(g));
      write_svg(svg, g);
      return 0;
    };
  });

  // render
  FrontSource rsrc;
  auto* render = app.add_subcommand("render", "write a front as SVG");
  rsrc.attach(render);
  render->add_option("-o,--output", out, "SVG file")->required();
  render->callback([&] {
    action = [&] {
      const auto f = rsrc.load();
      write_svg(out, f);
      kv("arcs", f.arcs.size());
      kv("cusps", cusp_list(f).size());
      return 0;
    };
  });

  // approximate
  std::string curve_file, curve_builtin;
  double epsilon = 0;
  std::size_t circle_samples = 2001;
  std::vector<std::size_t> marked;
  ApproxOptions aopt;
  auto* approx = app.add_subcommand("approximate", "C0-close Legendrian approximation of a curve");
  approx->add_option("file", curve_file, "curve JSON in R3Std");
  approx->add_option("--builtin", curve_builtin, "circle");
  approx->add_option("--circle-samples", circle_samples)->capture_default_str();
  approx->add_option("--epsilon", epsilon)->required();
  approx->add_option("--marked", marked, "input sample indices to hit exactly")->delimiter(',');
  approx->add_option("--loop-samples", aopt.loop_samples)->capture_default_str();
  approx->add_option("--base-samples", aopt.base_samples)->capture_default_str();
  approx->add_option("-o,--output", out, "curve JSON");
  approx->add_option("--svg", svg, "SVG of the front");
  approx->callback([&] {
    action = [&] {
      require(epsilon > 0, "--epsilon must be positive");
      require(aopt.loop_samples >= 8 && aopt.base_samples >= 2, "sample counts too small");
      if (curve_file.empty() == curve_builtin.empty()) throw SchemaError("give exactly one of a curve file or --builtin");
      SampledLegendrian c;
      if (!curve_builtin.empty()) {
        if (curve_builtin != "circle") throw SchemaError("unknown builtin curve '" + curve_builtin + "'");
        c = circle_curve(circle_samples);
      } else {
        c = curve_from_json(read_json_file(curve_file));
      }
      for (auto m : marked) require(m < c.size(), "marked index out of range");
      const auto r = approximate_curve(c, epsilon, marked, aopt);
      double hit = 0;
      for (std::size_t k = 0; k < r.node_in.size(); ++k)
        if (std::find(marked.begin(), marked.end(), r.node_in[k]) != marked.end())
          hit = std::max(hit, sup_norm([&] {
                           Point d = r.curve.points[r.node_out[k]];
                           for (std::size_t i = 0; i < d.size(); ++i) d[i] -= c.points[r.node_in[k]][i];
                           return d;
                         }()));
      const auto front = front_of(r.curve);
      kv("nodes", r.nodes);
      kv("loops", static_cast<long long>(r.loops));
      kv("cusps", r.cusps);
      kv("samples", r.curve.size());
      kv("sup_distance", r.sup_distance);
      kv("slope_error", r.slope_error);
      kv("residual", r.residual);
      kv("marked_error", hit);
      kv("front_valid", validate_front(front).ok());
      write_json(out, curve_to_json(r.curve));
      write_svg(svg, front);
      return 0;
    };
  });

  // park
  std::vector<double> start, goal;
  std::string reference_file;
  ApproxOptions popt;
  popt.loop_samples = 256;
  auto* park = app.add_subcommand("park", "Legendrian path planning for the unicycle");
  park->add_option("--start", start, "x,y,theta")->delimiter(',')->expected(3)->required();
  park->add_option("--goal", goal, "x,y,theta")->delimiter(',')->expected(3)->required();
  park->add_option("--epsilon", epsilon)->required();
  park->add_option("--reference", reference_file, "curve JSON (Unicycle) to follow");
  park->add_option("--loop-samples", popt.loop_samples)->capture_default_str();
  park->add_option("-o,--output", out, "curve JSON");
  park->callback([&] {
    action = [&] {
      require(epsilon > 0, "--epsilon must be positive");
      require(popt.loop_samples >= 8, "--loop-samples too small");
      std::vector<Point> ref;
      if (!reference_file.empty()) {
        const auto rc = curve_from_json(read_json_file(reference_file));
        require(rc.model == ContactModel::unicycle(), "reference must be a Unicycle curve");
        ref = rc.points;
      }
      const auto plan = plan_unicycle(start, goal, epsilon, ref, popt);
      const auto& P = plan.path.points;
      auto dist = [](const Point& a, const Point& b) {
        return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
      };
      kv("runs", plan.runs);
      kv("maneuvers", plan.maneuvers);
      kv("samples", P.size());
      kv("sup_distance", plan.sup_distance);
      kv("residual", plan.residual);
      kv("start_error", dist(P.front(), start));
      kv("goal_error", dist(P.back(), goal));
      write_json(out, curve_to_json(plan.path));
      return 0;
    };
  });

  // loose-classify
  std::string rho_s, action_s, chart_file;
  auto* lclass = app.add_subcommand("loose-classify", "size parameter and class of a chart");
  lclass->add_option("--rho", rho_s);
  lclass->add_option("--action", action_s);
  lclass->add_option("--chart", chart_file, "chart or charts JSON");
  lclass->add_option("-o,--output", out, "chart JSON");
  lclass->callback([&] {
    action = [&] {
      if (!chart_file.empty()) {
        if (!rho_s.empty() || !action_s.empty()) throw SchemaError("--chart excludes --rho/--action");
        for (const auto& ch : charts_from_file(chart_file)) {
          const auto c = classify_chart(ch);
          std::cout << to_string(c.size) << " " << to_string(c.cls) << "\n";
        }
        return 0;
      }
      if (rho_s.empty() || action_s.empty()) throw SchemaError("give --rho and --action, or --chart");
      const auto rho = rational_flag(rho_s, "rho"), a = rational_flag(action_s, "action");
      const auto c = classify(rho, a);
      std::cout << to_string(c.size) << " " << to_string(c.cls) << "\n";
      if (!out.empty()) write_json(out, chart_to_json(make_chart(rho, a)));
      return 0;
    };
  });

  // loose-squeeze
  std::string sigma_s = "2";
  int count = 3;
  SqueezeOptions sopt;
  auto* lsq = app.add_subcommand("loose-squeeze", "squeeze one loose chart into several");
  lsq->add_option("--rho", rho_s);
  lsq->add_option("--action", action_s);
  lsq->add_option("--chart", chart_file, "chart JSON");
  lsq->add_option("--sigma", sigma_s)->capture_default_str();
  lsq->add_option("--count", count, "number of sub-charts")->capture_default_str();
  lsq->add_option("--grid", sopt.grid_t, "grid points per axis")->capture_default_str();
  lsq->add_option("-o,--output", out, "charts JSON");
  lsq->callback([&] {
    action = [&] {
      require(count >= 1, "--count must be at least 1");
      require(sopt.grid_t >= 3, "--grid must be at least 3");
      sopt.grid_q = sopt.grid_t;
      LooseChart ch;
      if (!chart_file.empty()) {
        const auto cs = charts_from_file(chart_file);
        require(cs.size() == 1, "squeeze takes a single chart");
        ch = cs[0];
      } else {
        if (rho_s.empty() || action_s.empty()) throw SchemaError("give --rho and --action, or --chart");
        ch = make_chart(rational_flag(rho_s, "rho"), rational_flag(action_s, "action"));
      }
      const auto r = squeeze_chart(ch, rational_flag(sigma_s, "sigma"), count, sopt);
      kv("delta", r.delta);
      kv("rho_prime", r.rho_prime);
      kv("site_width", r.site_width);
      for (std::size_t i = 0; i < r.charts.size(); ++i) {
        const auto c = classify_chart(r.charts[i]);
        std::cout << "chart " << i << ": center " << fmt_sig(r.charts[i].q_center) << " size "
                  << fmt_sig(to_double(c.size)) << " " << to_string(c.cls) << "\n";
      }
      kv("disjoint", r.disjoint);
      kv("contained", r.contained);
      kv("fronts_inside", r.fronts_inside);
      kv("max_slope", r.max_p);
      kv("slope_bound", r.bound);
      kv("slope_bound_holds", r.bound_holds);
      kv("slope_below_rho", r.p_below_rho);
      kv("omega_residual", r.omega_residual);
      write_json(out, charts_to_json(r.charts));
      return 0;
    };
  });

  // nonsqueeze
  std::size_t ns_grid = 200;
  auto* nsq = app.add_subcommand("nonsqueeze", "doubled-link construction for a pseudo-loose chart");
  nsq->add_option("--rho", rho_s)->required();
  nsq->add_option("--action", action_s)->required();
  nsq->add_option("--grid", ns_grid)->capture_default_str();
  nsq->add_option("-o,--output", out, "curves JSON with both components");
  nsq->callback([&] {
    action = [&] {
      require(ns_grid >= 3, "--grid must be at least 3");
      const auto rho = rational_flag(rho_s, "rho"), a = rational_flag(action_s, "action");
      const auto r = nonsqueezing_front(rho, a, ns_grid, ns_grid);
      kv("size", to_string(classify(rho, a).size));
      kv("slope", to_string(r.slope));
      kv("rho", to_string(rho));
      kv("misses_chart", r.misses_chart);
      kv("action1", r.action1);
      kv("max_slope2", r.max_p2);
      kv("residual1", legendrian_residual(r.comp1));
      kv("residual2", legendrian_residual(r.comp2));
      write_json(out, curves_to_json({r.comp1, r.comp2}));
      return 0;
    };
  });

  // wrinkle eval | loci | resolve
  auto* wr = app.add_subcommand("wrinkle", "wrinkle models");
  wr->require_subcommand(1);
  double u = 0, v = 0;
  auto* weval = wr->add_subcommand("eval", "the map g(u, v) and its rank");
  weval->add_option("--u", u)->required();
  weval->add_option("--v", v)->required();
  weval->callback([&] {
    action = [&] {
      const auto g = wrinkle_lift_uv(u, v);
      kv("g", vec_str(g.value));
      kv("rank", numeric_rank(g.jac));
      kv("pullback", pullback_uv(g));
      return 0;
    };
  });
  WrinkleModel wm;
  std::string mode_s = "standard";
  double resolve_delta = 0;
  auto* wloci = wr->add_subcommand("loci", "wrinkle and swallowtail loci on a lattice");
  wloci->add_option("--mode", mode_s, "standard | inside-out | embryo | pair")->capture_default_str();
  wloci->add_option("--tau", wm.tau)->capture_default_str();
  wloci->add_option("--dim", wm.m, "Legendrian dimension m")->capture_default_str();
  wloci->add_option("--grid", wm.grid)->capture_default_str();
  wloci->add_option("--extent", wm.extent)->capture_default_str();
  wloci->add_option("--delta", resolve_delta, "resolve with this delta");
  wloci->add_option("--csv", out, "CSV of the loci: kind and lattice coordinates");
  wloci->add_option("--svg", svg, "SVG scatter of the loci (dim 2 only)");
  wloci->callback([&] {
    action = [&] {
      require(wm.m >= 2 && wm.m <= 4, "--dim must lie in [2, 4]");
      require(wm.grid >= 3 && wm.extent > 0, "--grid and --extent too small");
      require(svg.empty() || wm.m == 2, "--svg needs --dim 2");
      wm.mode = wrinkle_mode_from(mode_s);
      if (resolve_delta != 0) {
        require(resolve_delta > 0 && resolve_delta < 0.5, "--delta must lie in (0, 0.5)");
        wm.resolve_delta = resolve_delta;
      }
      const auto L = detect_singular_loci(wm);
      kv("wrinkle_points", L.wrinkle.size());
      kv("swallowtails", L.swallowtail.size());
      for (const auto& p : L.swallowtail) kv("swallowtail", vec_str(p));
      kv("spacing", L.spacing);
      if (!out.empty()) {
        std::string csv = "kind";
        for (int k = 0; k < wm.m; ++k) csv += ",x" + std::to_string(k + 1);
        csv += "\n";
        for (auto [kind, pts] : {std::pair{"wrinkle", &L.wrinkle}, std::pair{"swallowtail", &L.swallowtail}})
          for (const auto& p : *pts) {
            csv += kind;
            for (double c : p) csv += "," + fmt_sig(c);
            csv += "\n";
          }
        write_text_file(out, csv);
      }
      if (!svg.empty()) {
        write_text_file(svg, loci_svg(L, wm.extent));
      }
      return 0;
    };
  });
  double wdelta = 0.01;
  bool pair = false;
  std::size_t wgrid = 400;
  auto* wres = wr->add_subcommand("resolve", "resolve swallowtails through a marking");
  wres->add_option("--delta", wdelta)->capture_default_str();
  wres->add_option("--grid", wgrid)->capture_default_str();
  wres->add_option("--dim", wm.m)->capture_default_str();
  wres->add_flag("--pair", pair, "two wrinkles joined by an annulus");
  wres->callback([&] {
    action = [&] {
      require(wdelta > 0 && wdelta < 0.5, "--delta must lie in (0, 0.5)");
      require(wgrid >= 3, "--grid must be at least 3");
      require(wm.m >= 2 && wm.m <= 3, "--dim must be 2 or 3");
      const auto r = pair ? resolve_pair(wdelta, wm.m, wgrid) : resolve_inside_out(wdelta, wm.m, wgrid);
      kv("rank_drops", static_cast<long long>(r.rank_drops));
      kv("max_pullback", r.max_pullback);
      kv("max_outside_deviation", r.max_outside_deviation);
      if (r.cls) {
        kv("chart_rho", to_double(r.chart.rho));
        kv("chart_action", to_double(r.chart.action));
        kv("chart_size", to_double(r.cls->size));
        kv("chart_class", std::string(to_string(r.cls->cls)));
      }
      return 0;
    };
  });

  // saucer
  int saucer_n = 1;
  std::size_t saucer_grid = 5000;
  auto* sc = app.add_subcommand("saucer", "flying saucer in R^{2n+1}");
  sc->add_option("--dim", saucer_n, "n")->capture_default_str();
  sc->add_option("--grid", saucer_grid, "samples per arc (n = 1) or per axis")->capture_default_str();
  sc->add_option("-o,--output", out, "front JSON (n = 1) or curve JSON");
  sc->add_option("--svg", svg, "SVG of the n = 1 slice");
  sc->callback([&] {
    action = [&] {
      require(saucer_n >= 1 && saucer_n <= 3, "--dim must lie in [1, 3]");
      require(saucer_grid >= 3, "--grid must be at least 3");
      if (saucer_n == 1) {
        const auto f = saucer_slice(saucer_grid);
        if (!report_validity(f)) return 1;
        const auto lifts = lift_components(f);
        kv("cusps", cusp_list(f).size());
        kv("residual", legendrian_residual(lifts[0]));
        kv("roundtrip_error", roundtrip_error(f, lifts));
        write_json(out, front_to_json(f));
        write_svg(svg, f);
        return 0;
      }
      require(svg.empty(), "--svg needs --dim 1");
      require(saucer_grid <= 400, "--grid must be at most 400 for n > 1");
      const auto s = saucer_sheet(saucer_n, saucer_grid);
      kv("samples", s.size());
      kv("residual", legendrian_residual(s));
      write_json(out, curve_to_json(s));
      return 0;
    };
  });

  // sheaf poset | ss | witness | certify
  auto* sh = app.add_subcommand("sheaf", "constructible sheaves on stratified fronts");
  sh->require_subcommand(1);
  std::string poset_s;
  int rank = 1, field = 2, workers = 1;
  long long budget = -1;
  std::string sheaf_file;
  auto* sposet = sh->add_subcommand("poset", "print the strata poset");
  sposet->add_option("--poset", poset_s, "zigzag | saucer | empty")->required();
  sposet->callback([&] {
    action = [&] {
      const auto P = build_poset(poset_kind_from(poset_s));
      for (const auto& s : P.strata) std::cout << "stratum " << s.name << " dim " << s.dim << "\n";
      for (std::size_t e = 0; e < P.edges.size(); ++e)
        std::cout << "edge " << P.edge_name(static_cast<int>(e)) << (P.edges[e].positive ? " positive" : "") << "\n";
      for (const auto& r : P.relations)
        std::cout << "relation " << P.edge_name(r.ac) << " = " << P.edge_name(r.bc) << " * " << P.edge_name(r.ab)
                  << "\n";
      return 0;
    };
  });
  auto* sss = sh->add_subcommand("ss", "microsupport of a sheaf representation");
  sss->add_option("file", sheaf_file, "sheaf JSON")->required();
  sss->callback([&] {
    action = [&] {
      const auto r = sheaf_from_json(read_json_file(sheaf_file));
      const auto m = microsupport(r);
      const auto pos = r.poset.positive_edges();
      kv("dims", dims_str(r));
      kv("microsupport", edge_list(r.poset, m.failing));
      kv("zero_section_only", m.zero_section_only);
      kv("within_positive", std::includes(pos.begin(), pos.end(), m.failing.begin(), m.failing.end()));
      return 0;
    };
  });
  auto add_search_flags = [&](CLI::App* s) {
    s->add_option("--poset", poset_s, "zigzag | saucer | empty")->required();
    s->add_option("--rank", rank)->capture_default_str();
    s->add_option("--field", field)->capture_default_str();
    s->add_option("--budget", budget, "candidate matrices (default LEGFRONT_BUDGET or 1e8)");
    s->add_option("--workers", workers, "worker count; the search is sequential")->capture_default_str();
  };
  auto check_search_flags = [&] {
    require(rank >= 1, "--rank must be at least 1");
    require(is_prime(field), "--field must be prime");
    require(workers >= 1, "--workers must be at least 1");
    require(budget == -1 || budget > 0, "--budget must be positive");
  };
  auto* switness = sh->add_subcommand("witness", "search for a non-looseness witness");
  add_search_flags(switness);
  switness->add_option("-o,--output", out, "sheaf JSON of the witness");
  switness->callback([&] {
    action = [&] {
      check_search_flags();
      const auto P = build_poset(poset_kind_from(poset_s));
      const auto c = search_witness(P, rank, field, budget);
      std::cout << c.verdict() << "\n";
      kv("candidates", c.candidates);
      if (c.witness) {
        kv("dims", dims_str(*c.witness));
        kv("microsupport", edge_list(P, c.failing));
        write_json(out, sheaf_to_json(*c.witness));
      }
      return 0;
    };
  });
  auto* scert = sh->add_subcommand("certify", "witness search cross-checked against the forced-isomorphism closure");
  add_search_flags(scert);
  scert->callback([&] {
    action = [&] {
      check_search_flags();
      const auto P = build_poset(poset_kind_from(poset_s));
      const auto c = search_witness(P, rank, field, budget);
      const auto cl = forced_iso_closure(P);
      const bool all = cl.size() == P.edges.size();
      std::cout << c.verdict() << "\n";
      kv("closure", std::to_string(cl.size()) + "/" + std::to_string(P.edges.size()));
      kv("agreement", all != c.found);
      return all != c.found ? 0 : 1;
    };
  });

  // certify
  std::string cert_file;
  auto* cert = app.add_subcommand("certify", "non-looseness certificate from a search or a stored sheaf");
  cert->add_option("file", cert_file, "sheaf JSON to verify");
  cert->add_option("--poset", poset_s, "zigzag | saucer | empty");
  cert->add_option("--rank", rank)->capture_default_str();
  cert->add_option("--field", field)->capture_default_str();
  cert->add_option("--budget", budget);
  cert->add_option("-o,--output", out, "sheaf JSON of the witness");
  cert->callback([&] {
    action = [&] {
      if (cert_file.empty() == poset_s.empty()) throw SchemaError("give exactly one of a sheaf file or --poset");
      if (!cert_file.empty()) {
        const auto r = sheaf_from_json(read_json_file(cert_file));
        const auto m = microsupport(r);
        const auto pos = r.poset.positive_edges();
        const bool ok =
            !m.zero_section_only && std::includes(pos.begin(), pos.end(), m.failing.begin(), m.failing.end());
        std::cout << (ok ? "NonLooseWitnessFound" : "NotACertificate") << "\n";
        kv("microsupport", edge_list(r.poset, m.failing));
        return ok ? 0 : 1;
      }
      check_search_flags();
      const auto P = build_poset(poset_kind_from(poset_s));
      const auto c = search_witness(P, rank, field, budget);
      std::cout << c.verdict() << "\n";
      kv("non_loose", c.found ? std::string("certified") : std::string("undecided"));
      if (c.witness) write_json(out, sheaf_to_json(*c.witness));
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 2;
  } catch (const SchemaError& e) {
    std::cout << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cout << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cout << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n";
    return 2;
  }
}

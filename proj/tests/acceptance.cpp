// Acceptance run: one PASS/FAIL line per criterion, with timings and measured values.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "legfront/legfront.hpp"
#include "oracles.hpp"

using namespace legfront;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failures;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    failures += " [failed: " + what + "]";
  }
};

std::string g(double v) { return fmt_sig(v, 4); }

// ---------------------------------------------------------------------------------------

void lifting(Outcome& o) {
  std::vector<std::pair<std::string, FrontDiagram>> corpus;
  for (double d : {0.25, 0.4, 0.6, 0.8, unit_zigzag_delta(), 1.2, 1.6, 2.0})
    corpus.emplace_back("zigzag", psi_zigzag_front(d, 5000));
  corpus.emplace_back("unknot", builtin_front("unknot", 0, 2600));
  for (int n = 1; n <= 5; ++n)
    for (unsigned s : {0U, 0x15U}) corpus.emplace_back("stabilized", stabilized_unknot(n, s, 2600));
  corpus.emplace_back("saucer", saucer_slice(5001));

  double worst_res = 0, worst_rt = 0;
  std::size_t fewest = SIZE_MAX;
  for (const auto& [name, f] : corpus) {
    o.check(validate_front(f).ok(), name + " invalid");
    const auto lifts = lift_components(f);
    std::size_t n = 0;
    for (const auto& l : lifts) {
      n += l.size();
      worst_res = std::max(worst_res, legendrian_residual(l));
    }
    fewest = std::min(fewest, n);
    worst_rt = std::max(worst_rt, roundtrip_error(f, lifts));
  }
  o.check(corpus.size() >= 20, "corpus size");
  o.check(fewest >= 10000, "samples per front");
  o.check(worst_res < 1e-6, "residual");
  o.check(worst_rt < 1e-9, "round trip");
  o.detail << corpus.size() << " fronts, >= " << fewest << " samples, residual " << g(worst_res)
           << ", round trip " << g(worst_rt);
}

void moves(Outcome& o) {
  int isotopies = 0, stabs = 0, kinds[3] = {0, 0, 0}, oracle_checked = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PlatData pd = random_knot_word(seed, 14, 6, PlatStyle{2.0, 0.5, 16});
    const auto f = realize_plat(pd);
    const auto a = classical_invariants(f);

    std::vector<MoveKind> used;
    const auto moved = realize_plat(random_isotopy(pd, 4, seed, &used));
    const auto b = classical_invariants(moved);
    o.check(a.tb == b.tb && a.rot == b.rot, "isotopy changed invariants, seed " + std::to_string(seed));
    for (auto k : used) {
      if (k == MoveKind::R1) ++kinds[0];
      if (k == MoveKind::R2) ++kinds[1];
      if (k == MoveKind::R3) ++kinds[2];
    }
    ++isotopies;

    bool stabilized = false;
    for (int ev = 1; ev < static_cast<int>(pd.word.size()) && !stabilized; ++ev)
      for (int pos = 0; pos < 6 && !stabilized; ++pos) {
        MoveSite s;
        s.event = ev;
        s.pos = pos;
        s.variant = static_cast<int>(seed & 1U);
        try {
          const auto c = classical_invariants(apply_move(f, MoveKind::Stabilize, s).front);
          o.check(c.tb == a.tb - 1, "stabilization tb, seed " + std::to_string(seed));
          o.check(std::abs(c.rot - a.rot) == 1, "stabilization rot, seed " + std::to_string(seed));
          stabilized = true;
        } catch (const PatternError&) {
        }
      }
    o.check(stabilized, "no stabilization site, seed " + std::to_string(seed));
    stabs += stabilized;

    if (seed < 8) {
      o.check(oracle::pushoff_tb(lift_front(realize_plat(random_knot_word(seed, 14, 6, PlatStyle{2.0, 0.5, 32})))) ==
                  a.tb,
              "push-off oracle, seed " + std::to_string(seed));
      ++oracle_checked;
    }
  }
  o.check(kinds[0] > 0 && kinds[1] > 0 && kinds[2] > 0, "every move kind exercised");
  o.detail << isotopies << " isotopies (R1 " << kinds[0] << ", R2 " << kinds[1] << ", R3 " << kinds[2] << "), "
           << stabs << " stabilizations, oracle agrees on " << oracle_checked << " fronts";
}

void approximation(Outcome& o) {
  const auto c = circle_curve(2001);
  const std::vector<std::size_t> marked = {0, 500, 1000, 1500};
  for (double eps : {0.2, 0.1, 0.05}) {
    const auto r = approximate_curve(c, eps, marked);
    double mark = 0;
    int hits = 0;
    for (std::size_t k = 0; k < r.node_in.size(); ++k) {
      if (std::find(marked.begin(), marked.end(), r.node_in[k]) == marked.end()) continue;
      ++hits;
      for (std::size_t i = 0; i < 3; ++i)
        mark = std::max(mark, std::abs(r.curve.points[r.node_out[k]][i] - c.points[r.node_in[k]][i]));
    }
    const std::string e = g(eps);
    o.check(r.sup_distance < eps, "sup at " + e);
    o.check(r.slope_error < eps, "slope at " + e);
    o.check(r.residual < 1e-6, "residual at " + e);
    o.check(hits == 4 && mark == 0, "marked points at " + e);
    o.detail << "eps " << e << ": sup " << g(r.sup_distance) << " slope " << g(r.slope_error) << " residual "
             << g(r.residual) << "; ";
  }
  ApproxOptions opt;
  opt.loop_samples = 256;
  const Point A{0, 0, 0}, B{1, 0, 0};
  for (auto [s, t] : {std::pair{A, B}, std::pair{B, A}}) {
    const auto p = plan_unicycle(s, t, 0.05, {}, opt);
    o.check(p.sup_distance < 0.05, "parking sup");
    o.check(p.residual < 1e-6, "parking residual");
    o.check(p.path.points.front() == s && p.path.points.back() == t, "parking endpoints");
    o.detail << "park " << p.maneuvers << " maneuvers sup " << g(p.sup_distance) << " residual " << g(p.residual)
             << "; ";
  }
}

void loose_calculus(Outcome& o) {
  std::mt19937_64 rng(0);
  const auto ch = make_chart(Rational(7, 3), Rational(5, 2), 0.1, 50);
  const auto size = classify_chart(ch).size;
  int same = 0;
  for (int i = 0; i < 1000; ++i) {
    const Rational c(static_cast<long long>(rng() % 1000000 + 1), static_cast<long long>(rng() % 1000000 + 1));
    same += classify_chart(contact_scale(ch, c)).size == size;
  }
  o.check(same == 1000, "scaling invariance");

  const auto r = squeeze_chart(make_chart(Rational(4), Rational(2), 0.1, 400), Rational(2), 3);
  int loose = 0;
  Rational smallest = 1000000;
  for (const auto& c : r.charts) {
    const auto k = classify_chart(c);
    loose += k.cls == ChartClass::Loose;
    smallest = std::min(smallest, k.size);
  }
  o.check(r.charts.size() == 3 && loose == 3, "three loose charts");
  o.check(smallest >= 2, "size parameter");
  o.check(r.disjoint && r.contained && r.fronts_inside, "disjoint and contained");
  const bool bound = r.max_p <= r.bound + 1e-6;
  o.check(bound, "slope bound max|dz/dq| <= (1-delta)/rho");
  o.detail << same << "/1000 scalings exact; " << r.charts.size() << " charts, " << loose
           << " Loose, min size " << g(to_double(smallest)) << ", disjoint " << (r.disjoint ? "yes" : "no")
           << "; delta " << g(r.delta) << ", max|dz/dq| " << g(r.max_p) << " vs bound " << g(r.bound)
           << " (below rho " << g(r.rho0) << ": " << (r.p_below_rho ? "yes" : "no") << ")";
}

void wrinkles(Outcome& o) {
  double worst = 0;
  for (double u : linspace(-2, 2, 100))
    for (double v : linspace(-2, 2, 100)) worst = std::max(worst, pullback_uv(wrinkle_lift_uv(u, v)));
  o.check(worst < 1e-9, "pullback");

  int rank1 = 0, bad = 0;
  for (double u : {-1.0, 1.0}) rank1 += numeric_rank(wrinkle_lift_uv(u, 0).jac) == 1;
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      if ((i == 25 || i == 75) && j == 50) continue;
      bad += numeric_rank(wrinkle_lift_uv(-2 + 0.04 * i, -2 + 0.04 * j).jac) != 2;
    }
  o.check(rank1 == 2 && bad == 0, "rank pattern");

  WrinkleModel w;
  w.mode = WrinkleMode::Embryo;
  std::size_t counts[3];
  double off = 0;
  int k = 0;
  for (double tau : {-0.5, 0.0, 0.5}) {
    w.tau = tau;
    const auto L = detect_singular_loci(w);
    counts[k++] = L.wrinkle.size();
    if (tau > 0)
      for (const auto& p : L.wrinkle) off = std::max(off, std::abs(p.squaredNorm() - tau));
  }
  o.check(counts[0] == 0 && counts[1] == 1 && counts[2] > 20 && off < 1e-6, "embryo transitions");

  const auto r = resolve_inside_out(0.01, 2, 400);
  o.check(r.rank_drops == 0, "rank drops after resolution");
  o.check(r.cls && r.cls->cls == ChartClass::Loose, "resolved chart class");
  o.detail << "pullback " << g(worst) << "; rank 1 at (+-1,0), rank 2 at " << 101 * 101 - 2 - bad
           << " other points; embryo loci " << counts[0] << " -> " << counts[1] << " -> " << counts[2]
           << " points on |x|^2 = 0.5; resolution: " << r.rank_drops << " rank drops on 400^2, chart "
           << (r.cls ? to_string(r.cls->cls) : "none");
}

void sheaves(Outcome& o) {
  const auto Z = build_poset(PosetKind::ZigzagInDisk);
  const auto z1 = search_witness(Z, 1, 2);
  const auto closure = forced_iso_closure(Z);
  o.check(!z1.found, "zig-zag rank 1");
  o.check(closure.size() == Z.edges.size(), "zig-zag closure");

  const auto S = build_poset(PosetKind::SaucerSlice);
  const auto s1 = search_witness(S, 1, 2);
  std::vector<int> want(S.strata.size(), 0);
  want[static_cast<std::size_t>(S.stratum("top"))] = 1;
  want[static_cast<std::size_t>(S.stratum("inner"))] = 1;
  o.check(s1.found && s1.witness && s1.witness->dims == want, "saucer witness dims");
  o.check(s1.found && microsupport(*s1.witness).failing == S.positive_edges(), "saucer failing set");

  const auto z2 = search_witness(Z, 2, 2);
  o.check(!z2.found, "zig-zag rank 2");
  o.detail << "zigzag r1 " << z1.verdict() << " closure " << closure.size() << "/" << Z.edges.size()
           << "; saucer r1 " << s1.verdict() << " (" << s1.candidates << " candidates); zigzag r2 " << z2.verdict()
           << " (" << z2.candidates << " candidates)";
}

void nonsqueezing(Outcome& o) {
  for (auto [rho, a] : {std::pair{Rational(1, 2), Rational(1)}, std::pair{Rational(1), Rational(4)}}) {
    const auto r = nonsqueezing_front(rho, a);
    o.check(r.slope == a / (2 * rho) && r.slope == 2 * rho && r.slope > rho, "exact slope");
    o.check(r.misses_chart, "misses chart");
    o.check(std::abs(r.action1 - to_double(a)) < 1e-6, "component-1 action");
    o.detail << "rho " << to_string(rho) << " a " << to_string(a) << ": slope " << to_string(r.slope)
             << ", action1 error " << g(std::abs(r.action1 - to_double(a))) << "; ";
  }
  bool rejected = false;
  try {
    nonsqueezing_front(Rational(1), Rational(2));
  } catch (const DomainError&) {
    rejected = true;
  }
  o.check(rejected, "critical chart rejected");
  o.detail << "rho^2/a = 1/2 rejected: " << (rejected ? "yes" : "no");
}

// ---------------------------------------------------------------------------------------

std::string shell(const std::string& cmd, int& code) {
  std::string out;
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) {
    code = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int st = pclose(p);
  code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

std::string tree_bytes(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    all += f.filename().string() + "\n" + s.str();
  }
  return all;
}

void determinism(Outcome& o) {
  const std::vector<std::string> cmds = {
      "validate --builtin saucer",
      "lift --builtin stabilized2 -o lift.json",
      "invariants --builtin random",
      "move --builtin random --random 6 -o moved.json --svg moved.svg",
      "move --builtin unknot --kind stabilize --event 1 --pos 0 -o stab.json",
      "render --builtin zigzag -o zigzag.svg",
      "approximate --builtin circle --epsilon 0.1 --marked 0,500,1000,1500 -o circle.json --svg circle.svg",
      "park --start 0,0,0 --goal 1,0,0 --epsilon 0.05 -o park.json",
      "loose-classify --rho 7/3 --action 5/2",
      "loose-squeeze --rho 4 --action 2 --sigma 2 --count 3 --grid 200 -o squeeze.json",
      "nonsqueeze --rho 1/2 --action 1 -o link.json",
      "wrinkle eval --u 0.3 --v -0.7",
      "wrinkle loci --mode embryo --tau 0.5 --grid 101 --csv loci.csv --svg loci.svg",
      "wrinkle resolve --delta 0.01 --grid 400",
      "saucer --dim 1 --grid 5000 -o saucer.json --svg saucer.svg",
      "saucer --dim 2 --grid 100 -o saucer2.json",
      "sheaf poset --poset saucer",
      "sheaf witness --poset saucer --rank 1 --field 2 -o witness.json",
      "sheaf ss witness.json",
      "sheaf certify --poset zigzag --rank 2 --field 2",
      "certify witness.json",
  };
  const fs::path root = fs::temp_directory_path() / "legfront_acceptance";
  fs::remove_all(root);
  std::string transcript[2], files[2];
  int failures = 0;
  for (int pass = 0; pass < 2; ++pass) {
    const fs::path dir = root / std::to_string(pass);
    fs::create_directories(dir);
    for (const auto& c : cmds) {
      int code = 0;
      const auto out = shell("cd '" + dir.string() + "' && " + LEGFRONT_CLI + " --seed 0 " + c, code);
      failures += code != 0;
      transcript[pass] += "$ " + c + "\n" + out + "exit " + std::to_string(code) + "\n";
    }
    files[pass] = tree_bytes(dir);
  }
  fs::remove_all(root);
  o.check(failures == 0, "a command exited nonzero");
  o.check(transcript[0] == transcript[1], "stdout differs");
  o.check(files[0] == files[1], "files differ");
  o.detail << cmds.size() << " commands twice, " << transcript[0].size() << " bytes of stdout and " << files[0].size()
           << " bytes of files compared";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::function<void(Outcome&)>, double>> runs = {
      {lifting, 5},   {moves, 30},       {approximation, 10}, {loose_calculus, 20},
      {wrinkles, 30}, {sheaves, 60}, {nonsqueezing, 5},   {determinism, 0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      runs[i].first(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (runs[i].second > 0 && secs >= runs[i].second)
      o.check(false, "runtime over " + g(runs[i].second) + " s");
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " (" << fmt_sig(secs, 3) << " s) "
              << o.detail.str() << o.failures << std::endl;
  }
  return failed ? 1 : 0;
}

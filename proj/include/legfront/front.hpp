#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "contact.hpp"
#include "util.hpp"

namespace legfront {

// ---------------------------------------------------------------------------------------
// Data

// A sampled front arc (x, z), stored in traversal order. y = dz/dx is optional; when present
// it is used verbatim by the lift.
struct FrontArc {
  int id = 0;
  std::vector<double> x, z, y;
  std::size_t size() const { return x.size(); }
};

// End of arc `from` is glued to the start of arc `to`.
struct Junction {
  int from = 0, to = 0;
  bool cusp = false;
};

// Declared crossing between arcs a and b near abscissa x, with the arc drawn in front.
struct CrossingSpec {
  int a = 0, b = 0;
  double x = 0;
  int over = 0;
};

enum class EventKind { L, R, X };

struct PlatEvent {
  EventKind kind = EventKind::X;
  int pos = 0;
  bool operator==(const PlatEvent&) const = default;
};

struct PlatStyle {
  double width = 2.0;   // x-extent of one event window
  double height = 0.5;  // vertical spacing between strand positions
  int samples = 64;     // samples per half window
};

// Combinatorial plat description. Events are read left to right; L(i) opens a left cusp at
// positions i, i+1; R(i) closes positions i, i+1 with a right cusp; X(i) swaps i and i+1.
struct PlatData {
  std::vector<PlatEvent> word;
  int open_strands = 0;
  std::vector<bool> flips;  // per component, reverses the default orientation
  PlatStyle style;
};

struct FrontDiagram {
  std::vector<FrontArc> arcs;
  std::vector<Junction> junctions;
  std::vector<CrossingSpec> crossings;
  bool closed = false;
  std::optional<PlatData> plat;
};

inline std::string word_to_string(const std::vector<PlatEvent>& w) {
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ' ';
    s += (w[k].kind == EventKind::L ? 'L' : w[k].kind == EventKind::R ? 'R' : 'X');
    s += std::to_string(w[k].pos);
  }
  return s;
}

inline std::vector<PlatEvent> word_from_string(const std::string& s) {
  std::vector<PlatEvent> w;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2) throw SchemaError("bad plat event '" + tok + "'");
    PlatEvent e;
    switch (tok[0]) {
      case 'L': e.kind = EventKind::L; break;
      case 'R': e.kind = EventKind::R; break;
      case 'X': e.kind = EventKind::X; break;
      default: throw SchemaError("bad plat event '" + tok + "'");
    }
    try {
      std::size_t used = 0;
      e.pos = std::stoi(tok.substr(1), &used);
      if (used + 1 != tok.size() || e.pos < 0) throw std::invalid_argument("x");
    } catch (const std::exception&) {
      throw SchemaError("bad plat event '" + tok + "'");
    }
    w.push_back(e);
  }
  return w;
}

// ---------------------------------------------------------------------------------------
// Validation

enum class ViolationKind {
  Malformed,
  VerticalTangency,
  Discontinuity,
  BadCusp,
  Tangency,
  OverUnder,
  PhantomCrossing
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::Malformed: return "Malformed";
    case ViolationKind::VerticalTangency: return "VerticalTangency";
    case ViolationKind::Discontinuity: return "Discontinuity";
    case ViolationKind::BadCusp: return "BadCusp";
    case ViolationKind::Tangency: return "Tangency";
    case ViolationKind::OverUnder: return "OverUnder";
    case ViolationKind::PhantomCrossing: return "PhantomCrossing";
  }
  return "?";
}

struct Violation {
  ViolationKind kind = ViolationKind::Malformed;
  int arc = -1;
  double param = 0;  // fractional sample index along the arc
  double x = 0, z = 0;
  std::string detail;
};

// Geometric crossing. sign follows the right-handed convention with the viewer on the
// negative y side.
struct GeoCrossing {
  int a = 0, b = 0;  // arc ids, a < b
  double x = 0, z = 0;
  double ta = 0, tb = 0;
  double slope_a = 0, slope_b = 0;
  int over = 0;
  int sign = 0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<GeoCrossing> crossings;
  bool ok() const { return violations.empty(); }
  std::string summary() const {
    std::string s;
    for (const auto& v : violations) {
      s += std::string(to_string(v.kind)) + " arc " + std::to_string(v.arc) + " at x=" +
           fmt_sig(v.x) + " z=" + fmt_sig(v.z);
      if (!v.detail.empty()) s += " (" + v.detail + ")";
      s += "\n";
    }
    return s;
  }
};

struct InvalidFrontError : DomainError {
  ValidationReport report;
  explicit InvalidFrontError(ValidationReport r)
      : DomainError("invalid front:\n" + r.summary()), report(std::move(r)) {}
};

namespace detail {

inline int arc_dir(const FrontArc& a) { return a.x.back() > a.x.front() ? 1 : -1; }

// Slope at sample k of an arc: stored y when present, chord slope otherwise.
inline double slope_at(const FrontArc& a, std::size_t k) {
  if (!a.y.empty()) return a.y[k];
  const std::size_t n = a.size();
  std::size_t i = k + 1 < n ? k : k - 1;
  return (a.z[i + 1] - a.z[i]) / (a.x[i + 1] - a.x[i]);
}

// Increasing-x view of an x-monotone arc.
struct MonoView {
  const FrontArc* arc;
  bool rev;
  std::size_t n;
  explicit MonoView(const FrontArc& a) : arc(&a), rev(arc_dir(a) < 0), n(a.size()) {}
  std::size_t idx(std::size_t k) const { return rev ? n - 1 - k : k; }
  double X(std::size_t k) const { return arc->x[idx(k)]; }
  double Z(std::size_t k) const { return arc->z[idx(k)]; }
  double xmin() const { return X(0); }
  double xmax() const { return X(n - 1); }
  // Advance ptr so that X(ptr) <= x <= X(ptr+1); returns interpolated z.
  double at(double x, std::size_t& ptr) const {
    while (ptr + 2 < n && X(ptr + 1) <= x) ++ptr;
    const double x0 = X(ptr), x1 = X(ptr + 1);
    const double w = x1 == x0 ? 0 : (x - x0) / (x1 - x0);
    return Z(ptr) + w * (Z(ptr + 1) - Z(ptr));
  }
  // Fractional original sample index of x on segment ptr.
  double param(double x, std::size_t ptr) const {
    const double x0 = X(ptr), x1 = X(ptr + 1);
    const double w = x1 == x0 ? 0 : (x - x0) / (x1 - x0);
    const double k = static_cast<double>(ptr) + w;
    return rev ? static_cast<double>(n - 1) - k : k;
  }
  double slope(double x, std::size_t ptr) const {
    const FrontArc& a = *arc;
    if (a.y.empty()) return (Z(ptr + 1) - Z(ptr)) / (X(ptr + 1) - X(ptr));
    const double x0 = X(ptr), x1 = X(ptr + 1);
    const double w = x1 == x0 ? 0 : (x - x0) / (x1 - x0);
    return a.y[idx(ptr)] + w * (a.y[idx(ptr + 1)] - a.y[idx(ptr)]);
  }
};

inline double arc_z_at(const FrontArc& a, double x) {
  MonoView v(a);
  std::size_t p = 0;
  return v.at(std::clamp(x, v.xmin(), v.xmax()), p);
}

inline void find_crossings(const FrontArc& A, const FrontArc& B, ValidationReport& rep) {
  MonoView va(A), vb(B);
  const double lo = std::max(va.xmin(), vb.xmin());
  const double hi = std::min(va.xmax(), vb.xmax());
  if (!(lo < hi)) return;
  std::vector<double> xs;
  xs.reserve(A.size() + B.size());
  xs.push_back(lo);
  for (std::size_t k = 0; k < va.n; ++k)
    if (va.X(k) > lo && va.X(k) < hi) xs.push_back(va.X(k));
  for (std::size_t k = 0; k < vb.n; ++k)
    if (vb.X(k) > lo && vb.X(k) < hi) xs.push_back(vb.X(k));
  xs.push_back(hi);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const std::size_t m = xs.size();
  std::vector<double> d(m), za(m);
  std::vector<std::size_t> pa(m), pb(m);
  std::size_t ia = 0, ib = 0;
  for (std::size_t k = 0; k < m; ++k) {
    za[k] = va.at(xs[k], ia);
    const double zb = vb.at(xs[k], ib);
    pa[k] = ia;
    pb[k] = ib;
    d[k] = za[k] - zb;
    if (std::abs(d[k]) <= 1e-12 * (1 + std::abs(za[k]))) d[k] = 0;
  }
  auto record = [&](double x, double z, std::size_t sa, std::size_t sb) {
    GeoCrossing c;
    c.x = x;
    c.z = z;
    double s1 = va.slope(x, sa), s2 = vb.slope(x, sb);
    if (std::abs(s1 - s2) < 1e-12) {
      rep.violations.push_back({ViolationKind::Tangency, A.id, va.param(x, sa), x, z,
                                "tangent with arc " + std::to_string(B.id)});
      return;
    }
    const bool a_first = A.id < B.id;
    c.a = a_first ? A.id : B.id;
    c.b = a_first ? B.id : A.id;
    c.ta = a_first ? va.param(x, sa) : vb.param(x, sb);
    c.tb = a_first ? vb.param(x, sb) : va.param(x, sa);
    c.slope_a = a_first ? s1 : s2;
    c.slope_b = a_first ? s2 : s1;
    c.over = c.slope_a < c.slope_b ? c.a : c.b;
    c.sign = arc_dir(A) * arc_dir(B);
    rep.crossings.push_back(c);
  };
  std::size_t k = 0;
  while (k < m) {
    if (d[k] == 0) {
      std::size_t j = k;
      while (j + 1 < m && d[j + 1] == 0) ++j;
      if (k > 0 && j + 1 < m) {
        const std::size_t mid = (k + j) / 2;
        if (sgn(d[k - 1]) * sgn(d[j + 1]) < 0)
          record(xs[mid], za[mid], pa[mid], pb[mid]);
        else
          rep.violations.push_back({ViolationKind::Tangency, A.id, va.param(xs[mid], pa[mid]),
                                    xs[mid], za[mid], "touches arc " + std::to_string(B.id)});
      }
      k = j + 1;
      continue;
    }
    if (k + 1 < m && d[k + 1] != 0 && sgn(d[k]) * sgn(d[k + 1]) < 0) {
      const double w = d[k] / (d[k] - d[k + 1]);
      const double x = xs[k] + w * (xs[k + 1] - xs[k]);
      std::size_t sa = pa[k], sb = pb[k];
      const double z = va.at(x, sa);
      vb.at(x, sb);
      record(x, z, sa, sb);
    }
    ++k;
  }
}

}  // namespace detail

inline ValidationReport validate_front(const FrontDiagram& f) {
  ValidationReport rep;
  std::map<int, std::size_t> index;
  bool malformed = false;
  auto bad = [&](int arc, const std::string& what) {
    rep.violations.push_back({ViolationKind::Malformed, arc, 0, 0, 0, what});
    malformed = true;
  };
  for (std::size_t i = 0; i < f.arcs.size(); ++i) {
    const auto& a = f.arcs[i];
    if (!index.emplace(a.id, i).second) bad(a.id, "duplicate arc id");
    if (a.x.size() < 2 || a.z.size() != a.x.size())
      bad(a.id, "arc needs >= 2 samples with matching x and z");
    if (!a.y.empty() && a.y.size() != a.x.size()) bad(a.id, "y length mismatch");
  }
  std::map<int, int> outdeg, indeg;
  for (const auto& j : f.junctions) {
    if (!index.count(j.from) || !index.count(j.to)) {
      bad(j.from, "junction references unknown arc");
      continue;
    }
    if (++outdeg[j.from] > 1) bad(j.from, "arc has two outgoing junctions");
    if (++indeg[j.to] > 1) bad(j.to, "arc has two incoming junctions");
  }
  if (malformed) return rep;

  // (1) no vertical tangencies inside arcs
  std::vector<bool> monotone(f.arcs.size(), true);
  for (std::size_t i = 0; i < f.arcs.size(); ++i) {
    const auto& a = f.arcs[i];
    int prev = 0;
    for (std::size_t k = 0; k + 1 < a.size(); ++k) {
      const double dx = a.x[k + 1] - a.x[k];
      const int s = sgn(dx);
      if (s == 0 || (prev != 0 && s != prev)) {
        rep.violations.push_back({ViolationKind::VerticalTangency, a.id,
                                  static_cast<double>(s == 0 ? k : k), a.x[k], a.z[k],
                                  s == 0 ? "zero x-step" : "x reverses inside arc"});
        monotone[i] = false;
      }
      if (s != 0) prev = s;
    }
  }
  // junctions: continuity, cusp normal form, no reversal at smooth junctions
  for (const auto& j : f.junctions) {
    const auto& A = f.arcs[index[j.from]];
    const auto& B = f.arcs[index[j.to]];
    const std::size_t na = A.size();
    const double ex = A.x[na - 1], ez = A.z[na - 1];
    const double scale = 1 + std::abs(ex) + std::abs(ez);
    if (std::abs(ex - B.x[0]) > 1e-9 * scale || std::abs(ez - B.z[0]) > 1e-9 * scale) {
      rep.violations.push_back({ViolationKind::Discontinuity, A.id,
                                static_cast<double>(na - 1), ex, ez,
                                "does not meet arc " + std::to_string(B.id)});
      continue;
    }
    const int din = sgn(A.x[na - 1] - A.x[na - 2]);
    const int dout = sgn(B.x[1] - B.x[0]);
    if (j.cusp) {
      const double sin = detail::slope_at(A, na - 1), sout = detail::slope_at(B, 0);
      if (din == dout)
        rep.violations.push_back({ViolationKind::BadCusp, A.id, static_cast<double>(na - 1), ex,
                                  ez, "cusp without reversal of x"});
      else if (std::abs(sin - sout) > 0.05 * (1 + std::abs(sin) + std::abs(sout)))
        rep.violations.push_back({ViolationKind::BadCusp, A.id, static_cast<double>(na - 1), ex,
                                  ez, "branch slopes disagree"});
    } else if (din != dout) {
      rep.violations.push_back({ViolationKind::VerticalTangency, A.id,
                                static_cast<double>(na - 1), ex, ez,
                                "x reverses at smooth junction"});
    }
  }
  // (2) crossings are transverse; (3) declared over-strand has the smaller slope
  for (std::size_t i = 0; i < f.arcs.size(); ++i)
    for (std::size_t k = i + 1; k < f.arcs.size(); ++k)
      if (monotone[i] && monotone[k]) detail::find_crossings(f.arcs[i], f.arcs[k], rep);
  std::sort(rep.crossings.begin(), rep.crossings.end(), [](const auto& p, const auto& q) {
    return std::tie(p.x, p.z, p.a, p.b) < std::tie(q.x, q.z, q.a, q.b);
  });
  for (const auto& c : f.crossings) {
    const int a = std::min(c.a, c.b), b = std::max(c.a, c.b);
    const GeoCrossing* hit = nullptr;
    for (const auto& g : rep.crossings)
      if (g.a == a && g.b == b && std::abs(g.x - c.x) <= 1e-6 * (1 + std::abs(c.x)) &&
          (!hit || std::abs(g.x - c.x) < std::abs(hit->x - c.x)))
        hit = &g;
    if (!hit) {
      rep.violations.push_back({ViolationKind::PhantomCrossing, a, 0, c.x, 0,
                                "declared crossing with arc " + std::to_string(b) + " not found"});
      continue;
    }
    if (c.over != hit->over)
      rep.violations.push_back({ViolationKind::OverUnder, c.over, c.over == a ? hit->ta : hit->tb,
                                hit->x, hit->z, "over-strand has the larger slope"});
  }
  std::sort(rep.violations.begin(), rep.violations.end(), [](const auto& p, const auto& q) {
    return std::tie(p.kind, p.arc, p.param, p.x, p.z, p.detail) <
           std::tie(q.kind, q.arc, q.param, q.x, q.z, q.detail);
  });
  return rep;
}

// ---------------------------------------------------------------------------------------
// Components, lifting, invariants

// Arc indices (into f.arcs) per component, in traversal order. Open chains come first.
inline std::vector<std::vector<std::size_t>> front_components(const FrontDiagram& f,
                                                              std::vector<bool>* cyclic = nullptr) {
  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < f.arcs.size(); ++i) index[f.arcs[i].id] = i;
  const std::size_t n = f.arcs.size();
  std::vector<long> next(n, -1), prev(n, -1);
  for (const auto& j : f.junctions) {
    next[index.at(j.from)] = static_cast<long>(index.at(j.to));
    prev[index.at(j.to)] = static_cast<long>(index.at(j.from));
  }
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> comps;
  if (cyclic) cyclic->clear();
  auto walk = [&](std::size_t s, bool cyc) {
    std::vector<std::size_t> c;
    long k = static_cast<long>(s);
    while (k >= 0 && !seen[static_cast<std::size_t>(k)]) {
      seen[static_cast<std::size_t>(k)] = true;
      c.push_back(static_cast<std::size_t>(k));
      k = next[static_cast<std::size_t>(k)];
    }
    comps.push_back(c);
    if (cyclic) cyclic->push_back(cyc);
  };
  for (std::size_t i = 0; i < n; ++i)
    if (prev[i] < 0) walk(i, false);
  for (std::size_t i = 0; i < n; ++i)
    if (!seen[i]) walk(i, true);
  return comps;
}

namespace detail {

// Three-point slope estimate for arcs that carry no y data.
inline std::vector<double> estimate_slopes(const FrontArc& a) {
  const std::size_t n = a.size();
  std::vector<double> y(n);
  if (n == 2) {
    y[0] = y[1] = (a.z[1] - a.z[0]) / (a.x[1] - a.x[0]);
    return y;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = a.x[i] - a.x[i - 1], h2 = a.x[i + 1] - a.x[i];
    y[i] = (h1 * h1 * (a.z[i + 1] - a.z[i]) + h2 * h2 * (a.z[i] - a.z[i - 1])) /
           (h1 * h2 * (h1 + h2));
  }
  auto one_sided = [&](std::size_t i0, std::size_t i1, std::size_t i2) {
    const double h1 = a.x[i1] - a.x[i0], h2 = a.x[i2] - a.x[i1];
    return -(2 * h1 + h2) / (h1 * (h1 + h2)) * a.z[i0] + (h1 + h2) / (h1 * h2) * a.z[i1] -
           h1 / (h2 * (h1 + h2)) * a.z[i2];
  };
  y[0] = one_sided(0, 1, 2);
  y[n - 1] = one_sided(n - 1, n - 2, n - 3);
  return y;
}

}  // namespace detail

// Lift every component to R3Std; y = dz/dx (stored data, or three-point estimates with the two
// branch estimates averaged at junctions).
inline std::vector<SampledLegendrian> lift_components(const FrontDiagram& f) {
  auto rep = validate_front(f);
  if (!rep.ok()) throw InvalidFrontError(rep);
  std::vector<std::vector<double>> ys(f.arcs.size());
  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < f.arcs.size(); ++i) {
    index[f.arcs[i].id] = i;
    ys[i] = f.arcs[i].y.empty() ? detail::estimate_slopes(f.arcs[i]) : f.arcs[i].y;
  }
  for (const auto& j : f.junctions) {
    auto& ya = ys[index[j.from]];
    auto& yb = ys[index[j.to]];
    if (f.arcs[index[j.from]].y.empty() || f.arcs[index[j.to]].y.empty()) {
      const double m = 0.5 * (ya.back() + yb.front());
      ya.back() = m;
      yb.front() = m;
    }
  }
  std::vector<bool> cyc;
  auto comps = front_components(f, &cyc);
  std::vector<SampledLegendrian> out;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    SampledLegendrian L;
    L.model = ContactModel::r3();
    L.closed = cyc[c];
    for (std::size_t r = 0; r < comps[c].size(); ++r) {
      const auto& a = f.arcs[comps[c][r]];
      const auto& y = ys[comps[c][r]];
      for (std::size_t k = (r == 0 ? 0 : 1); k < a.size(); ++k)
        L.points.push_back({a.x[k], y[k], a.z[k]});
    }
    if (L.closed) L.points.back() = L.points.front();
    L.params.resize(L.points.size());
    std::iota(L.params.begin(), L.params.end(), 0.0);
    out.push_back(std::move(L));
  }
  return out;
}

inline SampledLegendrian lift_front(const FrontDiagram& f) {
  auto comps = lift_components(f);
  if (comps.size() != 1)
    throw DomainError("lift_front expects one component, found " + std::to_string(comps.size()));
  return std::move(comps[0]);
}

// Max deviation between the front projection of the lift and the arc samples.
inline double roundtrip_error(const FrontDiagram& f, const std::vector<SampledLegendrian>& lifts) {
  auto comps = front_components(f);
  if (comps.size() != lifts.size()) return INFINITY;
  double err = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    std::size_t p = 0;
    const auto& P = lifts[c].points;
    for (std::size_t r = 0; r < comps[c].size(); ++r) {
      const auto& a = f.arcs[comps[c][r]];
      for (std::size_t k = (r == 0 ? 0 : 1); k < a.size(); ++k, ++p) {
        if (p >= P.size()) return INFINITY;
        err = std::max({err, std::abs(P[p][0] - a.x[k]), std::abs(P[p][2] - a.z[k])});
      }
    }
    if (p != P.size()) return INFINITY;
  }
  return err;
}

// Split a sampled R3Std curve at x-reversals into a front diagram.
inline FrontDiagram front_of(const SampledLegendrian& c) {
  if (c.model.dim() != 3 || c.model.kind == ModelKind::Unicycle || c.is_grid())
    throw DomainError("front_of needs an R3Std curve");
  FrontDiagram f;
  f.closed = c.closed;
  const auto& P = c.points;
  if (P.size() < 2) return f;
  FrontArc cur;
  auto push = [&](std::size_t k) {
    cur.x.push_back(P[k][0]);
    cur.y.push_back(P[k][1]);
    cur.z.push_back(P[k][2]);
  };
  int dir = 0;
  push(0);
  for (std::size_t k = 1; k < P.size(); ++k) {
    const int s = sgn(P[k][0] - P[k - 1][0]);
    if (dir != 0 && s != 0 && s != dir) {
      cur.id = static_cast<int>(f.arcs.size());
      f.arcs.push_back(cur);
      f.junctions.push_back({cur.id, cur.id + 1, true});
      cur = FrontArc{};
      push(k - 1);
    }
    if (s != 0) dir = s;
    push(k);
  }
  cur.id = static_cast<int>(f.arcs.size());
  f.arcs.push_back(cur);
  if (c.closed) {
    const auto& last = f.arcs.back();
    const auto& first = f.arcs.front();
    const int dl = sgn(last.x.back() - last.x[last.size() - 2]);
    const int df = sgn(first.x[1] - first.x[0]);
    if (f.arcs.size() > 1 && dl == df) {
      // closing point is not a turning point: merge the last arc into the first
      FrontArc merged = last;
      for (std::size_t k = 1; k < first.size(); ++k) {
        merged.x.push_back(first.x[k]);
        merged.y.push_back(first.y[k]);
        merged.z.push_back(first.z[k]);
      }
      merged.id = 0;
      f.arcs.front() = merged;
      f.arcs.pop_back();
      f.junctions.pop_back();
      f.junctions.push_back({static_cast<int>(f.arcs.size()) - 1, 0, true});
      if (f.arcs.size() == 1) f.junctions.back().cusp = false;
    } else {
      f.junctions.push_back({cur.id, 0, dl != df});
    }
  }
  return f;
}

struct CuspInfo {
  int from = 0, to = 0;
  double x = 0, z = 0;
  bool left = false;  // tip is the leftmost point of both branches
  bool up = false;    // z increases through the cusp along the orientation
};

inline std::vector<CuspInfo> cusp_list(const FrontDiagram& f) {
  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < f.arcs.size(); ++i) index[f.arcs[i].id] = i;
  std::vector<CuspInfo> out;
  for (const auto& j : f.junctions) {
    if (!j.cusp) continue;
    const auto& A = f.arcs[index.at(j.from)];
    const auto& B = f.arcs[index.at(j.to)];
    CuspInfo c;
    c.from = j.from;
    c.to = j.to;
    c.x = B.x[0];
    c.z = B.z[0];
    c.left = B.x[1] > B.x[0];
    const double xa = A.x[A.size() - 2], xb = B.x[1];
    const double xs = std::abs(xa - c.x) < std::abs(xb - c.x) ? xa : xb;
    c.up = detail::arc_z_at(B, xs) > detail::arc_z_at(A, xs);
    out.push_back(c);
  }
  return out;
}

struct ClassicalInvariants {
  int tb = 0;
  int rot = 0;
  int writhe = 0;
  int cusps = 0;
  int up = 0, down = 0;
};

inline ClassicalInvariants classical_invariants(const FrontDiagram& f) {
  if (!f.closed) throw DomainError("classical invariants need a closed front");
  auto rep = validate_front(f);
  if (!rep.ok()) throw InvalidFrontError(rep);
  std::vector<bool> cyc;
  front_components(f, &cyc);
  for (bool b : cyc)
    if (!b) throw DomainError("classical invariants need every component closed");
  ClassicalInvariants inv;
  for (const auto& c : rep.crossings) inv.writhe += c.sign;
  for (const auto& c : cusp_list(f)) (c.up ? inv.up : inv.down)++;
  inv.cusps = inv.up + inv.down;
  if (inv.cusps % 2) throw DomainError("odd cusp count");
  inv.tb = inv.writhe - inv.cusps / 2;
  inv.rot = (inv.down - inv.up) / 2;
  return inv;
}

// ---------------------------------------------------------------------------------------
// Plat words and their canonical realization

inline std::vector<int> strand_counts(const PlatData& p) {
  std::vector<int> s{p.open_strands};
  for (const auto& e : p.word) {
    const int c = s.back();
    switch (e.kind) {
      case EventKind::L:
        if (e.pos > c) throw DomainError("L" + std::to_string(e.pos) + " beyond strand count");
        s.push_back(c + 2);
        break;
      case EventKind::R:
        if (e.pos + 2 > c) throw DomainError("R" + std::to_string(e.pos) + " needs two strands");
        s.push_back(c - 2);
        break;
      case EventKind::X:
        if (e.pos + 2 > c) throw DomainError("X" + std::to_string(e.pos) + " needs two strands");
        s.push_back(c);
        break;
    }
  }
  if (s.back() != p.open_strands) throw DomainError("plat word leaves strands open");
  return s;
}

struct PlatRealization {
  FrontDiagram front;
  std::vector<int> component_first_event;  // -1 for open components
  std::vector<int> cusp_event;             // per junction, the event that created it
};

inline PlatRealization realize_plat_detail(const PlatData& pd) {
  strand_counts(pd);
  const double W = pd.style.width, H = pd.style.height;
  const int n = std::max(1, pd.style.samples);
  if (!(W > 0) || !(H > 0)) throw DomainError("plat style needs positive width and height");
  struct Piece {
    std::vector<double> x, z, y;
    int left = -1, right = -1;
    int left_event = -1, right_event = -1;
  };
  std::vector<Piece> pc;
  std::vector<int> pos;
  auto add = [&](Piece& p, double x, double z, double y) {
    if (!p.x.empty() && x <= p.x.back()) return;
    p.x.push_back(x);
    p.z.push_back(z);
    p.y.push_back(y);
  };
  auto flat = [&](int piece, int j, double kw) {
    for (int m = 0; m <= 2 * n; ++m)
      add(pc[piece], (kw + static_cast<double>(m) / (2 * n)) * W, j * H, 0.0);
  };
  const bool pad = pd.open_strands > 0;
  for (int j = 0; j < pd.open_strands; ++j) {
    pc.emplace_back();
    pos.push_back(j);
  }
  if (pad)
    for (int j = 0; j < pd.open_strands; ++j) flat(pos[j], j, -1.0);
  struct Cross {
    int a, b;
    double x;
  };
  std::vector<Cross> crosses;
  for (std::size_t k = 0; k < pd.word.size(); ++k) {
    const auto& e = pd.word[k];
    const double kw = static_cast<double>(k);
    const int s = static_cast<int>(pos.size());
    const int i = e.pos;
    if (e.kind == EventKind::L) {
      for (int j = 0; j < s; ++j) {
        if (j < i) {
          flat(pos[j], j, kw);
          continue;
        }
        for (int m = 0; m <= 2 * n; ++m) {
          const double fr = static_cast<double>(m) / (2 * n);
          const double u = clamp01(2 * fr);
          add(pc[pos[j]], (kw + fr) * W, H * (j + 2 * smooth5(u)), H * 4 * smooth5_d(u) / W);
        }
      }
      const int lo = static_cast<int>(pc.size()), up = lo + 1;
      pc.emplace_back();
      pc.emplace_back();
      for (int m = 0; m <= n; ++m) {
        const double u = static_cast<double>(m) / n;
        const double x = (kw + 0.5 + 0.5 * u * u) * W;
        const double dz = 0.5 * H * smooth5(u);
        const double yy = 15 * H * u * (1 - u) * (1 - u) / W;
        add(pc[lo], x, H * (i + 0.5) - dz, -yy);
        add(pc[up], x, H * (i + 0.5) + dz, yy);
      }
      pc[lo].left = up;
      pc[up].left = lo;
      pc[lo].left_event = pc[up].left_event = static_cast<int>(k);
      pos.insert(pos.begin() + i, {lo, up});
    } else if (e.kind == EventKind::R) {
      const int lo = pos[i], up = pos[i + 1];
      for (int j = 0; j < s; ++j) {
        if (j == i || j == i + 1) continue;
        if (j < i) {
          flat(pos[j], j, kw);
          continue;
        }
        for (int m = 0; m <= 2 * n; ++m) {
          const double fr = static_cast<double>(m) / (2 * n);
          const double u = clamp01(2 * fr - 1);
          add(pc[pos[j]], (kw + fr) * W, H * (j - 2 * smooth5(u)), -H * 4 * smooth5_d(u) / W);
        }
      }
      for (int m = 0; m <= n; ++m) {
        const double u = 1 - static_cast<double>(m) / n;
        const double x = (kw + 0.5 - 0.5 * u * u) * W;
        const double dz = 0.5 * H * smooth5(u);
        const double yy = 15 * H * u * (1 - u) * (1 - u) / W;
        add(pc[lo], x, H * (i + 0.5) - dz, yy);
        add(pc[up], x, H * (i + 0.5) + dz, -yy);
      }
      pc[lo].right = up;
      pc[up].right = lo;
      pc[lo].right_event = pc[up].right_event = static_cast<int>(k);
      pos.erase(pos.begin() + i, pos.begin() + i + 2);
    } else {
      for (int j = 0; j < s; ++j) {
        if (j == i || j == i + 1) continue;
        flat(pos[j], j, kw);
      }
      for (int m = 0; m <= 2 * n; ++m) {
        const double fr = static_cast<double>(m) / (2 * n);
        const double x = (kw + fr) * W;
        add(pc[pos[i]], x, H * (i + smooth5(fr)), H * smooth5_d(fr) / W);
        add(pc[pos[i + 1]], x, H * (i + 1 - smooth5(fr)), -H * smooth5_d(fr) / W);
      }
      crosses.push_back({pos[i], pos[i + 1], (kw + 0.5) * W});
      std::swap(pos[i], pos[i + 1]);
    }
  }
  if (pad) {
    const double kw = static_cast<double>(pd.word.size());
    for (int j = 0; j < static_cast<int>(pos.size()); ++j) flat(pos[j], j, kw);
  }

  // traverse components
  struct Step {
    int piece;
    bool rightward;
  };
  std::vector<std::vector<Step>> comps;
  std::vector<int> first_event;
  std::vector<bool> closed_comp;
  std::vector<bool> seen(pc.size(), false);
  auto traverse = [&](int p, bool right) {
    std::vector<Step> c;
    const int start = p;
    bool cyc = false;
    while (true) {
      c.push_back({p, right});
      seen[p] = true;
      const int nx = right ? pc[p].right : pc[p].left;
      if (nx < 0) break;
      right = !right;
      p = nx;
      if (p == start) {
        cyc = true;
        break;
      }
    }
    return std::make_pair(c, cyc);
  };
  if (pad) {
    // pieces entering from the left boundary, bottom to top, then right-boundary returns
    for (int p = 0; p < pd.open_strands; ++p)
      if (!seen[p]) {
        auto [c, cyc] = traverse(p, true);
        comps.push_back(c);
        first_event.push_back(-1);
        closed_comp.push_back(cyc);
      }
    for (int p : pos)
      if (!seen[p]) {
        auto [c, cyc] = traverse(p, false);
        comps.push_back(c);
        first_event.push_back(-1);
        closed_comp.push_back(cyc);
      }
  }
  for (std::size_t k = 0; k < pd.word.size(); ++k) {
    if (pd.word[k].kind != EventKind::L) continue;
    // the upper piece created at event k
    int up = -1;
    for (std::size_t p = 0; p < pc.size(); ++p)
      if (pc[p].left_event == static_cast<int>(k) && pc[p].z.size() > 1 &&
          pc[p].z[1] > pc[pc[p].left].z[1])
        up = static_cast<int>(p);
    if (up < 0 || seen[up]) continue;
    auto [c, cyc] = traverse(up, true);
    comps.push_back(c);
    first_event.push_back(static_cast<int>(k));
    closed_comp.push_back(cyc);
  }
  PlatRealization out;
  FrontDiagram& f = out.front;
  f.closed = true;
  std::vector<int> arc_of(pc.size(), -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    auto steps = comps[c];
    const bool flip = c < pd.flips.size() && pd.flips[c];
    if (flip) {
      std::reverse(steps.begin(), steps.end());
      for (auto& st : steps) st.rightward = !st.rightward;
    }
    const int first_id = static_cast<int>(f.arcs.size());
    for (std::size_t r = 0; r < steps.size(); ++r) {
      const Piece& P = pc[steps[r].piece];
      FrontArc a;
      const int id = static_cast<int>(f.arcs.size());
      a.id = id;
      a.x = P.x;
      a.z = P.z;
      a.y = P.y;
      if (!steps[r].rightward) {
        std::reverse(a.x.begin(), a.x.end());
        std::reverse(a.z.begin(), a.z.end());
        std::reverse(a.y.begin(), a.y.end());
      }
      arc_of[steps[r].piece] = id;
      f.arcs.push_back(std::move(a));
      if (r > 0) {
        f.junctions.push_back({id - 1, id, true});
        const Piece& Q = pc[steps[r - 1].piece];
        out.cusp_event.push_back(steps[r - 1].rightward ? Q.right_event : Q.left_event);
      }
    }
    const int last_id = static_cast<int>(f.arcs.size()) - 1;
    if (closed_comp[c]) {
      f.junctions.push_back({last_id, first_id, true});
      const Piece& Q = pc[steps.back().piece];
      out.cusp_event.push_back(steps.back().rightward ? Q.right_event : Q.left_event);
    } else {
      f.closed = false;
    }
    out.component_first_event.push_back(first_event[c]);
  }
  for (const auto& x : crosses) f.crossings.push_back({arc_of[x.a], arc_of[x.b], x.x, arc_of[x.b]});
  f.plat = pd;
  f.plat->flips.resize(comps.size(), false);
  return out;
}

inline FrontDiagram realize_plat(const PlatData& pd) { return realize_plat_detail(pd).front; }

inline int plat_component_count(PlatData pd) {
  pd.style.samples = 1;
  return static_cast<int>(realize_plat_detail(pd).component_first_event.size());
}

// Read the plat word off a generic front: events sorted by x, positions from the number of
// strands strictly below each event.
inline PlatData derive_word(const FrontDiagram& f, const PlatStyle& style = {}) {
  auto rep = validate_front(f);
  if (!rep.ok()) throw InvalidFrontError(rep);
  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < f.arcs.size(); ++i) index[f.arcs[i].id] = i;
  struct Ev {
    double x, z;
    EventKind kind;
    int a, b;
    int cusp = -1;  // index into cusp list
  };
  std::vector<Ev> evs;
  auto cusps = cusp_list(f);
  for (std::size_t c = 0; c < cusps.size(); ++c)
    evs.push_back({cusps[c].x, cusps[c].z, cusps[c].left ? EventKind::L : EventKind::R,
                   cusps[c].from, cusps[c].to, static_cast<int>(c)});
  for (const auto& c : rep.crossings) evs.push_back({c.x, c.z, EventKind::X, c.a, c.b});
  std::sort(evs.begin(), evs.end(), [](const Ev& p, const Ev& q) { return p.x < q.x; });
  for (std::size_t k = 1; k < evs.size(); ++k)
    if (evs[k].x - evs[k - 1].x <= 1e-12 * (1 + std::abs(evs[k].x)))
      throw DomainError("front is not generic: two events share an abscissa");
  PlatData pd;
  pd.style = style;
  for (const auto& a : f.arcs) {
    bool has_prev = false, has_next = false;
    for (const auto& j : f.junctions) {
      has_prev |= j.to == a.id;
      has_next |= j.from == a.id;
    }
    // free ends that are the leftmost end of their arc enter from the left boundary
    const bool left_free = detail::arc_dir(a) > 0 ? !has_prev : !has_next;
    if (left_free) ++pd.open_strands;
  }
  for (const auto& e : evs) {
    int below = 0;
    for (const auto& a : f.arcs) {
      if (a.id == e.a || a.id == e.b) continue;
      const double lo = std::min(a.x.front(), a.x.back()), hi = std::max(a.x.front(), a.x.back());
      const double tol = 1e-12 * (1 + std::abs(e.x));
      if (e.x < lo - tol || e.x > hi + tol) continue;
      if (detail::arc_z_at(a, e.x) < e.z) ++below;
    }
    pd.word.push_back({e.kind, below});
  }
  strand_counts(pd);
  // orientation: compare each component's first left cusp with the source front
  auto real = realize_plat_detail(pd);
  std::vector<int> event_cusp(evs.size(), -1);
  for (std::size_t k = 0; k < evs.size(); ++k) event_cusp[k] = evs[k].cusp;
  pd.flips.assign(real.component_first_event.size(), false);
  for (std::size_t c = 0; c < real.component_first_event.size(); ++c) {
    const int k = real.component_first_event[c];
    if (k < 0) continue;
    pd.flips[c] = !cusps[static_cast<std::size_t>(event_cusp[k])].up;
  }
  return pd;
}

// ---------------------------------------------------------------------------------------
// Moves

enum class MoveKind { R1, R2, R3, Stabilize };

inline const char* to_string(MoveKind m) {
  switch (m) {
    case MoveKind::R1: return "R1";
    case MoveKind::R2: return "R2";
    case MoveKind::R3: return "R3";
    case MoveKind::Stabilize: return "Stabilize";
  }
  return "?";
}

// event: insertion point (number of events before it) for R1/Stabilize, or the index of the
// first event of the pattern for R2/R3 and inverse moves. pos: strand position. variant picks
// between the two mirror forms of a move.
struct MoveSite {
  int event = 0;
  int pos = 0;
  int variant = 0;
  bool inverse = false;
};

struct ZigzagLocation {
  double x0 = 0, x1 = 0;
  std::vector<int> arcs;  // arcs meeting the two new cusps
};

struct MoveResult {
  FrontDiagram front;
  std::optional<ZigzagLocation> zigzag;
};

namespace detail {

inline PlatEvent ev(EventKind k, int p) { return {k, p}; }

inline bool match(const std::vector<PlatEvent>& w, int at, std::initializer_list<PlatEvent> pat) {
  if (at < 0 || at + static_cast<int>(pat.size()) > static_cast<int>(w.size())) return false;
  int k = at;
  for (const auto& e : pat)
    if (!(w[static_cast<std::size_t>(k++)] == e)) return false;
  return true;
}

inline void replace(std::vector<PlatEvent>& w, int at, int len, std::vector<PlatEvent> with) {
  w.erase(w.begin() + at, w.begin() + at + len);
  w.insert(w.begin() + at, with.begin(), with.end());
}

}  // namespace detail

// Word-level move. Returns the index of the first inserted event for insertions.
inline PlatData apply_word_move(const PlatData& in, MoveKind mk, const MoveSite& s,
                                int* inserted = nullptr) {
  using detail::ev;
  using E = EventKind;
  PlatData out = in;
  auto& w = out.word;
  const auto counts = strand_counts(in);
  const int nev = static_cast<int>(w.size());
  const int k = s.event, i = s.pos;
  auto fail = [&](const std::string& want) {
    throw PatternError(std::string(to_string(mk)) + " at event " + std::to_string(k) +
                       ", position " + std::to_string(i) + ": expected " + want);
  };
  if (mk == MoveKind::R3) {
    if (detail::match(w, k, {ev(E::X, i), ev(E::X, i + 1), ev(E::X, i)}))
      detail::replace(w, k, 3, {ev(E::X, i + 1), ev(E::X, i), ev(E::X, i + 1)});
    else if (detail::match(w, k, {ev(E::X, i + 1), ev(E::X, i), ev(E::X, i + 1)}))
      detail::replace(w, k, 3, {ev(E::X, i), ev(E::X, i + 1), ev(E::X, i)});
    else
      fail("X(i) X(i+1) X(i) or X(i+1) X(i) X(i+1)");
  } else if (mk == MoveKind::R2) {
    if (!s.inverse) {
      if (k < 0 || k >= nev) fail("an L or R event at the site");
      const auto e = w[static_cast<std::size_t>(k)];
      if (e.pos != i) fail("event position " + std::to_string(e.pos));
      const int before = counts[static_cast<std::size_t>(k)];
      if (e.kind == E::L) {
        if (s.variant == 0) {
          if (i < 1) fail("a strand below the left cusp");
          detail::replace(w, k, 1, {ev(E::L, i - 1), ev(E::X, i), ev(E::X, i - 1)});
        } else {
          if (i + 1 > before) fail("a strand above the left cusp");
          detail::replace(w, k, 1, {ev(E::L, i + 1), ev(E::X, i), ev(E::X, i + 1)});
        }
      } else if (e.kind == E::R) {
        if (s.variant == 0) {
          if (i < 1) fail("a strand below the right cusp");
          detail::replace(w, k, 1, {ev(E::X, i - 1), ev(E::X, i), ev(E::R, i - 1)});
        } else {
          if (i + 3 > before) fail("a strand above the right cusp");
          detail::replace(w, k, 1, {ev(E::X, i + 1), ev(E::X, i), ev(E::R, i + 1)});
        }
      } else {
        fail("an L or R event at the site");
      }
    } else {
      if (detail::match(w, k, {ev(E::L, i - 1), ev(E::X, i), ev(E::X, i - 1)}))
        detail::replace(w, k, 3, {ev(E::L, i)});
      else if (detail::match(w, k, {ev(E::L, i + 1), ev(E::X, i), ev(E::X, i + 1)}))
        detail::replace(w, k, 3, {ev(E::L, i)});
      else if (detail::match(w, k, {ev(E::X, i - 1), ev(E::X, i), ev(E::R, i - 1)}))
        detail::replace(w, k, 3, {ev(E::R, i)});
      else if (detail::match(w, k, {ev(E::X, i + 1), ev(E::X, i), ev(E::R, i + 1)}))
        detail::replace(w, k, 3, {ev(E::R, i)});
      else
        fail("a cusp with a strand crossing both branches");
    }
  } else if (mk == MoveKind::R1 || mk == MoveKind::Stabilize) {
    if (!s.inverse) {
      if (k < 0 || k > nev) fail("an insertion point inside the word");
      const int strands = counts[static_cast<std::size_t>(k)];
      if (i < 0 || i >= strands) fail("a strand at the given position");
      std::vector<PlatEvent> ins;
      if (mk == MoveKind::R1)
        ins = s.variant == 0 ? std::vector<PlatEvent>{ev(E::L, i + 1), ev(E::X, i), ev(E::R, i + 1)}
                             : std::vector<PlatEvent>{ev(E::L, i), ev(E::X, i + 1), ev(E::R, i)};
      else
        ins = s.variant == 0 ? std::vector<PlatEvent>{ev(E::L, i + 1), ev(E::R, i)}
                             : std::vector<PlatEvent>{ev(E::L, i), ev(E::R, i + 1)};
      w.insert(w.begin() + k, ins.begin(), ins.end());
      if (inserted) *inserted = k;
    } else if (mk == MoveKind::R1) {
      if (detail::match(w, k, {ev(E::L, i + 1), ev(E::X, i), ev(E::R, i + 1)}) ||
          detail::match(w, k, {ev(E::L, i), ev(E::X, i + 1), ev(E::R, i)}))
        w.erase(w.begin() + k, w.begin() + k + 3);
      else
        fail("L(i+1) X(i) R(i+1) or L(i) X(i+1) R(i)");
    } else {
      throw PatternError("Stabilize has no inverse: it changes the Legendrian isotopy class");
    }
  }
  strand_counts(out);
  if (plat_component_count(out) != static_cast<int>(in.flips.size()) && !in.flips.empty())
    throw PatternError("move changed the number of components");
  return out;
}

inline MoveResult apply_move(const FrontDiagram& f, MoveKind mk, const MoveSite& s) {
  PlatData pd = f.plat ? *f.plat : derive_word(f);
  if (pd.flips.empty()) pd.flips.assign(static_cast<std::size_t>(plat_component_count(pd)), false);
  int at = -1;
  PlatData moved = apply_word_move(pd, mk, s, &at);
  MoveResult r;
  auto real = realize_plat_detail(moved);
  r.front = std::move(real.front);
  if (mk == MoveKind::Stabilize && !s.inverse) {
    ZigzagLocation z;
    z.x0 = at * moved.style.width;
    z.x1 = (at + 2) * moved.style.width;
    for (std::size_t j = 0; j < r.front.junctions.size(); ++j) {
      const int e = real.cusp_event[j];
      if (e == at || e == at + 1) {
        z.arcs.push_back(r.front.junctions[j].from);
        z.arcs.push_back(r.front.junctions[j].to);
      }
    }
    std::sort(z.arcs.begin(), z.arcs.end());
    z.arcs.erase(std::unique(z.arcs.begin(), z.arcs.end()), z.arcs.end());
    r.zigzag = z;
  }
  return r;
}

// Random single-component closed plat word. Plain modular reduction keeps it reproducible.
inline PlatData random_knot_word(std::uint64_t seed, int max_events = 14, int max_strands = 6,
                                 PlatStyle style = {}) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  for (int attempt = 0; attempt < 10000; ++attempt) {
    PlatData pd;
    pd.style = style;
    auto& w = pd.word;
    w.push_back({EventKind::L, 0});
    int s = 2;
    const int target = 4 + pick(std::max(1, max_events - 3));
    while (s > 0) {
      const bool closing = static_cast<int>(w.size()) >= target;
      std::vector<PlatEvent> opts;
      if (!closing && s + 2 <= max_strands)
        for (int i = 0; i <= s; ++i) opts.push_back({EventKind::L, i});
      for (int i = 0; i + 2 <= s; ++i) opts.push_back({EventKind::X, i});
      if (s >= 4 || (s == 2 && closing))
        for (int i = 0; i + 2 <= s; ++i) opts.push_back({EventKind::R, i});
      if (closing && s >= 4) {
        opts.clear();
        for (int i = 0; i + 2 <= s; ++i) {
          opts.push_back({EventKind::R, i});
          opts.push_back({EventKind::X, i});
        }
      }
      auto e = opts[static_cast<std::size_t>(pick(static_cast<int>(opts.size())))];
      if (e.kind == EventKind::X && s >= 3 && pick(4) == 0) {
        // seed a triple-crossing pattern so that R3 sites occur
        const int i = std::min(e.pos, s - 3);
        w.push_back({EventKind::X, i});
        w.push_back({EventKind::X, i + 1});
        w.push_back({EventKind::X, i});
        continue;
      }
      w.push_back(e);
      s += e.kind == EventKind::L ? 2 : e.kind == EventKind::R ? -2 : 0;
      if (static_cast<int>(w.size()) > 4 * max_events) break;
    }
    if (s != 0) continue;
    if (plat_component_count(pd) != 1) continue;
    pd.flips.assign(1, pick(2) == 1);
    return pd;
  }
  throw DomainError("could not generate a knot word");
}

// ---------------------------------------------------------------------------------------
// SVG

struct SvgStyle {
  double stroke = 0.01;  // relative to the larger side of the bounding box
  double gap = 0.03;     // half-length of the break in an under-strand, relative as above
};

inline std::string render_svg(const FrontDiagram& f, const SvgStyle& st = {}) {
  double x0 = INFINITY, x1 = -INFINITY, z0 = INFINITY, z1 = -INFINITY;
  for (const auto& a : f.arcs)
    for (std::size_t k = 0; k < a.size(); ++k) {
      x0 = std::min(x0, a.x[k]);
      x1 = std::max(x1, a.x[k]);
      z0 = std::min(z0, a.z[k]);
      z1 = std::max(z1, a.z[k]);
    }
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (f.arcs.empty()) {
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 1 1\" "
         "width=\"400\" height=\"400\">\n</svg>\n";
    return s;
  }
  double w = x1 - x0, h = z1 - z0;
  const double side = std::max({w, h, 1e-12});
  if (w <= 0) w = side;
  if (h <= 0) h = side;
  const double mx = 0.05 * w, mz = 0.05 * h;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" +
       fmt_sig(x0 - mx) + " " + fmt_sig(-(z1 + mz)) + " " + fmt_sig(w + 2 * mx) + " " +
       fmt_sig(h + 2 * mz) + "\" width=\"600\" height=\"" +
       fmt_sig(600 * (h + 2 * mz) / (w + 2 * mx)) + "\">\n";
  const double sw = st.stroke * side, gap = st.gap * side;
  ValidationReport rep;
  try {
    rep = validate_front(f);
  } catch (const Error&) {
  }
  for (const auto& a : f.arcs) {
    std::vector<double> cuts;  // x of crossings where this arc is under
    for (const auto& c : rep.crossings)
      if ((c.a == a.id || c.b == a.id) && c.over != a.id) cuts.push_back(c.x);
    std::string d;
    bool pen = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
      bool hidden = false;
      for (double cx : cuts) hidden |= std::abs(a.x[k] - cx) < gap;
      if (hidden) {
        pen = false;
        continue;
      }
      d += (pen ? " L" : (d.empty() ? "M" : " M")) + fmt_sig(a.x[k]) + " " + fmt_sig(-a.z[k]);
      pen = true;
    }
    s += "<path id=\"arc" + std::to_string(a.id) + "\" d=\"" + d +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"" + fmt_sig(sw) + "\"/>\n";
  }
  for (const auto& c : cusp_list(f))
    s += "<circle class=\"cusp\" cx=\"" + fmt_sig(c.x) + "\" cy=\"" + fmt_sig(-c.z) + "\" r=\"" +
         fmt_sig(2 * sw) + "\" fill=\"" + (c.up ? "red" : "blue") + "\"/>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace legfront

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "contact.hpp"
#include "front.hpp"
#include "util.hpp"

namespace legfront {

// ---------------------------------------------------------------------------------------
// Model zig-zag psi_delta(t) = (t^3 - 3 delta t, t^5/5 - 2 delta t^3/3 + delta^2 t)

struct PsiValue {
  double x = 0, z = 0;    // front point
  double dx = 0, dz = 0;  // velocity
  double y = 0;           // slope dz/dx, extended through the cusps
};

inline PsiValue model_zigzag(double delta, double t) {
  const double t2 = t * t;
  PsiValue v;
  v.x = t * (t2 - 3 * delta);
  v.z = t * (t2 * t2 / 5 - 2 * delta * t2 / 3 + delta * delta);
  v.dx = 3 * (t2 - delta);
  v.dz = (t2 - delta) * (t2 - delta);
  v.y = (t2 - delta) / 3;
  return v;
}

// Action of the chord of psi_delta at t = +-sqrt(3 delta).
inline double psi_chord_length(double delta) { return 8 * std::sqrt(3.0) / 5 * std::pow(delta, 2.5); }

// delta for which psi_delta has a chord of length 1.
inline double unit_zigzag_delta() { return std::pow(5 / (8 * std::sqrt(3.0)), 0.4); }

// psi_delta sampled on [t0, t1] as a curve in R3Std.
inline SampledLegendrian psi_curve(double delta, double t0, double t1, std::size_t n) {
  SampledLegendrian c;
  c.model = ContactModel::r3();
  c.params = linspace(t0, t1, n);
  for (double t : c.params) {
    auto v = model_zigzag(delta, t);
    c.points.push_back({v.x, v.y, v.z});
  }
  return c;
}

// Front of psi_delta on [-2 sqrt(delta), 2 sqrt(delta)]: arcs e1, e2, e3 joined at the right
// cusp c1 and the left cusp c2. Contact scaling by c is applied to the samples.
inline FrontDiagram psi_zigzag_front(double delta, std::size_t samples_per_arc, double c = 1.0) {
  if (!(delta > 0)) throw DomainError("zig-zag front needs delta > 0");
  const double r = std::sqrt(delta);
  const double cuts[4] = {-2 * r, -r, r, 2 * r};
  FrontDiagram f;
  for (int a = 0; a < 3; ++a) {
    FrontArc arc;
    arc.id = a;
    for (double t : linspace(cuts[a], cuts[a + 1], samples_per_arc)) {
      auto v = model_zigzag(delta, t);
      arc.x.push_back(c * v.x);
      arc.z.push_back(c * c * v.z);
      arc.y.push_back(c * v.y);
    }
    f.arcs.push_back(std::move(arc));
  }
  f.junctions = {{0, 1, true}, {1, 2, true}};
  return f;
}

// Canonical zig-zag of action a: the contact scaling by sqrt(a) of the unit-action model.
inline FrontDiagram canonical_zigzag_front(double a, std::size_t samples_per_arc) {
  if (!(a > 0)) throw DomainError("action must be positive");
  return psi_zigzag_front(unit_zigzag_delta(), samples_per_arc, std::sqrt(a));
}

inline SampledLegendrian canonical_zigzag(double a, std::size_t samples_per_arc) {
  return lift_front(canonical_zigzag_front(a, samples_per_arc));
}

// ---------------------------------------------------------------------------------------
// C0-dense approximation by Legendrian curves

struct ApproxOptions {
  int base_samples = 16;   // output samples per node segment outside loops
  int loop_samples = 64;   // output samples per inserted loop
  int start_nodes = 8;
  int max_loops = 1 << 20;
};

struct ApproxResult {
  SampledLegendrian curve;
  std::vector<double> base_u;            // input parameter of every output sample
  std::vector<std::size_t> node_out;     // output index of every node
  std::vector<std::size_t> node_in;      // input index of every node
  double sup_distance = 0;
  double slope_error = 0;
  double residual = 0;
  int nodes = 0;
  long loops = 0;
  int cusps = 0;
};

namespace detail {

struct Polyline {
  const SampledLegendrian* c;
  std::vector<double> u;
  // linear interpolation of the input at parameter t, starting the search at hint
  std::array<double, 3> at(double t, std::size_t& hint) const {
    const auto& P = c->points;
    while (hint + 2 < u.size() && u[hint + 1] <= t) ++hint;
    while (hint > 0 && u[hint] > t) --hint;
    const double w = (t - u[hint]) / (u[hint + 1] - u[hint]);
    std::array<double, 3> r;
    for (int k = 0; k < 3; ++k) r[k] = P[hint][k] + w * (P[hint + 1][k] - P[hint][k]);
    return r;
  }
};

inline double bump(double tau) {
  const double s = tau * (1 - tau);
  return 140 * s * s * s;
}

inline int count_reversals(const std::vector<Point>& P) {
  int prev = 0, n = 0;
  for (std::size_t k = 0; k + 1 < P.size(); ++k) {
    const int s = sgn(P[k + 1][0] - P[k][0]);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++n;
    prev = s;
  }
  return n;
}

// One node segment: fills x, y, z samples (excluding the first point) realizing dz exactly.
struct SegmentOut {
  std::vector<double> u, x, y, z;
  long loops = 0;
};

inline SegmentOut build_segment(const Polyline& pl, std::size_t ia, std::size_t ib, double eps,
                                const ApproxOptions& opt) {
  const auto& P = pl.c->points;
  const double ua = pl.u[ia], ub = pl.u[ib];
  const double dz = P[ib][2] - P[ia][2];
  auto base_taus = [&]() {
    std::vector<double> t;
    for (int m = 0; m <= opt.base_samples; ++m) t.push_back(static_cast<double>(m) / opt.base_samples);
    for (std::size_t k = ia + 1; k < ib; ++k) t.push_back((pl.u[k] - ua) / (ub - ua));
    return t;
  };
  auto finish = [](std::vector<double> t) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end(), [](double a, double b) { return b - a < 1e-12; }), t.end());
    t.back() = 1.0;
    return t;
  };
  auto eval_base = [&](const std::vector<double>& taus, std::vector<double>& X,
                       std::vector<double>& Y) {
    X.resize(taus.size());
    Y.resize(taus.size());
    std::size_t hint = ia;
    for (std::size_t m = 0; m < taus.size(); ++m) {
      if (m == 0) {
        X[m] = P[ia][0];
        Y[m] = P[ia][1];
        continue;
      }
      if (m + 1 == taus.size()) {
        X[m] = P[ib][0];
        Y[m] = P[ib][1];
        continue;
      }
      auto p = pl.at(ua + taus[m] * (ub - ua), hint);
      X[m] = p[0];
      Y[m] = p[1];
    }
  };
  auto trap = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t m = 0; m + 1 < a.size(); ++m) s += 0.5 * (a[m] + a[m + 1]) * (b[m + 1] - b[m]);
    return s;
  };
  auto integrate = [&](SegmentOut& o, const std::vector<double>& taus) {
    o.z.assign(taus.size(), 0.0);
    o.z[0] = P[ia][2];
    for (std::size_t m = 0; m + 1 < taus.size(); ++m)
      o.z[m + 1] = o.z[m] + 0.5 * (o.y[m] + o.y[m + 1]) * (o.x[m + 1] - o.x[m]);
    o.z.back() = P[ib][2];
    o.x.front() = P[ia][0];
    o.y.front() = P[ia][1];
    o.x.back() = P[ib][0];
    o.y.back() = P[ib][1];
    o.u.resize(taus.size());
    for (std::size_t m = 0; m < taus.size(); ++m) o.u[m] = ua + taus[m] * (ub - ua);
    o.u.front() = ua;
    o.u.back() = ub;
  };

  // 1. no correction or a slope bump
  {
    auto taus = finish(base_taus());
    std::vector<double> X, Y;
    eval_base(taus, X, Y);
    const double E = dz - trap(Y, X);
    std::vector<double> b(taus.size());
    for (std::size_t m = 0; m < taus.size(); ++m) b[m] = bump(taus[m]);
    const double Tb = trap(b, X);
    double c = 0;
    bool ok = E == 0;
    if (!ok && std::abs(Tb) > 0) {
      c = E / Tb;
      ok = std::abs(c) * 140.0 / 64.0 < eps / 4;
    }
    if (ok) {
      SegmentOut o;
      o.x = X;
      o.y = Y;
      for (std::size_t m = 0; m < taus.size(); ++m) o.y[m] += c * b[m];
      integrate(o, taus);
      return o;
    }
  }
  // 2. Lagrangian loops
  const double A = 0.45 * eps, B = 0.225 * eps;
  std::vector<double> X, Y;
  {
    auto taus = finish(base_taus());
    eval_base(taus, X, Y);
    const double E0 = dz - trap(Y, X);
    const double per = M_PI * A * B;
    long k = std::max<long>(1, static_cast<long>(std::ceil(std::abs(E0) / per)));
    for (; k <= opt.max_loops; ++k) {
      std::vector<double> t = base_taus();
      for (long l = 0; l < k; ++l) {
        const double a = 0.1 + 0.8 * l / k, b = 0.1 + 0.8 * (l + 1) / k;
        for (int m = 0; m <= opt.loop_samples; ++m) t.push_back(a + (b - a) * m / opt.loop_samples);
      }
      t = finish(std::move(t));
      eval_base(t, X, Y);
      const double E = dz - trap(Y, X);
      const double sigma = E >= 0 ? 1.0 : -1.0;
      std::vector<double> lx(t.size(), 0.0), ly(t.size(), 0.0);
      for (std::size_t m = 0; m < t.size(); ++m) {
        const double tau = t[m];
        if (tau <= 0.1 || tau >= 0.9) continue;
        const double pos = (tau - 0.1) / 0.8 * k;
        long l = std::min<long>(k - 1, static_cast<long>(std::floor(pos)));
        const double phi = smooth5(clamp01(pos - l));
        lx[m] = sigma * A * std::sin(2 * M_PI * phi);
        ly[m] = B * (std::cos(2 * M_PI * phi) - 1);
      }
      const double G1 = trap(Y, lx) + trap(ly, X);
      const double G2 = trap(ly, lx);
      // G2 l^2 + G1 l - E = 0, smallest real root
      double lam = NAN;
      if (std::abs(G2) < 1e-300) {
        if (G1 != 0) lam = E / G1;
      } else {
        const double disc = G1 * G1 + 4 * G2 * E;
        if (disc >= 0) {
          const double sq = std::sqrt(disc);
          const double q = -0.5 * (G1 + (G1 >= 0 ? sq : -sq));
          const double r1 = q / G2, r2 = q != 0 ? -E / q : r1;
          lam = std::abs(r1) < std::abs(r2) ? r1 : r2;
        }
      }
      if (std::isnan(lam) || std::abs(lam) > 1) continue;
      SegmentOut o;
      o.x = X;
      o.y = Y;
      for (std::size_t m = 0; m < t.size(); ++m) {
        o.x[m] += lam * lx[m];
        o.y[m] += lam * ly[m];
      }
      integrate(o, t);
      o.loops = k;
      return o;
    }
  }
  throw BudgetError("approximation needs more loops than allowed in one segment");
}

}  // namespace detail

// Legendrian approximation of a curve in R3Std (points (x, y, z)); y is the slope target.
// Node samples (uniform, plus marked and end points) are reproduced exactly.
inline ApproxResult approximate_curve(const SampledLegendrian& knot, double eps,
                                      const std::vector<std::size_t>& marked = {},
                                      const ApproxOptions& opt = {}) {
  if (!(eps > 0)) throw DomainError("epsilon must be positive");
  if (knot.model.dim() != 3 || knot.model.kind == ModelKind::Unicycle || knot.is_grid())
    throw DomainError("approximate_curve needs a curve in R3Std");
  const std::size_t M = knot.size();
  if (M < 2) throw DomainError("curve needs at least 2 samples");
  for (auto m : marked)
    if (m >= M) throw DomainError("marked index out of range");
  detail::Polyline pl{&knot, {}};
  pl.u = knot.params.size() == M ? knot.params : linspace(0, static_cast<double>(M - 1), M);
  for (std::size_t k = 0; k + 1 < M; ++k)
    if (!(pl.u[k + 1] > pl.u[k])) throw DomainError("curve parameters must increase");

  for (std::size_t N = static_cast<std::size_t>(std::max(1, opt.start_nodes));; N *= 2) {
    const std::size_t segs = std::min(N, M - 1);
    std::vector<std::size_t> nodes;
    for (std::size_t j = 0; j <= segs; ++j) nodes.push_back((j * (M - 1)) / segs);
    for (auto m : marked) nodes.push_back(m);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    ApproxResult r;
    r.curve.model = ContactModel::r3();
    r.curve.closed = knot.closed;
    r.nodes = static_cast<int>(nodes.size());
    r.node_in = nodes;
    for (std::size_t s = 0; s + 1 < nodes.size(); ++s) {
      auto seg = detail::build_segment(pl, nodes[s], nodes[s + 1], eps, opt);
      r.loops += seg.loops;
      for (std::size_t m = (s == 0 ? 0 : 1); m < seg.u.size(); ++m) {
        if (m == 0) r.node_out.push_back(r.curve.points.size());
        r.curve.points.push_back({seg.x[m], seg.y[m], seg.z[m]});
        r.base_u.push_back(seg.u[m]);
      }
      r.node_out.push_back(r.curve.points.size() - 1);
    }
    // node values are copied from the input, not recomputed
    for (std::size_t s = 0; s < nodes.size(); ++s) r.curve.points[r.node_out[s]] = knot.points[nodes[s]];
    if (knot.closed) r.curve.points.back() = r.curve.points.front();
    // a base that is vertical in the front leaves repeated samples; keep one of each run
    {
      std::vector<long> remap(r.curve.size());
      std::vector<bool> is_node(r.curve.size(), false);
      for (auto i : r.node_out) is_node[i] = true;
      std::size_t w = 0;
      for (std::size_t m = 0; m < r.curve.size(); ++m) {
        if (w > 0) {
          const auto& a = r.curve.points[m];
          const auto& b = r.curve.points[w - 1];
          double d = 0;
          for (int k = 0; k < 3; ++k) d = std::max(d, std::abs(a[k] - b[k]));
          if (d <= 1e-12 * std::max(1.0, sup_norm(a))) {
            if (is_node[m]) {
              r.curve.points[w - 1] = a;
              r.base_u[w - 1] = r.base_u[m];
            }
            remap[m] = static_cast<long>(w - 1);
            continue;
          }
        }
        r.curve.points[w] = r.curve.points[m];
        r.base_u[w] = r.base_u[m];
        remap[m] = static_cast<long>(w++);
      }
      r.curve.points.resize(w);
      r.base_u.resize(w);
      for (auto& i : r.node_out) i = static_cast<std::size_t>(remap[i]);
    }
    r.curve.params = r.base_u;
    std::size_t hint = 0;
    for (std::size_t m = 0; m < r.curve.points.size(); ++m) {
      auto p = pl.at(r.base_u[m], hint);
      const auto& q = r.curve.points[m];
      const double d = std::sqrt((p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]) +
                                 (p[2] - q[2]) * (p[2] - q[2]));
      r.sup_distance = std::max(r.sup_distance, d);
      r.slope_error = std::max(r.slope_error, std::abs(p[1] - q[1]));
    }
    r.cusps = detail::count_reversals(r.curve.points);
    if ((r.sup_distance < eps && r.slope_error < eps) || segs == M - 1) {
      if (!(r.sup_distance < eps && r.slope_error < eps))
        throw DomainError("input sampling too coarse to reach epsilon");
      r.residual = legendrian_residual(r.curve);
      return r;
    }
  }
}

// A planar arc (x, z) with a slope target per sample.
struct SlopedPath {
  std::vector<double> x, z, slope;
};

struct ZigzagArc {
  FrontDiagram front;
  ApproxResult approx;
  double front_distance = 0;  // sup over samples of the (x, z) deviation
};

inline ZigzagArc interpolate_zigzag(const SlopedPath& seg, double eps, const ApproxOptions& opt = {}) {
  if (!(eps > 0)) throw DomainError("epsilon must be positive");
  if (seg.x.size() < 2 || seg.z.size() != seg.x.size() || seg.slope.size() != seg.x.size())
    throw DomainError("sloped path needs matching x, z, slope samples");
  SampledLegendrian c;
  c.model = ContactModel::r3();
  for (std::size_t k = 0; k < seg.x.size(); ++k) {
    if (k && seg.x[k] == seg.x[k - 1] && seg.z[k] == seg.z[k - 1])
      throw DomainError("repeated consecutive points");
    c.points.push_back({seg.x[k], seg.slope[k], seg.z[k]});
  }
  c.params = linspace(0, static_cast<double>(seg.x.size() - 1), seg.x.size());
  ZigzagArc out;
  out.approx = approximate_curve(c, eps, {}, opt);
  out.front = front_of(out.approx.curve);
  detail::Polyline pl{&c, c.params};
  std::size_t hint = 0;
  for (std::size_t m = 0; m < out.approx.curve.size(); ++m) {
    auto p = pl.at(out.approx.base_u[m], hint);
    const auto& q = out.approx.curve.points[m];
    out.front_distance = std::max(out.front_distance, std::hypot(p[0] - q[0], p[2] - q[2]));
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// Unicycle planning through the two Darboux charts
//   chart 1 (cos theta != 0): (X, Y, Z) = (y, tan theta, x)
//   chart 2 (sin theta != 0): (X, Y, Z) = (x, cot theta, y)

struct UnicyclePlan {
  SampledLegendrian path;  // Unicycle model, points (x, y, theta)
  double sup_distance = 0;
  double residual = 0;
  int maneuvers = 0;  // direction reversals of the chart front
  int runs = 0;
};

inline UnicyclePlan plan_unicycle(const Point& start, const Point& goal, double eps,
                                  std::vector<Point> reference = {}, ApproxOptions opt = {}) {
  if (!(eps > 0)) throw DomainError("epsilon must be positive");
  auto um = ContactModel::unicycle();
  um.check(start, "start");
  um.check(goal, "goal");
  UnicyclePlan plan;
  plan.path.model = um;
  if (reference.empty()) {
    if (start == goal) {
      plan.path.points = {start};
      plan.path.params = {0.0};
      return plan;
    }
    const std::size_t n = 2001;
    for (std::size_t k = 0; k < n; ++k) {
      const double s = static_cast<double>(k) / (n - 1);
      Point p(3);
      for (int i = 0; i < 3; ++i) p[i] = start[i] + s * (goal[i] - start[i]);
      reference.push_back(p);
    }
    reference.front() = start;
    reference.back() = goal;
  }
  if (reference.front() != start || reference.back() != goal)
    throw DomainError("reference path must run from start to goal");
  const std::size_t M = reference.size();
  if (M < 2) throw DomainError("reference path needs at least 2 samples");

  auto chart_of = [](const Point& p) { return std::abs(std::cos(p[2])) >= std::abs(std::sin(p[2])) ? 1 : 2; };
  std::vector<Point> out;
  std::vector<double> out_u;
  std::size_t a = 0;
  while (a + 1 < M) {
    const int ch = chart_of(reference[a]);
    std::size_t b = a + 1;
    while (b + 1 < M && chart_of(reference[b]) == ch) ++b;
    ++plan.runs;
    SampledLegendrian c;
    c.model = ContactModel::r3();
    for (std::size_t k = a; k <= b; ++k) {
      const auto& p = reference[k];
      if (ch == 1)
        c.points.push_back({p[1], std::tan(p[2]), p[0]});
      else
        c.points.push_back({p[0], std::cos(p[2]) / std::sin(p[2]), p[1]});
      c.params.push_back(static_cast<double>(k));
    }
    const auto& r0 = reference[a];
    const double base = ch == 1 ? std::atan(std::tan(r0[2])) : std::atan2(1.0, std::cos(r0[2]) / std::sin(r0[2]));
    const double shift = std::round((r0[2] - base) / M_PI) * M_PI;
    auto ap = approximate_curve(c, eps, {}, opt);
    plan.maneuvers += ap.cusps;
    for (std::size_t m = (out.empty() ? 0 : 1); m < ap.curve.size(); ++m) {
      const auto& q = ap.curve.points[m];
      const double th = (ch == 1 ? std::atan(q[1]) : std::atan2(1.0, q[1])) + shift;
      out.push_back(ch == 1 ? Point{q[2], q[0], th} : Point{q[0], q[2], th});
      out_u.push_back(ap.base_u[m]);
    }
    // run ends are reference samples and are copied exactly
    out.back() = reference[b];
    if (a == 0) out.front() = reference[0];
    a = b;
  }
  plan.path.points = std::move(out);
  plan.path.params = std::move(out_u);
  std::size_t hint = 0;
  for (std::size_t m = 0; m < plan.path.size(); ++m) {
    const double u = plan.path.params[m];
    while (hint + 2 < M && static_cast<double>(hint + 1) <= u) ++hint;
    const double w = u - static_cast<double>(hint);
    double d2 = 0;
    for (int i = 0; i < 3; ++i) {
      const double r = reference[hint][i] + w * (reference[hint + 1][i] - reference[hint][i]);
      d2 += (r - plan.path.points[m][i]) * (r - plan.path.points[m][i]);
    }
    plan.sup_distance = std::max(plan.sup_distance, std::sqrt(d2));
  }
  plan.residual = legendrian_residual(plan.path);
  return plan;
}

}  // namespace legfront

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace legfront {

using Point = std::vector<double>;

enum class ModelKind { R3Std, R2n1Std, Unicycle };

// Model contact space. R2n1Std coordinates: (x, y, z, p_1..p_{n-1}, q_1..q_{n-1}),
// alpha = dz - y dx - sum p_i dq_i. Unicycle coordinates: (x, y, theta),
// alpha = cos(theta) dx - sin(theta) dy.
struct ContactModel {
  ModelKind kind = ModelKind::R3Std;
  int n = 1;

  static ContactModel r3() { return {ModelKind::R3Std, 1}; }
  static ContactModel standard(int n) {
    if (n < 1) throw DomainError("R2n1Std needs n >= 1");
    return {ModelKind::R2n1Std, n};
  }
  static ContactModel unicycle() { return {ModelKind::Unicycle, 1}; }

  int dim() const { return kind == ModelKind::R2n1Std ? 2 * n + 1 : 3; }

  std::string name() const {
    switch (kind) {
      case ModelKind::R3Std: return "R3Std";
      case ModelKind::R2n1Std: return "R2n1Std(" + std::to_string(n) + ")";
      case ModelKind::Unicycle: return "Unicycle";
    }
    return "?";
  }

  // Reeb field at p: d/dz for the standard forms, (cos, -sin, 0) for the unicycle.
  Point reeb(const Point& p) const {
    check(p, "point");
    Point r(dim(), 0.0);
    if (kind == ModelKind::Unicycle) {
      r[0] = std::cos(p[2]);
      r[1] = -std::sin(p[2]);
    } else {
      r[2] = 1.0;
    }
    return r;
  }

  void check(const Point& p, const char* what) const {
    if (static_cast<int>(p.size()) != dim())
      throw DimensionError(std::string(what) + " has dimension " + std::to_string(p.size()) +
                           ", model " + name() + " expects " + std::to_string(dim()));
  }

  bool operator==(const ContactModel& o) const {
    return kind == o.kind && (kind != ModelKind::R2n1Std || n == o.n);
  }
};

inline double eval_form(const ContactModel& m, const Point& p, const Point& v) {
  m.check(p, "point");
  m.check(v, "tangent");
  if (m.kind == ModelKind::Unicycle) return std::cos(p[2]) * v[0] - std::sin(p[2]) * v[1];
  double a = v[2] - p[1] * v[0];
  const int k = m.kind == ModelKind::R2n1Std ? m.n - 1 : 0;
  for (int i = 0; i < k; ++i) a -= p[3 + i] * v[3 + k + i];
  return a;
}

// A curve (shape empty, params per sample) or a sheet sampled on a product grid
// (shape = extent per axis, points row-major, params = concatenated axis coordinates).
struct SampledLegendrian {
  ContactModel model;
  std::vector<double> params;
  std::vector<Point> points;
  bool closed = false;
  std::vector<std::size_t> shape;

  std::size_t size() const { return points.size(); }
  bool is_grid() const { return !shape.empty(); }
};

inline double sup_norm(const Point& a) {
  double m = 0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// Max over segments of |alpha_mid(dP)| / |dP|_inf, alpha taken at the segment midpoint.
inline double segment_residual(const ContactModel& m, const Point& a, const Point& b,
                               std::size_t where) {
  const int d = m.dim();
  m.check(a, "sample");
  m.check(b, "sample");
  Point mid(d), dp(d);
  for (int k = 0; k < d; ++k) {
    mid[k] = 0.5 * (a[k] + b[k]);
    dp[k] = b[k] - a[k];
  }
  const double s = sup_norm(dp);
  if (s == 0) throw DomainError("degenerate segment at sample " + std::to_string(where));
  return std::abs(eval_form(m, mid, dp)) / s;
}

// Max over segments of |alpha_mid(dP)| / |dP|_inf, alpha taken at the segment midpoint.
// On grids every axis-parallel edge is a segment.
inline double legendrian_residual(const SampledLegendrian& c) {
  if (c.size() < 2) throw DomainError("residual needs at least 2 samples");
  double worst = 0;
  if (!c.is_grid()) {
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
      worst = std::max(worst, segment_residual(c.model, c.points[i], c.points[i + 1], i));
    return worst;
  }
  std::size_t total = 1;
  for (auto e : c.shape) total *= e;
  if (total != c.size()) throw DimensionError("grid shape does not match sample count");
  std::size_t stride = 1;
  for (std::size_t ax = c.shape.size(); ax-- > 0;) {
    const std::size_t ext = c.shape[ax];
    for (std::size_t i = 0; i < total; ++i) {
      if ((i / stride) % ext + 1 >= ext) continue;
      worst = std::max(worst, segment_residual(c.model, c.points[i], c.points[i + stride], i));
    }
    stride *= ext;
  }
  return worst;
}

struct ReebChord {
  double x_value = 0;
  double t0 = 0, t1 = 0;
  double length = 0;
};

struct ChordReport {
  std::vector<ReebChord> chords;
  std::optional<double> action;
};

namespace detail {

// Catmull-Rom through samples i-1..i+2, evaluated on segment i at local a in [0,1].
struct LocalCubic {
  const std::vector<Point>* pts;
  bool closed;

  std::size_t nseg() const { return pts->size() - 1; }

  const Point& at(long i) const {
    const long n = static_cast<long>(pts->size());
    if (closed) {
      const long m = n - 1;  // last sample duplicates the first
      i = ((i % m) + m) % m;
    } else {
      i = std::clamp(i, 0L, n - 1);
    }
    return (*pts)[static_cast<std::size_t>(i)];
  }

  void eval(long seg, double a, double out[3], double der[3]) const {
    const Point& p0 = at(seg - 1);
    const Point& p1 = at(seg);
    const Point& p2 = at(seg + 1);
    const Point& p3 = at(seg + 2);
    const double a2 = a * a, a3 = a2 * a;
    for (int k = 0; k < 3; ++k) {
      const double c0 = p1[k];
      const double c1 = 0.5 * (p2[k] - p0[k]);
      const double c2 = p0[k] - 2.5 * p1[k] + 2 * p2[k] - 0.5 * p3[k];
      const double c3 = -0.5 * p0[k] + 1.5 * p1[k] - 1.5 * p2[k] + 0.5 * p3[k];
      out[k] = c0 + c1 * a + c2 * a2 + c3 * a3;
      der[k] = c1 + 2 * c2 * a + 3 * c3 * a2;
    }
  }
};

}  // namespace detail

// Chords are self-intersections of the (x, y) projection. Crossings are bracketed on the
// polyline and then refined by Newton on local cubics.
inline ChordReport reeb_chords(const SampledLegendrian& c) {
  if (c.model.dim() != 3 || c.model.kind == ModelKind::Unicycle || c.is_grid())
    throw DomainError("reeb_chords needs a curve in R3Std");
  ChordReport rep;
  const auto& P = c.points;
  if (P.size() < 4) return rep;
  const std::size_t ns = P.size() - 1;

  struct Box {
    double x0, x1, y0, y1;
    std::size_t i;
  };
  std::vector<Box> boxes(ns);
  for (std::size_t i = 0; i < ns; ++i)
    boxes[i] = {std::min(P[i][0], P[i + 1][0]), std::max(P[i][0], P[i + 1][0]),
                std::min(P[i][1], P[i + 1][1]), std::max(P[i][1], P[i + 1][1]), i};
  std::sort(boxes.begin(), boxes.end(), [](const Box& a, const Box& b) {
    return a.x0 < b.x0 || (a.x0 == b.x0 && a.i < b.i);
  });

  auto adjacent = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    if (j == i + 1) return true;
    return c.closed && i == 0 && j == ns - 1;
  };

  auto param = [&](std::size_t i) {
    return c.params.size() == P.size() ? c.params[i] : static_cast<double>(i);
  };
  detail::LocalCubic lc{&P, c.closed};
  std::vector<Box> active;
  for (const Box& b : boxes) {
    active.erase(std::remove_if(active.begin(), active.end(),
                                [&](const Box& a) { return a.x1 < b.x0; }),
                 active.end());
    for (const Box& a : active) {
      if (a.y1 < b.y0 || b.y1 < a.y0) continue;
      std::size_t i = std::min(a.i, b.i), j = std::max(a.i, b.i);
      if (adjacent(i, j)) continue;
      const double dx = P[i + 1][0] - P[i][0], dy = P[i + 1][1] - P[i][1];
      const double ex = P[j + 1][0] - P[j][0], ey = P[j + 1][1] - P[j][1];
      const double den = dx * ey - dy * ex;
      if (den == 0) continue;
      const double wx = P[j][0] - P[i][0], wy = P[j][1] - P[i][1];
      double al = (wx * ey - wy * ex) / den;
      double be = (wx * dy - wy * dx) / den;
      if (al < 0 || al >= 1 || be < 0 || be >= 1) continue;

      double za = P[i][2] + al * (P[i + 1][2] - P[i][2]);
      double zb = P[j][2] + be * (P[j + 1][2] - P[j][2]);
      double xv = P[i][0] + al * dx;
      // Newton refinement on the local cubics
      double ra = al, rb = be;
      bool ok = false;
      for (int it = 0; it < 40; ++it) {
        double u[3], du[3], v[3], dv[3];
        lc.eval(static_cast<long>(i), ra, u, du);
        lc.eval(static_cast<long>(j), rb, v, dv);
        const double fx = u[0] - v[0], fy = u[1] - v[1];
        const double det = -du[0] * dv[1] + du[1] * dv[0];
        if (det == 0) break;
        const double sa = (-fx * dv[1] + fy * dv[0]) / det;
        const double sb = (du[0] * fy - du[1] * fx) / det;
        ra -= sa;
        rb -= sb;
        if (ra < -0.5 || ra > 1.5 || rb < -0.5 || rb > 1.5) break;
        if (std::abs(sa) < 1e-10 && std::abs(sb) < 1e-10) {
          ok = true;
          break;
        }
      }
      if (ok) {
        double u[3], du[3], v[3], dv[3];
        lc.eval(static_cast<long>(i), ra, u, du);
        lc.eval(static_cast<long>(j), rb, v, dv);
        za = u[2];
        zb = v[2];
        xv = u[0];
        al = ra;
        be = rb;
      }
      const double len = std::abs(za - zb);
      if (!(len > 1e-12)) continue;
      ReebChord ch;
      ch.x_value = xv;
      ch.t0 = param(i) + al * (param(i + 1) - param(i));
      ch.t1 = param(j) + be * (param(j + 1) - param(j));
      if (ch.t0 > ch.t1) std::swap(ch.t0, ch.t1);
      ch.length = len;
      rep.chords.push_back(ch);
    }
    active.push_back(b);
  }
  std::sort(rep.chords.begin(), rep.chords.end(), [](const ReebChord& a, const ReebChord& b) {
    return a.x_value < b.x_value || (a.x_value == b.x_value && a.t0 < b.t0);
  });
  for (const auto& ch : rep.chords)
    if (!rep.action || ch.length < *rep.action) rep.action = ch.length;
  return rep;
}

}  // namespace legfront

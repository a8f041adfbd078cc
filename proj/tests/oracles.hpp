#pragma once
// Independent reference computations used by the tests and the acceptance run.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "legfront/contact.hpp"

namespace oracle {

using V3 = std::array<double, 3>;

inline V3 sub(const V3& a, const V3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline double dot(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline V3 cross(const V3& a, const V3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Linking number of two closed polygons (last vertex joins the first) from signed crossings
// in the projection along d: each crossing counts sign((r_a - r_b) . (t_a x t_b)) / 2.
inline double linking_number(const std::vector<V3>& A, const std::vector<V3>& B, V3 d) {
  const double nd = std::sqrt(dot(d, d));
  for (auto& v : d) v /= nd;
  V3 e1 = cross(d, V3{1, 0, 0});
  if (dot(e1, e1) < 1e-6) e1 = cross(d, V3{0, 1, 0});
  const double n1 = std::sqrt(dot(e1, e1));
  for (auto& v : e1) v /= n1;
  const V3 e2 = cross(d, e1);
  struct Seg {
    V3 p, q;
    double u0, v0, u1, v1, lo, hi;
  };
  auto segs = [&](const std::vector<V3>& P) {
    std::vector<Seg> s;
    for (std::size_t i = 0; i < P.size(); ++i) {
      const V3& p = P[i];
      const V3& q = P[(i + 1) % P.size()];
      Seg g{p, q, dot(p, e1), dot(p, e2), dot(q, e1), dot(q, e2), 0, 0};
      g.lo = std::min(g.u0, g.u1);
      g.hi = std::max(g.u0, g.u1);
      s.push_back(g);
    }
    std::sort(s.begin(), s.end(), [](const Seg& a, const Seg& b) { return a.lo < b.lo; });
    return s;
  };
  const auto SA = segs(A), SB = segs(B);
  double lk = 0;
  for (const auto& a : SA) {
    for (const auto& b : SB) {
      if (b.lo > a.hi) break;
      if (b.hi < a.lo) continue;
      const double rx = a.u1 - a.u0, ry = a.v1 - a.v0, sx = b.u1 - b.u0, sy = b.v1 - b.v0;
      const double den = rx * sy - ry * sx;
      if (den == 0) continue;
      const double qx = b.u0 - a.u0, qy = b.v0 - a.v0;
      const double s = (qx * sy - qy * sx) / den, t = (qx * ry - qy * rx) / den;
      if (s < 0 || s >= 1 || t < 0 || t >= 1) continue;
      V3 pa, pb;
      for (int k = 0; k < 3; ++k) {
        pa[k] = a.p[k] + s * (a.q[k] - a.p[k]);
        pb[k] = b.p[k] + t * (b.q[k] - b.p[k]);
      }
      const double w = dot(sub(pa, pb), cross(sub(a.q, a.p), sub(b.q, b.p)));
      lk += (w > 0 ? 0.5 : -0.5);
    }
  }
  return lk;
}

// Gauss double integral by the midpoint rule; only for smooth, well separated curves.
inline double gauss_linking(const std::vector<V3>& A, const std::vector<V3>& B) {
  double s = 0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    const V3 da = sub(A[(i + 1) % A.size()], A[i]);
    V3 ma;
    for (int k = 0; k < 3; ++k) ma[k] = A[i][k] + da[k] / 2;
    for (std::size_t j = 0; j < B.size(); ++j) {
      const V3 db = sub(B[(j + 1) % B.size()], B[j]);
      V3 mb;
      for (int k = 0; k < 3; ++k) mb[k] = B[j][k] + db[k] / 2;
      const V3 r = sub(ma, mb);
      const double n = std::sqrt(dot(r, r));
      s += dot(r, cross(da, db)) / (n * n * n);
    }
  }
  return s / (4 * M_PI);
}

// Thurston-Bennequin number as the linking number of a closed Legendrian with its push-off
// along the Reeb field d/dz.
inline int pushoff_tb(const legfront::SampledLegendrian& L, double eta = 1e-4) {
  std::vector<V3> A, B;
  const std::size_t n = L.closed ? L.size() - 1 : L.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = L.points[i];
    A.push_back({p[0], p[1], p[2]});
    B.push_back({p[0], p[1], p[2] + eta});
  }
  return static_cast<int>(std::lround(linking_number(A, B, {0.23, -0.61, 0.76})));
}

}  // namespace oracle

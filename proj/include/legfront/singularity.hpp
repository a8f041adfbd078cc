#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "contact.hpp"
#include "front.hpp"
#include "loose.hpp"
#include "zigzag.hpp"

namespace legfront {

// Wrinkle family (x, psi_{D(x)}(t)) on R^{m-1} x R. D depends on the mode:
//   Standard  1 - |x|^2,  InsideOut |x|^2 - 1,  Embryo tau - |x|^2,
//   Pair      two standard wrinkles centered at x_1 = +-2 (bridged when resolved).
// With resolve_delta set, D is replaced by m_delta(D) (Pair: m_delta of the bridged profile).
enum class WrinkleMode { Standard, InsideOut, Embryo, Pair };

inline const char* to_string(WrinkleMode m) {
  switch (m) {
    case WrinkleMode::Standard: return "standard";
    case WrinkleMode::InsideOut: return "inside-out";
    case WrinkleMode::Embryo: return "embryo";
    case WrinkleMode::Pair: return "pair";
  }
  return "?";
}

struct WrinkleModel {
  int m = 2;
  WrinkleMode mode = WrinkleMode::Standard;
  double tau = 0;
  std::optional<double> resolve_delta;
  double extent = 2;      // lattice covers [-extent, extent]^m
  std::size_t grid = 201;  // lattice points per axis
};

struct DeltaField {
  double d = 0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

inline DeltaField delta_field(const WrinkleModel& w, const Eigen::VectorXd& x) {
  const int k = static_cast<int>(x.size());
  DeltaField f;
  f.grad = Eigen::VectorXd::Zero(k);
  f.hess = Eigen::MatrixXd::Zero(k, k);
  const double r2 = x.squaredNorm();
  switch (w.mode) {
    case WrinkleMode::Standard:
      f.d = 1 - r2;
      f.grad = -2 * x;
      f.hess = -2 * Eigen::MatrixXd::Identity(k, k);
      break;
    case WrinkleMode::InsideOut:
      f.d = r2 - 1;
      f.grad = 2 * x;
      f.hess = 2 * Eigen::MatrixXd::Identity(k, k);
      break;
    case WrinkleMode::Embryo:
      f.d = w.tau - r2;
      f.grad = -2 * x;
      f.hess = -2 * Eigen::MatrixXd::Identity(k, k);
      break;
    case WrinkleMode::Pair: {
      // 1 - (|x_1| - 2)^2 - |x'|^2; the bridge holds (|x_1| - 2) at 0 for |x_1| < 2
      const double a = std::abs(x[0]);
      const double s = x[0] >= 0 ? 1.0 : -1.0;
      const bool bridge = w.resolve_delta.has_value() && a < 2;
      const double e = bridge ? 0.0 : a - 2;
      f.d = 1 - e * e - (r2 - x[0] * x[0]);
      f.grad = -2 * x;
      f.hess = -2 * Eigen::MatrixXd::Identity(k, k);
      f.grad[0] = bridge ? 0.0 : -2 * e * s;
      f.hess(0, 0) = bridge ? 0.0 : -2;
      break;
    }
  }
  if (w.resolve_delta) {
    const auto m = m_delta_full(*w.resolve_delta, f.d);
    f.hess = m.dd * f.grad * f.grad.transpose() + m.d * f.hess;
    f.grad = m.d * f.grad;
    f.d = m.m;
  }
  return f;
}

struct MapJet {
  Eigen::VectorXd value;
  Eigen::MatrixXd jac;  // rows: output coordinates, columns: (x_1..x_{m-1}, t)
};

// Front (x, X, Z) in R^{m+1}.
inline MapJet wrinkle_front(const WrinkleModel& w, const Eigen::VectorXd& pt) {
  const int m = w.m;
  if (pt.size() != m) throw DimensionError("wrinkle point must have m coordinates");
  const Eigen::VectorXd x = pt.head(m - 1);
  const double t = pt[m - 1];
  const auto D = delta_field(w, x);
  const double d = D.d, t2 = t * t;
  MapJet J;
  J.value.resize(m + 1);
  J.value.head(m - 1) = x;
  J.value[m - 1] = t * (t2 - 3 * d);
  J.value[m] = t * (t2 * t2 / 5 - 2 * d * t2 / 3 + d * d);
  J.jac = Eigen::MatrixXd::Zero(m + 1, m);
  J.jac.topLeftCorner(m - 1, m - 1).setIdentity();
  const double Xd = -3 * t, Zd = -2 * t * t2 / 3 + 2 * d * t;
  for (int i = 0; i < m - 1; ++i) {
    J.jac(m - 1, i) = Xd * D.grad[i];
    J.jac(m, i) = Zd * D.grad[i];
  }
  J.jac(m - 1, m - 1) = 3 * (t2 - d);
  J.jac(m, m - 1) = (t2 - d) * (t2 - d);
  return J;
}

// Legendrian lift in R2n1Std(m) coordinates (x, y, z, p_1.., q_1..) with x = X, z = Z,
// y = (t^2 - D)/3 and p_i = dD/dx_i (t^3/3 + D t), q_i = x_i.
inline MapJet wrinkle_lift(const WrinkleModel& w, const Eigen::VectorXd& pt) {
  const int m = w.m;
  if (pt.size() != m) throw DimensionError("wrinkle point must have m coordinates");
  const Eigen::VectorXd x = pt.head(m - 1);
  const double t = pt[m - 1];
  const auto D = delta_field(w, x);
  const double d = D.d, t2 = t * t;
  const int dim = 2 * m + 1;
  MapJet J;
  J.value = Eigen::VectorXd::Zero(dim);
  J.jac = Eigen::MatrixXd::Zero(dim, m);
  const int T = m - 1;  // column of t
  J.value[0] = t * (t2 - 3 * d);
  J.value[1] = (t2 - d) / 3;
  J.value[2] = t * (t2 * t2 / 5 - 2 * d * t2 / 3 + d * d);
  const double g = t * t2 / 3 + d * t;
  for (int i = 0; i < m - 1; ++i) {
    J.value[3 + i] = D.grad[i] * g;
    J.value[3 + (m - 1) + i] = x[i];
  }
  J.jac(0, T) = 3 * (t2 - d);
  J.jac(1, T) = 2 * t / 3;
  J.jac(2, T) = (t2 - d) * (t2 - d);
  for (int i = 0; i < m - 1; ++i) {
    J.jac(0, i) = -3 * t * D.grad[i];
    J.jac(1, i) = -D.grad[i] / 3;
    J.jac(2, i) = (-2 * t * t2 / 3 + 2 * d * t) * D.grad[i];
    J.jac(3 + i, T) = D.grad[i] * (t2 + d);
    for (int j = 0; j < m - 1; ++j) J.jac(3 + i, j) = D.hess(i, j) * g + D.grad[i] * D.grad[j] * t;
    J.jac(3 + (m - 1) + i, i) = 1;
  }
  return J;
}

// The explicit lift g(u, v) of the standard 2-dimensional wrinkle, components ordered
// (x_1, x_2, z, y_1, y_2) with alpha = dz - y_1 dx_1 - y_2 dx_2.
inline MapJet wrinkle_lift_uv(double u, double v) {
  const double w = 1 - u * u, v2 = v * v, v3 = v2 * v;
  MapJet J;
  J.value.resize(5);
  J.value << u, v3 - 3 * w * v, v2 * v3 / 5 - 2 * w * v3 / 3 + w * w * v, 2.0 / 3 * u * v * (3 * u * u - v2 - 3),
      (u * u + v2 - 1) / 3;
  J.jac.resize(5, 2);
  J.jac << 1, 0,                                                                 //
      6 * u * v, 3 * v2 - 3 * w,                                                 //
      4 * u * v3 / 3 - 4 * w * u * v, v2 * v2 - 2 * w * v2 + w * w,             //
      v * (6 * u * u - 2 * v2 / 3 - 2), 2 * u * (u * u - v2 - 1),               //
      2 * u / 3, 2 * v / 3;
  return J;
}

// |alpha(column)| for each tangent column of a lift in (x_1, x_2, z, y_1, y_2) order.
inline double pullback_uv(const MapJet& g) {
  double worst = 0;
  for (int c = 0; c < 2; ++c) {
    const double a = g.jac(2, c) - g.value[3] * g.jac(0, c) - g.value[4] * g.jac(1, c);
    worst = std::max(worst, std::abs(a));
  }
  return worst;
}

// Same for lifts in R2n1Std(m) coordinates.
inline double pullback_std(const MapJet& g, int m) {
  double worst = 0;
  for (int c = 0; c < m; ++c) {
    double a = g.jac(2, c) - g.value[1] * g.jac(0, c);
    for (int i = 0; i < m - 1; ++i) a -= g.value[3 + i] * g.jac(3 + (m - 1) + i, c);
    worst = std::max(worst, std::abs(a));
  }
  return worst;
}

constexpr double kRankThreshold = 1e-9;

inline int numeric_rank(const Eigen::MatrixXd& A, double rel = kRankThreshold) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > rel * s[0]) ++r;
  return r;
}

// ---------------------------------------------------------------------------------------

struct SingularLocus {
  std::vector<Eigen::VectorXd> wrinkle;      // front rank drops
  std::vector<Eigen::VectorXd> swallowtail;  // lift rank drops
  double threshold = kRankThreshold;
  double spacing = 0;
};

namespace detail {

inline std::vector<double> lattice(const WrinkleModel& w) {
  if (w.grid < 2) throw DomainError("lattice needs at least 2 points per axis");
  return linspace(-w.extent, w.extent, w.grid);
}

// Iterates lattice points in row-major order (last coordinate fastest).
template <class F>
void for_lattice(const WrinkleModel& w, F&& f) {
  const auto ax = lattice(w);
  const int m = w.m;
  std::vector<std::size_t> idx(m, 0);
  Eigen::VectorXd p(m);
  while (true) {
    for (int i = 0; i < m; ++i) p[i] = ax[idx[i]];
    f(p, idx);
    int k = m - 1;
    while (k >= 0 && ++idx[k] == ax.size()) idx[k--] = 0;
    if (k < 0) break;
  }
}

inline double front_minor(const WrinkleModel& w, const Eigen::VectorXd& p) {
  return wrinkle_front(w, p).jac.topRows(w.m).determinant();
}

inline void add_unique(std::vector<Eigen::VectorXd>& v, const Eigen::VectorXd& p) {
  for (const auto& q : v)
    if ((q - p).lpNorm<Eigen::Infinity>() < 1e-12) return;
  v.push_back(p);
}

}  // namespace detail

// Rank scan of the front and lift Jacobians. Lattice points are tested directly; lattice edges
// on which the base-projection minor changes sign are bisected and the root is tested.
inline SingularLocus detect_singular_loci(const WrinkleModel& w) {
  if (w.m < 2) throw DomainError("wrinkle models need m >= 2");
  SingularLocus L;
  const auto ax = detail::lattice(w);
  L.spacing = ax[1] - ax[0];
  auto classify_point = [&](const Eigen::VectorXd& p) {
    if (numeric_rank(wrinkle_front(w, p).jac) < w.m) {
      detail::add_unique(L.wrinkle, p);
      if (numeric_rank(wrinkle_lift(w, p).jac) < w.m) detail::add_unique(L.swallowtail, p);
    }
  };
  detail::for_lattice(w, [&](const Eigen::VectorXd& p, const std::vector<std::size_t>& idx) {
    classify_point(p);
    const double d0 = detail::front_minor(w, p);
    for (int a = 0; a < w.m; ++a) {
      if (idx[a] + 1 >= ax.size()) continue;
      Eigen::VectorXd q = p;
      q[a] = ax[idx[a] + 1];
      const double d1 = detail::front_minor(w, q);
      if (!(d0 * d1 < 0)) continue;
      double lo = p[a], hi = q[a], flo = d0;
      Eigen::VectorXd r = p;
      for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        r[a] = mid;
        const double fm = detail::front_minor(w, r);
        if (fm == 0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      // the endpoint with the smaller minor is the better root
      r[a] = lo;
      const double fl = std::abs(detail::front_minor(w, r));
      r[a] = hi;
      if (fl < std::abs(detail::front_minor(w, r))) r[a] = lo;
      classify_point(r);
    }
  });
  auto lex = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  };
  std::sort(L.wrinkle.begin(), L.wrinkle.end(), lex);
  std::sort(L.swallowtail.begin(), L.swallowtail.end(), lex);
  return L;
}

// Number of lattice points where the lift Jacobian drops rank.
inline long lift_rank_drops(const WrinkleModel& w) {
  long n = 0;
  detail::for_lattice(w, [&](const Eigen::VectorXd& p, const std::vector<std::size_t>&) {
    if (numeric_rank(wrinkle_lift(w, p).jac) < w.m) ++n;
  });
  return n;
}

// Lift of the lattice as a sampled sheet.
inline SampledLegendrian sample_lift(const WrinkleModel& w) {
  SampledLegendrian s;
  s.model = ContactModel::standard(w.m);
  const auto ax = detail::lattice(w);
  s.shape.assign(w.m, ax.size());
  for (int i = 0; i < w.m; ++i) s.params.insert(s.params.end(), ax.begin(), ax.end());
  detail::for_lattice(w, [&](const Eigen::VectorXd& p, const std::vector<std::size_t>&) {
    const auto v = wrinkle_lift(w, p).value;
    s.points.emplace_back(v.data(), v.data() + v.size());
  });
  return s;
}

// ---------------------------------------------------------------------------------------

struct ResolveResult {
  WrinkleModel model;          // the resolved family
  long rank_drops = 0;         // lattice points with rank-deficient lift
  double max_pullback = 0;     // analytic |alpha(Dg)| over the lattice
  double max_outside_deviation = 0;  // vs. the unresolved front where |x|^2 - 1 >= 2 delta
  LooseChart chart;            // chart over the disk marking
  std::optional<Classification> cls;
};

inline ResolveResult resolve_inside_out(double delta, int m = 2, std::size_t grid = 400, double extent = 2) {
  if (!(delta > 0) || !(delta < 0.5)) throw DomainError("resolution delta must lie in (0, 0.5)");
  ResolveResult R;
  R.model.m = m;
  R.model.mode = WrinkleMode::InsideOut;
  R.model.resolve_delta = delta;
  R.model.grid = grid;
  R.model.extent = extent;
  WrinkleModel raw = R.model;
  raw.resolve_delta.reset();
  detail::for_lattice(R.model, [&](const Eigen::VectorXd& p, const std::vector<std::size_t>&) {
    const auto g = wrinkle_lift(R.model, p);
    if (numeric_rank(g.jac) < m) ++R.rank_drops;
    R.max_pullback = std::max(R.max_pullback, pullback_std(g, m));
    if (p.head(m - 1).squaredNorm() - 1 >= 2 * delta) {
      const auto a = wrinkle_front(R.model, p).value, b = wrinkle_front(raw, p).value;
      R.max_outside_deviation = std::max(R.max_outside_deviation, (a - b).lpNorm<Eigen::Infinity>());
    }
  });
  // over |x|^2 <= 1 + delta/2 the profile is psi_delta for every x
  auto z = psi_curve(delta, -2 * std::sqrt(delta), 2 * std::sqrt(delta), 4001);
  const auto chords = reeb_chords(z);
  if (!chords.action) throw DomainError("extracted zig-zag has no Reeb chord");
  R.chart.zigzag = z;
  R.chart.cube = bounding_box(z, 0.1);
  R.chart.rho = exact(std::sqrt(1 + delta / 2));
  R.chart.action = exact(*chords.action);
  R.cls = classify_chart(R.chart);
  return R;
}

// Two standard wrinkles joined by the annulus marking along x_1 in [-2, 2].
inline ResolveResult resolve_pair(double delta, int m = 2, std::size_t grid = 400, double extent = 4) {
  if (!(delta > 0) || !(delta < 0.5)) throw DomainError("resolution delta must lie in (0, 0.5)");
  ResolveResult R;
  R.model.m = m;
  R.model.mode = WrinkleMode::Pair;
  R.model.resolve_delta = delta;
  R.model.grid = grid;
  R.model.extent = extent;
  WrinkleModel raw = R.model;
  raw.resolve_delta.reset();
  detail::for_lattice(R.model, [&](const Eigen::VectorXd& p, const std::vector<std::size_t>&) {
    const auto g = wrinkle_lift(R.model, p);
    if (numeric_rank(g.jac) < m) ++R.rank_drops;
    R.max_pullback = std::max(R.max_pullback, pullback_std(g, m));
    if (std::abs(p[0]) >= 2 && delta_field(raw, p.head(m - 1)).d >= 2 * delta) {
      const auto a = wrinkle_front(R.model, p).value, b = wrinkle_front(raw, p).value;
      R.max_outside_deviation = std::max(R.max_outside_deviation, (a - b).lpNorm<Eigen::Infinity>());
    }
  });
  return R;
}

// ---------------------------------------------------------------------------------------
// Flying saucer z = +-(1 - r^2)^{3/2}, parametrized by s in (0, pi):
// r = sin s, z = cos^3 s, dz/dr = -3 sin s cos s.

// n = 1 slice: upper arc left to right, cusp at r = 1, lower arc back, cusp at r = -1.
inline FrontDiagram saucer_slice(std::size_t samples_per_arc = 5000) {
  if (samples_per_arc < 3) throw DomainError("saucer needs at least 3 samples per arc");
  FrontDiagram f;
  f.closed = true;
  for (int a = 0; a < 2; ++a) {
    FrontArc arc;
    arc.id = a;
    for (double s : linspace(0, M_PI, samples_per_arc)) {
      // upper: r = -cos s, z = sin^3 s; lower: r = cos s, z = -sin^3 s
      const double c = std::cos(s), sn = std::sin(s);
      const double r = a == 0 ? -c : c;
      const double z = a == 0 ? sn * sn * sn : -sn * sn * sn;
      arc.x.push_back(r);
      arc.z.push_back(z);
      arc.y.push_back(-3 * r * std::sqrt(std::max(0.0, 1 - r * r)) * (a == 0 ? 1 : -1));
    }
    arc.x.front() = a == 0 ? -1.0 : 1.0;
    arc.x.back() = a == 0 ? 1.0 : -1.0;
    arc.z.front() = arc.z.back() = 0;
    arc.y.front() = arc.y.back() = 0;
    f.arcs.push_back(std::move(arc));
  }
  f.junctions = {{0, 1, true}, {1, 0, true}};
  return f;
}

// Saucer in R^{2n+1} sampled on (s, angles); s and the polar angles are offset by half a step.
inline SampledLegendrian saucer_sheet(int n, std::size_t grid = 64) {
  if (n < 1) throw DomainError("saucer needs n >= 1");
  if (n == 1) return lift_front(saucer_slice(grid));
  if (grid < 3) throw DomainError("saucer grid too small");
  SampledLegendrian S;
  S.model = ContactModel::standard(n);
  const std::size_t na = static_cast<std::size_t>(n - 1);  // angle count
  std::vector<std::vector<double>> axes;
  auto half = [&](double lo, double hi) {
    std::vector<double> v;
    for (std::size_t i = 0; i < grid; ++i) v.push_back(lo + (hi - lo) * (i + 0.5) / static_cast<double>(grid));
    return v;
  };
  axes.push_back(half(0, M_PI));
  for (std::size_t k = 0; k + 1 < na; ++k) axes.push_back(half(0, M_PI));
  axes.push_back(linspace(0, 2 * M_PI, grid));
  for (const auto& a : axes) {
    S.shape.push_back(a.size());
    S.params.insert(S.params.end(), a.begin(), a.end());
  }
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    const double s = axes[0][idx[0]];
    // unit direction from hyperspherical angles
    std::vector<double> dir(n, 1.0);
    double prod = 1;
    for (std::size_t k = 0; k < na; ++k) {
      const double th = axes[1 + k][idx[1 + k]];
      dir[k] = prod * std::cos(th);
      prod *= std::sin(th);
    }
    dir[n - 1] = prod;
    if (na >= 1) {
      // the last angle is azimuthal: (cos, sin) pair
      const double ph = axes[na][idx[na]];
      double pre = 1;
      for (std::size_t k = 0; k + 1 < na; ++k) pre *= std::sin(axes[1 + k][idx[1 + k]]);
      dir[n - 2] = pre * std::cos(ph);
      dir[n - 1] = pre * std::sin(ph);
    }
    const double r = std::sin(s), z = std::pow(std::cos(s), 3), dzdr = -3 * std::sin(s) * std::cos(s);
    Point P(2 * n + 1, 0.0);
    P[0] = r * dir[0];
    P[1] = dzdr * dir[0];
    P[2] = z;
    for (int i = 1; i < n; ++i) {
      P[3 + (i - 1)] = dzdr * dir[i];
      P[3 + (n - 1) + (i - 1)] = r * dir[i];
    }
    S.points.push_back(std::move(P));
    int k = static_cast<int>(axes.size()) - 1;
    while (k >= 0 && ++idx[k] == axes[k].size()) idx[k--] = 0;
    if (k < 0) break;
  }
  return S;
}

}  // namespace legfront

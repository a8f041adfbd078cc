#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "contact.hpp"
#include "util.hpp"
#include "zigzag.hpp"

namespace legfront {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact value of a double (every finite double is a dyadic rational).
inline Rational exact(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite value");
  return Rational(v);
}

// Parses "p/q", integers and plain decimals ("0.25", "1e-3") exactly.
inline Rational parse_rational(const std::string& s) {
  auto bad = [&]() { return SchemaError("not a rational number: '" + s + "'"); };
  if (s.empty()) throw bad();
  const auto slash = s.find('/');
  auto integer = [&](const std::string& t) {
    if (t.empty()) throw bad();
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw bad();
    for (std::size_t k = i; k < t.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(t[k]))) throw bad();
    std::string digits = t.substr(i);
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    return BigInt((t[0] == '-' ? "-" : "") + digits);
  };
  if (slash != std::string::npos) {
    BigInt den = integer(s.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(integer(s.substr(0, slash)), den);
  }
  std::string mant = s;
  long e10 = 0;
  const auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = s.substr(0, epos);
    const std::string es = s.substr(epos + 1);
    BigInt ev = integer(es);
    if (abs(ev) > 4000) throw bad();
    e10 = ev.convert_to<long>();
  }
  const auto dot = mant.find('.');
  if (dot != std::string::npos) {
    const std::string frac = mant.substr(dot + 1);
    for (char ch : frac)
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw bad();
    std::string whole = mant.substr(0, dot);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty() && whole.find_first_of("0123456789") == std::string::npos) throw bad();
    mant = whole + frac;
    e10 -= static_cast<long>(frac.size());
  }
  Rational r(integer(mant));
  BigInt p10 = pow(BigInt(10), static_cast<unsigned>(std::abs(e10)));
  return e10 >= 0 ? r * Rational(p10) : r / Rational(p10);
}

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// ---------------------------------------------------------------------------------------

enum class ChartClass { Loose, PseudoLoose, Critical };

inline const char* to_string(ChartClass c) {
  switch (c) {
    case ChartClass::Loose: return "Loose";
    case ChartClass::PseudoLoose: return "PseudoLoose";
    case ChartClass::Critical: return "Critical";
  }
  return "?";
}

struct Box3 {
  std::array<std::array<double, 2>, 3> side{};  // x, y, z intervals

  bool contains(const Point& p, double tol = 0) const {
    for (int k = 0; k < 3; ++k)
      if (p[k] < side[k][0] - tol || p[k] > side[k][1] + tol) return false;
    return true;
  }
  bool inside(const Box3& o) const {
    for (int k = 0; k < 3; ++k)
      if (side[k][0] < o.side[k][0] || side[k][1] > o.side[k][1]) return false;
    return true;
  }
};

struct LooseChart {
  Box3 cube;
  Rational rho = 1, action = 1;
  SampledLegendrian zigzag;  // canonical zig-zag of the given action, in R3Std
  double q_center = 0;       // center of J_rho in the q direction
};

struct Classification {
  Rational size;
  ChartClass cls = ChartClass::Loose;
};

inline Classification classify(const Rational& rho, const Rational& action) {
  if (rho <= 0 || action <= 0) throw DomainError("rho and action must be positive");
  Classification c;
  c.size = rho * rho / action;
  const Rational half(1, 2);
  c.cls = c.size > half ? ChartClass::Loose : (c.size < half ? ChartClass::PseudoLoose : ChartClass::Critical);
  return c;
}

inline Classification classify_chart(const LooseChart& ch) { return classify(ch.rho, ch.action); }

inline Box3 bounding_box(const SampledLegendrian& c, double margin) {
  Box3 b;
  for (int k = 0; k < 3; ++k) b.side[k] = {INFINITY, -INFINITY};
  for (const auto& p : c.points)
    for (int k = 0; k < 3; ++k) {
      b.side[k][0] = std::min(b.side[k][0], p[k]);
      b.side[k][1] = std::max(b.side[k][1], p[k]);
    }
  for (int k = 0; k < 3; ++k) {
    const double w = b.side[k][1] - b.side[k][0];
    b.side[k][0] -= margin * w;
    b.side[k][1] += margin * w;
  }
  return b;
}

// Chart built around the canonical zig-zag; the cube is its bounding box widened by margin.
inline LooseChart make_chart(const Rational& rho, const Rational& action, double margin = 0.1,
                             std::size_t samples_per_arc = 2000) {
  if (rho <= 0 || action <= 0) throw DomainError("rho and action must be positive");
  LooseChart ch;
  ch.rho = rho;
  ch.action = action;
  ch.zigzag = canonical_zigzag(to_double(action), samples_per_arc);
  ch.cube = bounding_box(ch.zigzag, margin);
  return ch;
}

// Contact scaling phi_c(x, y, z, p, q) = (cx, cy, c^2 z, cp, cq).
inline Point contact_scale(const Point& p, double c) {
  if (!(c > 0)) throw DomainError("scaling factor must be positive");
  if (p.size() < 3 || p.size() % 2 == 0) throw DimensionError("point is not in a standard model R^{2n+1}");
  Point r(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) r[k] = (k == 2 ? c * c : c) * p[k];
  return r;
}

inline SampledLegendrian contact_scale(const SampledLegendrian& s, double c) {
  if (s.model.kind == ModelKind::Unicycle) throw DomainError("contact scaling acts on the standard models");
  SampledLegendrian r = s;
  for (auto& p : r.points) p = contact_scale(p, c);
  return r;
}

inline Box3 contact_scale(const Box3& b, double c) {
  if (!(c > 0)) throw DomainError("scaling factor must be positive");
  Box3 r = b;
  for (int k = 0; k < 3; ++k)
    for (auto& v : r.side[k]) v *= (k == 2 ? c * c : c);
  return r;
}

inline LooseChart contact_scale(const LooseChart& ch, const Rational& c) {
  if (c <= 0) throw DomainError("scaling factor must be positive");
  const double cd = to_double(c);
  LooseChart r;
  r.cube = contact_scale(ch.cube, cd);
  r.rho = c * ch.rho;
  r.action = c * c * ch.action;
  r.zigzag = contact_scale(ch.zigzag, cd);
  r.q_center = cd * ch.q_center;
  return r;
}

// ---------------------------------------------------------------------------------------
// Cut-off m_delta: equal to delta below delta/2, identity above 2 delta, slope <= 1.
// The slope ramps 0 -> 2/3 on [delta/2, 3delta/4], stays 2/3, ramps 2/3 -> 1 on [3delta/2, 2delta].

struct MValue {
  double m, d, dd;
};

inline MValue m_delta_full(double delta, double x) {
  if (!(delta > 0)) throw DomainError("delta must be positive");
  const double a = delta / 2, b = 0.75 * delta, c = 1.5 * delta, e = 2 * delta;
  if (x <= a) return {delta, 0, 0};
  if (x <= b) {
    const double L = b - a, u = (x - a) / L;
    return {delta + 2.0 / 3 * L * smooth5_int(u), 2.0 / 3 * smooth5(u), 2.0 / 3 * smooth5_d(u) / L};
  }
  const double mb = delta + delta / 12;
  if (x <= c) return {mb + 2.0 / 3 * (x - b), 2.0 / 3, 0};
  if (x < e) {
    const double L = e - c, u = (x - c) / L;
    const double mc = mb + 2.0 / 3 * (c - b);
    return {mc + 2.0 / 3 * (x - c) + L / 3 * smooth5_int(u), 2.0 / 3 + smooth5(u) / 3,
            smooth5_d(u) / (3 * L)};
  }
  return {x, 1, 0};
}

inline double m_delta(double delta, double x) { return m_delta_full(delta, x).m; }

// ---------------------------------------------------------------------------------------
// Squeezing

struct SqueezeOptions {
  std::size_t grid_t = 200;
  std::size_t grid_q = 200;
  double margin = 0.1;
  std::size_t zigzag_samples = 2000;
};

struct SqueezeResult {
  double scale = 1;        // normalization factor sqrt(2/a)
  double rho0 = 0;         // normalized rho
  double site_width = 0;   // half-width of each squeezing site
  double delta = 0;
  double rho_prime = 0;
  std::vector<double> centers;  // normalized site centers
  std::vector<LooseChart> charts;  // in the input coordinates
  SampledLegendrian omega;  // normalized squeezed sheet on a (t, q) grid, R2n1Std(2)
  std::vector<double> omega_q;     // q coordinate of each grid column
  double max_p = 0;         // max |dz/dq| on the grid
  double bound = 0;         // (1 - delta) / rho0
  bool bound_holds = false;
  bool p_below_rho = false;
  bool fronts_inside = false;
  bool disjoint = false;
  bool contained = false;
  double omega_residual = 0;
};

namespace detail {

// Saturation that takes v = 1 + eta to 1 with zero slope; identity below 1 - eta.
inline std::array<double, 2> saturate(double v, double eta) {
  if (v <= 1 - eta) return {v, 1};
  if (v >= 1 + eta) return {1, 0};
  const double w = v - 1 + eta;
  return {v - w * w / (4 * eta), 1 - w / (2 * eta)};
}

// Height profile of one site at distance r from its center; value and d/dr.
inline std::array<double, 2> site_profile(double r, double W, double delta) {
  const double eta = delta / 4;
  const auto m = m_delta_full(delta, r + 1 + eta - W);
  const auto s = saturate(m.m, eta);
  return {s[0], s[1] * m.d};
}

}  // namespace detail

inline SqueezeResult squeeze_chart(const LooseChart& chart, const Rational& sigma, int k,
                                   const SqueezeOptions& opt = {}) {
  const auto cl = classify_chart(chart);
  if (cl.cls != ChartClass::Loose) throw DomainError("squeeze needs a loose chart");
  if (sigma <= Rational(1, 2)) throw DomainError("sigma must exceed 1/2");
  if (k < 1) throw DomainError("site count must be at least 1");
  SqueezeResult R;
  const double a = to_double(chart.action), rho = to_double(chart.rho);
  R.scale = std::sqrt(2 / a);
  R.rho0 = rho * R.scale;
  R.site_width = R.rho0 / k;
  const double W = R.site_width;
  if (!(W > 1)) throw DomainError("site half-width rho/k must exceed 1 after normalizing to action 2");

  // delta = (W - 1)/2^j, first admissible
  const double sig = to_double(sigma);
  bool found = false;
  for (int j = 1; j < 200; ++j) {
    const double d = std::ldexp(W - 1, -j);
    if (d >= 0.25) continue;
    const double rp = W - 1 + d / 4;
    if (rp * rp / (2 * d) >= sig) {
      R.delta = d;
      R.rho_prime = rp;
      found = true;
      break;
    }
  }
  if (!found) throw DomainError("no admissible delta found");
  const double delta = R.delta;
  for (int j = 0; j < k; ++j) R.centers.push_back(-R.rho0 + (2 * j + 1) * W);

  // unit-action model and the normalized input chart (action 2)
  const double d1 = unit_zigzag_delta();
  const double t_max = 2 * std::sqrt(d1);
  const double c2 = std::sqrt(2.0);
  const Box3 cube2 = contact_scale(chart.cube, R.scale);

  auto height = [&](double q) -> std::array<double, 2> {
    for (int j = 0; j < k; ++j) {
      const double r = q - R.centers[j];
      if (std::abs(r) <= W) {
        auto s = detail::site_profile(std::abs(r), W, delta);
        return {s[0], r >= 0 ? s[1] : -s[1]};
      }
    }
    return {1, 0};
  };

  // Omega: for each q the zig-zag of action 2h(q) = phi_{sqrt(h)}(Z_2)
  const double q_ext = R.rho0 + W / 4;
  R.omega.model = ContactModel::standard(2);
  R.omega.shape = {opt.grid_t, opt.grid_q};
  auto ts = linspace(-t_max, t_max, opt.grid_t);
  // q samples avoid the site centers and boundaries by a half-step offset
  std::vector<double> qs;
  for (std::size_t i = 0; i < opt.grid_q; ++i)
    qs.push_back(-q_ext + (2 * q_ext) * (i + 0.5) / static_cast<double>(opt.grid_q));
  R.omega_q = qs;
  R.omega.params = ts;
  R.omega.params.insert(R.omega.params.end(), qs.begin(), qs.end());
  R.bound = (1 - delta) / R.rho0;
  R.fronts_inside = true;
  for (double t : ts) {
    const auto v = model_zigzag(d1, t);
    const double X2 = c2 * v.x, Y2 = c2 * v.y, Z2 = 2 * v.z;
    for (double q : qs) {
      const auto h = height(q);
      const double c = std::sqrt(h[0]);
      const double p = h[1] * (Z2 - X2 * Y2 / 2);
      Point P{c * X2, c * Y2, h[0] * Z2, p, q};
      R.max_p = std::max(R.max_p, std::abs(p));
      R.omega.points.push_back(P);
      // samples over a site plateau lie in that site's chart box
      for (int j = 0; j < k; ++j) {
        if (std::abs(q - R.centers[j]) >= R.rho_prime) continue;
        const Box3 sub = contact_scale(cube2, std::sqrt(delta));
        if (!sub.contains(P, 1e-12) || std::abs(p) > 1e-12) R.fronts_inside = false;
      }
    }
  }
  R.bound_holds = R.max_p <= R.bound + 1e-6;
  R.p_below_rho = R.max_p < R.rho0;
  R.omega_residual = legendrian_residual(R.omega);

  // sub-charts, scaled back to the input coordinates
  const Box3 sub2 = contact_scale(cube2, std::sqrt(delta));
  R.contained = sub2.inside(cube2);
  R.disjoint = true;
  for (int j = 0; j + 1 < k; ++j)
    if (R.centers[j] + R.rho_prime >= R.centers[j + 1] - R.rho_prime) R.disjoint = false;
  for (int j = 0; j < k; ++j) {
    LooseChart n;
    n.cube = sub2;
    n.rho = exact(R.rho_prime);
    n.action = exact(2 * delta);
    n.zigzag = canonical_zigzag(2 * delta, opt.zigzag_samples);
    n.q_center = R.centers[j];
    if (std::abs(R.centers[j]) + R.rho_prime > R.rho0) R.contained = false;
    // back to the input scale; the size parameter is computed before rescaling
    LooseChart back = n;
    back.cube = contact_scale(n.cube, 1 / R.scale);
    back.zigzag = contact_scale(n.zigzag, 1 / R.scale);
    back.q_center = n.q_center / R.scale;
    back.rho = exact(R.rho_prime / R.scale);
    back.action = exact(2 * delta / (R.scale * R.scale));
    R.charts.push_back(back);
  }
  return R;
}

// Size parameter of an output chart, computed in normalized coordinates where it is exact.
inline Rational squeezed_size(const SqueezeResult& r) {
  return exact(r.rho_prime) * exact(r.rho_prime) / (2 * exact(r.delta));
}

// ---------------------------------------------------------------------------------------
// Non-squeezing: the doubled link

struct NonsqueezeReport {
  Rational slope;           // a / (2 rho), the |p| of the second component
  bool misses_chart = false;  // slope > rho
  double action1 = 0;       // action of component 1 from its Reeb chords
  double max_p2 = 0;        // measured |dz/dq| of component 2
  SampledLegendrian comp1, comp2;  // sheets over (t, q), R2n1Std(2)
};

inline NonsqueezeReport nonsqueezing_front(const Rational& rho, const Rational& a, std::size_t grid_t = 200,
                                           std::size_t grid_q = 200) {
  const auto cl = classify(rho, a);
  if (cl.cls != ChartClass::PseudoLoose)
    throw DomainError(std::string("nonsqueezing needs a pseudo-loose chart, got ") + to_string(cl.cls));
  NonsqueezeReport R;
  R.slope = a / (2 * rho);
  R.misses_chart = R.slope > rho;
  const double ad = to_double(a), rd = to_double(rho), s = to_double(R.slope);
  const double d1 = unit_zigzag_delta();
  const double c = std::sqrt(ad);
  const double t_max = 2 * std::sqrt(d1);
  auto ts = linspace(-t_max, t_max, grid_t);
  std::vector<double> qs;
  for (std::size_t i = 0; i < grid_q; ++i) qs.push_back(-rd + 2 * rd * (i + 0.5) / static_cast<double>(grid_q));
  for (auto* comp : {&R.comp1, &R.comp2}) {
    comp->model = ContactModel::standard(2);
    comp->shape = {grid_t, grid_q};
    comp->params = ts;
    comp->params.insert(comp->params.end(), qs.begin(), qs.end());
  }
  for (double t : ts) {
    const auto v = model_zigzag(d1, t);
    for (double q : qs) {
      R.comp1.points.push_back({c * v.x, c * v.y, ad * v.z, 0.0, q});
      const double p = q > 0 ? s : -s;
      R.comp2.points.push_back({c * v.x, c * v.y, ad * v.z + s * std::abs(q), p, q});
      R.max_p2 = std::max(R.max_p2, std::abs(p));
    }
  }
  auto ch = reeb_chords(canonical_zigzag(ad, 4000));
  R.action1 = ch.action.value_or(0);
  return R;
}

}  // namespace legfront

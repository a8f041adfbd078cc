#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace legfront {

// Quintic smoothstep 10u^3 - 15u^4 + 6u^5 and its derivatives on [0, 1].
inline double smooth5(double u) { return u * u * u * (10 + u * (-15 + 6 * u)); }
inline double smooth5_d(double u) { return 30 * u * u * (1 - u) * (1 - u); }
inline double smooth5_dd(double u) { return 60 * u * (1 - u) * (1 - 2 * u); }
// Antiderivative of smooth5 with value 0 at 0 (equals 1/2 at 1).
inline double smooth5_int(double u) { return u * u * u * u * (2.5 + u * (-3 + u)); }

inline double clamp01(double u) { return std::min(1.0, std::max(0.0, u)); }

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i)
    v[i] = (i + 1 == n) ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

// Fixed-width significant-digit formatting used by all text emitters.
inline std::string fmt_sig(double v, int digits = 9) {
  if (v == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline int sgn(double v) { return (v > 0) - (v < 0); }

}  // namespace legfront

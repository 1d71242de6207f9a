#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace arclp {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double min_element(const Vec& a) {
  double m = a.empty() ? 0.0 : a[0];
  for (double v : a) m = std::min(m, v);
  return m;
}

// out = a + t*b
inline Vec axpy(const Vec& a, double t, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * b[i];
  return out;
}

inline Vec hadamard(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

inline Vec constant_vec(std::size_t n, double value) { return Vec(n, value); }

}  // namespace arclp

// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace arcforge {

using Vec = std::vector<double>;

// Dense row-major matrix. Everything in this project is small (d <= 16),
// so no sparse or expression-template machinery.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

inline Vec matvec(const Mat& m, const Vec& x) {
  if (x.size() != m.cols) throw std::invalid_argument("matvec: dimension mismatch");
  Vec y(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

inline double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm(const Vec& x) { return std::sqrt(dot(x, x)); }

inline double dist(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("dist: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// Euclidean distance from q to the closed segment [s0, s1].
inline double point_segment_dist(const Vec& q, const Vec& s0, const Vec& s1) {
  if (q.size() != s0.size() || s0.size() != s1.size())
    throw std::invalid_argument("point_segment_dist: dimension mismatch");
  Vec d(s0.size()), w(s0.size());
  double dd = 0.0, wd = 0.0;
  for (std::size_t i = 0; i < s0.size(); ++i) {
    d[i] = s1[i] - s0[i];
    w[i] = q[i] - s0[i];
    dd += d[i] * d[i];
    wd += w[i] * d[i];
  }
  if (dd == 0.0) throw std::invalid_argument("point_segment_dist: degenerate segment");
  double t = wd / dd;
  if (t < 0.0) t = 0.0;
  if (t > 1.0) t = 1.0;
  double s = 0.0;
  for (std::size_t i = 0; i < s0.size(); ++i) {
    const double r = w[i] - t * d[i];
    s += r * r;
  }
  return std::sqrt(s);
}

inline bool lex_less(const Vec& x, const Vec& y) {
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] < y[i]) return true;
    if (x[i] > y[i]) return false;
  }
  return x.size() < y.size();
}

// Spectral norm by power iteration on W^T W; accurate enough for the
// Lipschitz-constant checks this project needs.
inline double op_norm(const Mat& m, int iters = 200) {
  if (m.rows == 0 || m.cols == 0) return 0.0;
  Vec v(m.cols, 1.0 / std::sqrt(static_cast<double>(m.cols)));
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    Vec u = matvec(m, v);
    // W^T u
    Vec w(m.cols, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j) w[j] += m(i, j) * u[i];
    const double n = norm(w);
    if (n == 0.0) return 0.0;
    for (auto& c : w) c /= n;
    lambda = n;
    v = std::move(w);
  }
  return std::sqrt(lambda);
}

}  // namespace arcforge

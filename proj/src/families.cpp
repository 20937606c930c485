// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0

#include "arcforge/families.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <stdexcept>
#include <utility>

namespace arcforge {

DiracParams::DiracParams(std::vector<Vec> locs, std::vector<double> mix)
    : locations(std::move(locs)), mixture(std::move(mix)) {
  if (locations.empty()) throw std::invalid_argument("DiracParams: needs at least one location");
  if (locations.size() != mixture.size())
    throw std::invalid_argument("DiracParams: locations/mixture length mismatch");
  const std::size_t d = locations.front().size();
  for (const auto& a : locations)
    if (a.size() != d) throw std::invalid_argument("DiracParams: inconsistent location dimensions");
  double sum = 0.0;
  for (double c : mixture) {
    if (c < -1e-12 || c > 1.0 + 1e-12)
      throw std::invalid_argument("DiracParams: mixture coefficient outside [0, 1]");
    sum += c;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("DiracParams: mixture coefficients must sum to one");
}

DiscreteMeasure dirac_family(const DiracParams& params) {
  return DiscreteMeasure(params.locations, params.mixture);
}

DiracParams dirac_pushforward_params(const DiracParams& params, const Mat& W, const Vec& b) {
  if (W.rows != params.dim() || W.cols != params.dim() || b.size() != params.dim())
    throw std::invalid_argument("dirac_pushforward_params: dimension mismatch");
  const ReluLayer layer(W, b);
  std::vector<Vec> mapped;
  mapped.reserve(params.locations.size());
  for (const auto& a : params.locations) mapped.push_back(eval(layer, a));
  return DiracParams(std::move(mapped), params.mixture);
}

namespace {

// Quadrant maps of the planar curve; cell k receives the rescaled sub-curve.
Vec hilbert_cell(int digit, const Vec& p) {
  switch (digit) {
    case 0: return {0.5 * p[1], 0.5 * p[0]};
    case 1: return {0.5 * p[0], 0.5 * p[1] + 0.5};
    case 2: return {0.5 * p[0] + 0.5, 0.5 * p[1] + 0.5};
    default: return {1.0 - 0.5 * p[1], 0.5 - 0.5 * p[0]};
  }
}

Vec hilbert_rec(double t, int depth) {
  // Exact endpoint anchors; dyadic parameters reduce to these in finitely
  // many steps, which makes the evaluation exact there.
  if (t == 0.0) return {0.0, 0.0};
  if (t == 1.0) return {1.0, 0.0};
  if (depth == 0) return {0.0, 0.0};  // cell anchor for the truncated tail
  double scaled = 4.0 * t;
  int digit = static_cast<int>(scaled);
  if (digit > 3) digit = 3;
  return hilbert_cell(digit, hilbert_rec(scaled - digit, depth - 1));
}

}  // namespace

Vec hilbert_g2(double t, int depth) {
  if (t < 0.0 || t > 1.0) throw std::invalid_argument("hilbert_g2: parameter outside [0, 1]");
  if (depth < 1) throw std::invalid_argument("hilbert_g2: depth must be positive");
  return hilbert_rec(t, depth);
}

Vec hilbert_gn(double t, std::size_t n, int depth) {
  if (n < 2) throw std::invalid_argument("hilbert_gn: dimension must be at least two");
  Vec p = hilbert_g2(t, depth);
  while (p.size() < n) {
    const Vec tail = hilbert_g2(p.back(), depth);
    p.back() = tail[0];
    p.push_back(tail[1]);
  }
  return p;
}

std::vector<double> gamma_curve(double t, int depth) {
  if (t < 2.0) return {};
  const std::size_t n = static_cast<std::size_t>(std::floor(t));
  const double s = t - std::floor(t);

  // Three-piece sweep of [-n, n]^n: ramp out to the curve start, traverse the
  // scaled curve, ramp back to zero. Both endpoints are the zero sequence, so
  // the pieces glue continuously at integers.
  const double nd = static_cast<double>(n);
  Vec g;
  double factor = 0.0;
  if (s <= 0.25) {
    g = hilbert_gn(0.0, n, depth);
    factor = 4.0 * nd * s;
  } else if (s <= 0.75) {
    g = hilbert_gn(2.0 * s - 0.5, n, depth);
    factor = nd;
  } else {
    g = hilbert_gn(1.0, n, depth);
    factor = 4.0 * nd * (1.0 - s);
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) out[i] = factor * (2.0 * g[i] - 1.0);
  return out;
}

namespace {

// Closed walk from the all-zeros string of level k covering every edge of the
// complete bipartite graph between levels k and k+1, each edge walked forward
// and then back (depth-first double traversal).
std::vector<std::string> level_walk(std::size_t k) {
  std::vector<std::string> lower, upper;
  const auto strings_of_length = [](std::size_t len) {
    std::vector<std::string> out;
    out.reserve(std::size_t{1} << len);
    for (std::size_t v = 0; v < (std::size_t{1} << len); ++v) {
      std::string s(len, '0');
      for (std::size_t bit = 0; bit < len; ++bit)
        if (v & (std::size_t{1} << (len - 1 - bit))) s[bit] = '1';
      out.push_back(std::move(s));
    }
    return out;
  };
  lower = strings_of_length(k);
  upper = strings_of_length(k + 1);

  std::vector<std::vector<bool>> visited(lower.size(), std::vector<bool>(upper.size(), false));
  std::vector<std::string> walk;
  walk.push_back(lower[0]);

  // Iterative DFS over edges; (side, index) identifies the current vertex.
  struct Frame {
    bool on_lower;
    std::size_t idx;
    std::size_t next = 0;
  };
  std::vector<Frame> stack{{true, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const std::size_t fan = f.on_lower ? upper.size() : lower.size();
    bool descended = false;
    while (f.next < fan) {
      const std::size_t other = f.next++;
      const std::size_t li = f.on_lower ? f.idx : other;
      const std::size_t ui = f.on_lower ? other : f.idx;
      if (visited[li][ui]) continue;
      visited[li][ui] = true;
      walk.push_back(f.on_lower ? upper[other] : lower[other]);
      stack.push_back({!f.on_lower, other});
      descended = true;
      break;
    }
    if (!descended) {
      stack.pop_back();
      if (!stack.empty())
        walk.push_back(stack.back().on_lower ? lower[stack.back().idx] : upper[stack.back().idx]);
    }
  }
  return walk;
}

std::mutex walk_mutex;
std::vector<std::string> walk_cache;   // concatenated level walks
std::size_t walk_next_level = 0;

}  // namespace

std::vector<std::string> walk_prefix(std::size_t count) {
  std::lock_guard<std::mutex> lock(walk_mutex);
  while (walk_cache.size() < count) {
    const auto w = level_walk(walk_next_level++);
    walk_cache.insert(walk_cache.end(), w.begin(), w.end());
  }
  return {walk_cache.begin(), walk_cache.begin() + static_cast<std::ptrdiff_t>(count)};
}

std::string walk_vertex(std::size_t i) { return walk_prefix(i + 1)[i]; }

DiscreteMeasure string_measure(const std::string& z, const ReluNetwork& f0, const ReluNetwork& f1,
                               const DiscreteMeasure& mu) {
  DiscreteMeasure out = mu;
  for (char digit : z) {
    if (digit != '0' && digit != '1') throw std::invalid_argument("string_measure: non-binary digit");
    out = pushforward(out, digit == '0' ? f0 : f1);
  }
  return out;
}

DiscreteMeasure walk_measure(double t, const ReluNetwork& f0, const ReluNetwork& f1,
                             const DiscreteMeasure& mu) {
  if (t < 0.0) throw std::invalid_argument("walk_measure: parameter must be nonnegative");
  if (f0.dim() != mu.dim() || f1.dim() != mu.dim())
    throw std::invalid_argument("walk_measure: dimension mismatch");
  const std::size_t n = static_cast<std::size_t>(std::floor(t));
  const double eta = t - std::floor(t);
  const auto verts = walk_prefix(n + 2);
  const DiscreteMeasure lo = string_measure(verts[n], f0, f1, mu);
  if (eta == 0.0) return lo;
  const DiscreteMeasure hi = string_measure(verts[n + 1], f0, f1, mu);
  return mix(1.0 - eta, lo, eta, hi);
}

DiscreteMeasure single_function_measure(double t, const ReluNetwork& f,
                                        const DiscreteMeasure& mu0) {
  if (t < 0.0) throw std::invalid_argument("single_function_measure: parameter must be nonnegative");
  if (f.dim() != mu0.dim())
    throw std::invalid_argument("single_function_measure: dimension mismatch");
  const std::size_t n = static_cast<std::size_t>(std::floor(t));
  const double eta = t - std::floor(t);
  DiscreteMeasure lo = mu0;
  for (std::size_t i = 0; i < n; ++i) lo = pushforward(lo, f);
  if (eta == 0.0) return lo;
  const DiscreteMeasure hi = pushforward(lo, f);
  return mix(1.0 - eta, lo, eta, hi);
}

ReluNetwork decode_realisation(const std::vector<double>& seq, std::size_t d, double int_tol) {
  if (d == 0) throw std::invalid_argument("decode_realisation: dimension must be positive");
  if (seq.empty()) throw std::invalid_argument("decode_realisation: empty sequence");
  const double raw = seq.front();
  const double rounded = std::round(raw);
  if (rounded < 1.0 || std::abs(raw - rounded) > int_tol)
    throw std::invalid_argument("decode_realisation: leading component is not a positive integer");
  const std::size_t L = static_cast<std::size_t>(rounded);
  const std::size_t per_layer = d * d + d;
  if (seq.size() < 1 + L * per_layer)
    throw std::invalid_argument("decode_realisation: sequence too short for the declared depth");

  std::vector<ReluLayer> layers;
  layers.reserve(L);
  std::size_t pos = 1;
  for (std::size_t l = 0; l < L; ++l) {
    Mat W(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) W(i, j) = seq[pos++];
    Vec b(d);
    for (std::size_t i = 0; i < d; ++i) b[i] = seq[pos++];
    layers.emplace_back(std::move(W), std::move(b));
  }
  return ReluNetwork(std::move(layers));
}

}  // namespace arcforge

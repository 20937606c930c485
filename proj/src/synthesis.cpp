// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0

#include "arcforge/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <utility>

namespace arcforge {

namespace {

void require_strictly_increasing_from_zero(const std::vector<double>& v, const char* what) {
  if (v.size() < 2) throw std::invalid_argument(std::string(what) + ": needs at least two entries");
  if (v.front() != 0.0) throw std::invalid_argument(std::string(what) + ": must start at zero");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) throw std::invalid_argument(std::string(what) + ": must be strictly increasing");
}

}  // namespace

PartitionPlan::PartitionPlan(std::vector<double> b, std::vector<double> a)
    : breakpoints(std::move(b)), knots(std::move(a)) {
  require_strictly_increasing_from_zero(breakpoints, "PartitionPlan breakpoints");
  require_strictly_increasing_from_zero(knots, "PartitionPlan knots");
  if (breakpoints.size() != knots.size())
    throw std::invalid_argument("PartitionPlan: breakpoints and knots must have equal length");
}

AxisProjection project_to_axis(const DiscreteMeasure& mu, std::size_t m) {
  if (m < 1) throw std::invalid_argument("project_to_axis: order must be positive");
  const std::size_t d = mu.dim();

  std::size_t best_axis = 0;
  int best_sign = 0;
  std::size_t best_count = 0;
  for (std::size_t j = 0; j < d; ++j) {
    for (int sign : {+1, -1}) {
      std::set<double> values;
      for (const auto& p : mu.points()) {
        const double v = sign * p[j];
        if (v > 0.0) values.insert(v);
      }
      if (values.size() > best_count) {
        best_count = values.size();
        best_axis = j;
        best_sign = sign;
      }
    }
  }
  if (best_count < m)
    throw NoCoordinateError("project_to_axis: no signed coordinate keeps enough distinct positive values");

  Mat W(d, d);
  W(0, best_axis) = static_cast<double>(best_sign);
  return AxisProjection{ReluLayer(std::move(W), Vec(d, 0.0)), best_axis, best_sign};
}

ReluNetwork clip_network(double b_max) {
  if (!(b_max > 0.0)) throw std::invalid_argument("clip_network: bound must be positive");
  Mat neg = Mat(2, 2);
  neg(0, 0) = -1.0;
  neg(1, 1) = -1.0;
  const Vec bias{b_max, 0.0};
  std::vector<ReluLayer> layers;
  layers.emplace_back(neg, bias);
  layers.emplace_back(neg, bias);
  return ReluNetwork(std::move(layers));
}

std::vector<double> partition_support(const std::vector<double>& sorted_values, std::size_t m) {
  if (m < 1) throw std::invalid_argument("partition_support: order must be positive");
  std::vector<double> s;
  for (double v : sorted_values) {
    if (!(v > 0.0)) continue;
    if (!s.empty() && v == s.back()) continue;
    if (!s.empty() && v < s.back())
      throw std::invalid_argument("partition_support: values must be sorted");
    if (s.size() < m) s.push_back(v);
  }
  if (s.size() < m)
    throw std::invalid_argument("partition_support: fewer distinct positive values than intervals");

  std::vector<double> b(m + 1);
  b[0] = 0.0;
  for (std::size_t j = 1; j < m; ++j) b[j] = 0.5 * (s[j - 1] + s[j]);
  b[m] = s[m - 1] + 1.0;
  return b;
}

ReluNetwork resize_network(const PartitionPlan& plan) {
  const std::size_t m = plan.order();
  if (m < 2) throw std::invalid_argument("resize_network: needs at least two intervals");
  const auto& a = plan.knots;

  // Track the images of the breakpoints through the scalar maps
  // f_{j+1}(x) = x + w_{j+1} * relu(x - a_j); each step pins one more knot.
  std::vector<double> image = plan.breakpoints;
  std::vector<double> w(m + 1, 0.0);
  for (std::size_t j = 0; j + 1 <= m; ++j) {
    const double denom = image[j + 1] - a[j];
    w[j + 1] = (a[j + 1] - image[j + 1]) / denom;
    for (std::size_t i = 0; i <= m; ++i)
      image[i] += w[j + 1] * std::max(0.0, image[i] - a[j]);
  }

  std::vector<ReluLayer> layers;
  layers.reserve(m + 1);
  {
    Mat W0(2, 2);
    W0(0, 0) = 1.0;
    W0(1, 0) = 1.0;
    layers.emplace_back(std::move(W0), Vec{0.0, 0.0});
  }
  for (std::size_t j = 1; j + 1 <= m; ++j) {
    Mat Wj(2, 2);
    Wj(0, 0) = 1.0;
    Wj(0, 1) = w[j];
    Wj(1, 0) = 1.0;
    Wj(1, 1) = w[j];
    layers.emplace_back(std::move(Wj), Vec{0.0, -a[j]});
  }
  {
    Mat Wm(2, 2);
    Wm(0, 0) = 1.0;
    Wm(0, 1) = w[m];
    layers.emplace_back(std::move(Wm), Vec{0.0, 0.0});
  }
  return ReluNetwork(std::move(layers));
}

ReluNetwork bend_network(const std::vector<double>& knots, std::size_t m) {
  if (m < 2) throw std::invalid_argument("bend_network: needs at least two segments");
  if (knots.size() != m + 1) throw std::invalid_argument("bend_network: expected m+1 knots");
  require_strictly_increasing_from_zero(knots, "bend_network knots");

  const double phi = std::numbers::pi / (2.0 * static_cast<double>(m));
  std::vector<ReluLayer> layers;
  layers.reserve(m + 1);
  layers.emplace_back(rotation(std::numbers::pi / 2.0), Vec{0.0, 0.0});
  // The j-th bend step pulls the still-straight part (scaled j-1 times by
  // cos(phi)) back onto the vertical axis: its shift must cancel the rotated
  // first coordinate of the pivot knot a_{m-j}.
  for (std::size_t j = 1; j <= m; ++j) {
    const double shift = std::sin(phi) * std::pow(std::cos(phi), static_cast<double>(j) - 1.0) *
                         knots[m - j];
    layers.emplace_back(rotation(-phi), Vec{-shift, 0.0});
  }
  return ReluNetwork(std::move(layers));
}

SynthesisResult synthesize_arc_transport(const DiscreteMeasure& mu, const StandardArc& target) {
  if (mu.dim() < 2)
    throw std::invalid_argument("synthesize_arc_transport: source dimension must be >= 2");
  const std::size_t m = target.segments();
  const std::size_t d = mu.dim();
  const double phi = target.turn_angle();

  // Knots whose post-bend segment lengths reproduce the target scales: the
  // j-th bend step shrinks earlier segments by cos(phi), so pre-stretch by
  // the matching power.
  std::vector<double> a(m + 1, 0.0);
  for (std::size_t j = 1; j <= m; ++j)
    a[j] = a[j - 1] + target.scales()[j - 1] *
                          std::pow(std::cos(phi), static_cast<double>(j) - static_cast<double>(m));

  AxisProjection projection = project_to_axis(mu, m);
  const DiscreteMeasure projected = pushforward(mu, projection.layer);

  std::vector<double> values;
  values.reserve(projected.size());
  for (const auto& p : projected.points()) values.push_back(p[0]);
  std::sort(values.begin(), values.end());
  std::vector<double> b = partition_support(values, m);

  // Guaranteed per-segment mass: the smallest mass of an open source interval.
  double delta = 1.0;
  for (std::size_t j = 1; j <= m; ++j) {
    double interval_mass = 0.0;
    for (std::size_t i = 0; i < projected.size(); ++i) {
      const double x = projected.points()[i][0];
      if (x > b[j - 1] && x < b[j]) interval_mass += projected.weights()[i];
    }
    delta = std::min(delta, interval_mass);
  }

  PartitionPlan plan(b, a);
  ReluNetwork planar = compose(compose(clip_network(b.back()), resize_network(plan)),
                               bend_network(a, m));

  std::vector<ReluLayer> layers;
  layers.push_back(projection.layer);
  const ReluNetwork embedded = (d == 2) ? planar : embed_2d_to_d(planar, d);
  layers.insert(layers.end(), embedded.layers().begin(), embedded.layers().end());

  return SynthesisResult{ReluNetwork(std::move(layers)), delta, std::move(projection),
                         std::move(plan)};
}

}  // namespace arcforge

// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "arcforge/arcs.hpp"
#include "arcforge/measure.hpp"
#include "arcforge/relu_net.hpp"

namespace arcforge {

/// No signed coordinate projection keeps enough distinct positive values to
/// carve out the requested number of intervals.
struct NoCoordinateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Interval breakpoints 0 = b_0 < ... < b_m on the source axis together with
/// the target knots 0 = a_0 < ... < a_m they are mapped to.
struct PartitionPlan {
  std::vector<double> breakpoints;
  std::vector<double> knots;

  PartitionPlan(std::vector<double> b, std::vector<double> a);

  std::size_t order() const { return breakpoints.size() - 1; }
};

/// Projection layer W = [sigma*e_axis, 0, ..., 0]^T, b = 0: the image lies in
/// the nonnegative part of span{e1}.
struct AxisProjection {
  ReluLayer layer;
  std::size_t axis;  // 0-based coordinate index
  int sign;          // +1 or -1
};

/// Choose the signed coordinate whose projection keeps the most distinct
/// positive values over the support; at least m are required.
AxisProjection project_to_axis(const DiscreteMeasure& mu, std::size_t m);

/// Two planar layers computing x1 -> min(max(x1, 0), b_max), x2 -> 0.
ReluNetwork clip_network(double b_max);

/// Breakpoints from the first m distinct positive values s_1 < ... < s_m:
/// b_0 = 0, b_j the midpoint of s_j and s_{j+1}, b_m = s_m + 1. Every open
/// interval (b_{j-1}, b_j) contains s_j.
std::vector<double> partition_support(const std::vector<double>& sorted_values, std::size_t m);

/// Piecewise-linear resize F with F(b_i, 0) = (a_i, 0) for every i, built
/// from m+1 planar layers. Restricted to the nonnegative axis it is strictly
/// increasing with breakpoints only at the b_i.
ReluNetwork resize_network(const PartitionPlan& plan);

/// Bending network G mapping [a_0, a_m] x {0} onto the arc with scales
/// r_i = cos(phi)^(m-i) * (a_i - a_{i-1}); G(a_i, 0) is the i-th vertex.
ReluNetwork bend_network(const std::vector<double>& knots, std::size_t m);

struct SynthesisResult {
  ReluNetwork net;   // full pipeline in the ambient dimension of the source
  double delta;      // guaranteed per-segment mass of the transported measure
  AxisProjection projection;
  PartitionPlan plan;
};

/// End-to-end transport: project the source onto an axis, clip, resize the
/// intervals to the knots of the target arc, and bend. The pushforward of mu
/// under the returned network is delta-distributed on the target.
SynthesisResult synthesize_arc_transport(const DiscreteMeasure& mu, const StandardArc& target);

}  // namespace arcforge

// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "arcforge/linalg.hpp"
#include "arcforge/measure.hpp"
#include "arcforge/relu_net.hpp"

namespace arcforge {

/// Parameters of the Dirac-mixture family: N locations in R^d plus mixture
/// coefficients on the simplex.
struct DiracParams {
  std::vector<Vec> locations;
  std::vector<double> mixture;

  DiracParams(std::vector<Vec> locations, std::vector<double> mixture);

  std::size_t dim() const { return locations.front().size(); }
};

/// The mixture sum c_i * dirac(a_i), with coinciding locations merged.
DiscreteMeasure dirac_family(const DiracParams& params);

/// Closed-form parameter update under a layer: locations map through
/// relu(W a + b), mixture coefficients are unchanged. Commutes exactly with
/// dirac_family and pushforward.
DiracParams dirac_pushforward_params(const DiracParams& params, const Mat& W, const Vec& b);

/// Hilbert curve [0,1] -> [0,1]^2 evaluated by quadrant recursion to the
/// given depth. Exact at parameters with a terminating base-4 expansion of at
/// most `depth` digits; elsewhere within sqrt(2) * 2^-depth of the limit
/// curve. Anchored at g(0) = (0,0), g(1) = (1,0).
Vec hilbert_g2(double t, int depth);

/// Space-filling curve [0,1] -> [0,1]^n obtained by repeatedly expanding the
/// last coordinate through the planar curve.
Vec hilbert_gn(double t, std::size_t n, int depth);

/// Curve through the eventually-zero sequences: zero below t = 2, and on
/// [n, n+1] a ramp / scaled-curve / ramp sweep of the cube [-n, n]^n written
/// into the first n coordinates. Returns floor(t) components for t >= 2
/// (possibly all zero) and an empty vector below 2.
std::vector<double> gamma_curve(double t, int depth);

/// Vertex labels of the infinite walk through the level graphs of binary
/// strings: the walk concatenates closed double-traversal walks, one per
/// complete bipartite graph between consecutive levels, each starting and
/// ending at the all-zeros string of its level.
std::string walk_vertex(std::size_t i);

/// The first `count` vertices of the walk (memoised; safe for concurrent
/// callers).
std::vector<std::string> walk_prefix(std::size_t count);

/// Iterated pushforward along a binary string: digit 0 applies f0, digit 1
/// applies f1, first digit first.
DiscreteMeasure string_measure(const std::string& z, const ReluNetwork& f0, const ReluNetwork& f1,
                               const DiscreteMeasure& mu);

/// Walk-family member: linear interpolation between the measures at the
/// walk vertices floor(t) and floor(t)+1.
DiscreteMeasure walk_measure(double t, const ReluNetwork& f0, const ReluNetwork& f1,
                             const DiscreteMeasure& mu);

/// Single-function family: interpolation between consecutive iterated
/// pushforwards, so that pushing by f shifts the parameter by one.
DiscreteMeasure single_function_measure(double t, const ReluNetwork& f,
                                        const DiscreteMeasure& mu0);

/// Decode an eventually-zero sequence as network parameters
/// (L, W_1, b_1, ..., W_L, b_L) for dimension d. The leading component must
/// be within int_tol of a positive integer and the sequence must carry
/// L*(d^2+d) values after it.
ReluNetwork decode_realisation(const std::vector<double>& seq, std::size_t d,
                               double int_tol = 1e-6);

}  // namespace arcforge

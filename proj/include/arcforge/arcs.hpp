// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "arcforge/linalg.hpp"
#include "arcforge/measure.hpp"

namespace arcforge {

/// No standard arc of the requested order supports the measure.
struct NoArcError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// More than one standard arc is compatible with the measure at the given
/// tolerance (only possible when the per-segment mass bound is vacuous).
struct AmbiguousArcError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Standard polygonal arc with m segments: starts at the origin, turns by a
/// fixed angle pi/(2m) at every vertex, and has a unit last segment. The arc
/// is fully determined by its segment lengths (r_1, ..., r_{m-1}, 1).
class StandardArc {
 public:
  StandardArc(std::size_t m, std::vector<double> scales);

  std::size_t segments() const { return m_; }
  const std::vector<double>& scales() const { return scales_; }

  /// Turning angle pi/(2m).
  double turn_angle() const;

  /// The m+1 vertices in the plane; v_0 is the origin and
  /// v_i = v_{i-1} + r_i * (sin(i*phi), cos(i*phi)).
  std::vector<Vec> vertices() const;

 private:
  std::size_t m_;
  std::vector<double> scales_;
};

/// Max Euclidean distance between corresponding vertices. Arcs must have the
/// same number of segments.
double arc_metric(const StandardArc& a1, const StandardArc& a2);

/// The scale vector (r_1, ..., r_{m-1}, 1); inverse of the constructor.
std::vector<double> scale_map(const StandardArc& arc);

/// Distance from a point in R^d (d >= 2) to the arc embedded in span{e1,e2};
/// out-of-plane components count towards the distance.
double distance_to_arc(const Vec& point, const StandardArc& arc);

/// True iff every atom lies within tol of the arc and every segment carries
/// mass at least delta (atoms within tol of a segment count towards it).
bool is_delta_distributed(const DiscreteMeasure& mu, const StandardArc& arc, double delta,
                          double tol);

/// Recover the unique standard m-arc supporting mu.
///
/// Segment directions are fixed by m, so each segment lies on a line with a
/// known normal; the line offsets are read off as support maxima of the atom
/// cloud and the vertices are line intersections. The candidate is then
/// verified against the membership and mass conditions. With delta > 0 the
/// mass condition pins every line to within tol, which makes the candidate
/// unique; with delta == 0 an unpinned segment raises AmbiguousArcError.
StandardArc recover_arc(const DiscreteMeasure& mu, std::size_t m, double delta,
                        double tol = 1e-9);

}  // namespace arcforge

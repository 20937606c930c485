// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0

#include "arcforge/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace arcforge {

StandardArc::StandardArc(std::size_t m, std::vector<double> scales)
    : m_(m), scales_(std::move(scales)) {
  if (m_ < 2) throw std::invalid_argument("StandardArc: needs at least two segments");
  if (scales_.size() != m_) throw std::invalid_argument("StandardArc: scale count must equal m");
  for (double r : scales_)
    if (!(r > 0.0)) throw std::invalid_argument("StandardArc: scales must be positive");
  if (scales_.back() != 1.0) throw std::invalid_argument("StandardArc: last scale must be exactly one");
}

double StandardArc::turn_angle() const { return std::numbers::pi / (2.0 * static_cast<double>(m_)); }

std::vector<Vec> StandardArc::vertices() const {
  const double phi = turn_angle();
  std::vector<Vec> v;
  v.reserve(m_ + 1);
  v.push_back({0.0, 0.0});
  for (std::size_t i = 1; i <= m_; ++i) {
    const double angle = static_cast<double>(i) * phi;
    v.push_back({v.back()[0] + scales_[i - 1] * std::sin(angle),
                 v.back()[1] + scales_[i - 1] * std::cos(angle)});
  }
  return v;
}

double arc_metric(const StandardArc& a1, const StandardArc& a2) {
  if (a1.segments() != a2.segments())
    throw std::invalid_argument("arc_metric: arcs must have the same number of segments");
  const auto v1 = a1.vertices();
  const auto v2 = a2.vertices();
  double d = 0.0;
  for (std::size_t i = 0; i < v1.size(); ++i) d = std::max(d, dist(v1[i], v2[i]));
  return d;
}

std::vector<double> scale_map(const StandardArc& arc) { return arc.scales(); }

namespace {

// Planar part (first two coordinates) of a possibly higher-dimensional point,
// plus the squared out-of-plane residual.
std::pair<Vec, double> split_planar(const Vec& p) {
  Vec q{p[0], p.size() > 1 ? p[1] : 0.0};
  double off2 = 0.0;
  for (std::size_t k = 2; k < p.size(); ++k) off2 += p[k] * p[k];
  return {std::move(q), off2};
}

double dist_to_chain_2d(const Vec& q, const std::vector<Vec>& vertices) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    best = std::min(best, point_segment_dist(q, vertices[i], vertices[i + 1]));
  return best;
}

}  // namespace

double distance_to_arc(const Vec& point, const StandardArc& arc) {
  if (point.size() < 2) throw std::invalid_argument("distance_to_arc: point must have dimension >= 2");
  const auto [q, off2] = split_planar(point);
  const double planar = dist_to_chain_2d(q, arc.vertices());
  return std::sqrt(planar * planar + off2);
}

bool is_delta_distributed(const DiscreteMeasure& mu, const StandardArc& arc, double delta,
                          double tol) {
  if (mu.dim() < 2) return false;
  for (const auto& p : mu.points())
    if (distance_to_arc(p, arc) > tol) return false;
  const auto v = arc.vertices();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    Vec s0(mu.dim(), 0.0), s1(mu.dim(), 0.0);
    s0[0] = v[i][0];
    s0[1] = v[i][1];
    s1[0] = v[i + 1][0];
    s1[1] = v[i + 1][1];
    if (segment_mass(mu, s0, s1, tol) < delta) return false;
  }
  return true;
}

StandardArc recover_arc(const DiscreteMeasure& mu, std::size_t m, double delta, double tol) {
  if (m < 2) throw std::invalid_argument("recover_arc: needs at least two segments");
  if (mu.dim() < 2) throw NoArcError("recover_arc: measure dimension below two");
  if (delta < 0.0) throw std::invalid_argument("recover_arc: delta must be nonnegative");

  // Arcs live in span{e1,e2}; atoms far out of plane cannot lie on any arc.
  std::vector<Vec> planar;
  planar.reserve(mu.size());
  for (const auto& p : mu.points()) {
    const auto [q, off2] = split_planar(p);
    if (off2 > tol * tol) throw NoArcError("recover_arc: atom outside the e1-e2 plane");
    planar.push_back(q);
  }

  const double phi = std::numbers::pi / (2.0 * static_cast<double>(m));

  // Each segment i lies on a line with outward normal n_i; the whole chain
  // sits weakly below that line, so the line offset is the support maximum
  // of n_i . q over the atoms.
  std::vector<Vec> normals(m + 1);       // 1-based
  std::vector<double> offsets(m + 1, 0.0);
  for (std::size_t i = 1; i <= m; ++i) {
    const double angle = static_cast<double>(i) * phi;
    normals[i] = {-std::cos(angle), std::sin(angle)};
    double c = -std::numeric_limits<double>::infinity();
    for (const auto& q : planar) c = std::max(c, dot(normals[i], q));
    offsets[i] = c;
  }

  // Vertices: v_0 is the origin, v_i the intersection of lines i and i+1 for
  // interior vertices, and v_m is forced by the unit last scale.
  std::vector<Vec> verts(m + 1);
  verts[0] = {0.0, 0.0};
  for (std::size_t i = 1; i + 1 <= m; ++i) {
    const Vec& n1 = normals[i];
    const Vec& n2 = normals[i + 1];
    const double det = n1[0] * n2[1] - n1[1] * n2[0];  // = -sin(phi), never zero
    verts[i] = {(offsets[i] * n2[1] - offsets[i + 1] * n1[1]) / det,
                (n1[0] * offsets[i + 1] - n2[0] * offsets[i]) / det};
  }
  const double last_angle = static_cast<double>(m) * phi;
  verts[m] = {verts[m - 1][0] + std::sin(last_angle), verts[m - 1][1] + std::cos(last_angle)};

  std::vector<double> scales(m, 1.0);
  bool degenerate = false;
  for (std::size_t i = 1; i + 1 <= m; ++i) {
    const double angle = static_cast<double>(i) * phi;
    const Vec u{std::sin(angle), std::cos(angle)};
    const Vec diff{verts[i][0] - verts[i - 1][0], verts[i][1] - verts[i - 1][1]};
    scales[i - 1] = dot(u, diff);
    if (!(scales[i - 1] > 0.0)) degenerate = true;
  }

  if (degenerate) {
    if (delta == 0.0) {
      // With a vacuous mass bound a point cloud at the origin sits on every
      // arc, so the problem is genuinely underdetermined.
      bool all_at_origin = true;
      for (const auto& q : planar)
        if (norm(q) > tol) all_at_origin = false;
      if (all_at_origin) throw AmbiguousArcError("recover_arc: every arc supports the measure");
    }
    throw NoArcError("recover_arc: support does not span an arc of this order");
  }

  StandardArc candidate(m, scales);
  if (!is_delta_distributed(mu, candidate, delta, tol))
    throw NoArcError("recover_arc: no arc satisfies the membership and mass conditions");

  if (delta == 0.0) {
    // Without the mass bound a segment whose only nearby atoms sit at its
    // start vertex leaves the arc free to grow through that segment, so the
    // candidate is not unique.
    const auto v = candidate.vertices();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      bool pinned = false;
      for (const auto& q : planar)
        if (point_segment_dist(q, v[i], v[i + 1]) <= tol && dist(q, v[i]) > 2.0 * tol) {
          pinned = true;
          break;
        }
      if (!pinned)
        throw AmbiguousArcError("recover_arc: segment not pinned by any atom (delta is zero)");
    }
  }

  return candidate;
}

}  // namespace arcforge

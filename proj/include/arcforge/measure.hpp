// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "arcforge/linalg.hpp"
#include "arcforge/relu_net.hpp"

namespace arcforge {

/// Finite-support probability measure: pairwise distinct atoms with positive
/// weights summing to one.
///
/// Construction canonicalises the atom list: atoms are sorted by point
/// (lexicographic, then weight), points within kMergeTol of each other are
/// merged with their weights added, and zero-weight atoms are dropped. The
/// canonical form makes construction independent of input order, so two
/// routes that produce the same atom multiset produce bit-identical measures.
class DiscreteMeasure {
 public:
  /// Atoms closer than this (Euclidean) are considered the same point.
  static constexpr double kMergeTol = 1e-12;
  /// Allowed deviation of the total mass from one.
  static constexpr double kMassTol = 1e-12;

  DiscreteMeasure(std::vector<Vec> points, std::vector<double> weights);

  static DiscreteMeasure dirac(Vec point) { return DiscreteMeasure({std::move(point)}, {1.0}); }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Vec>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  double total_mass() const;

 private:
  std::vector<Vec> points_;
  std::vector<double> weights_;
  std::size_t dim_;
};

/// Bitwise equality of the canonical atom lists.
bool same_atoms(const DiscreteMeasure& a, const DiscreteMeasure& b);

/// Convex combination wa*a + wb*b as an exact atom union (wa + wb must be 1
/// within the mass tolerance).
DiscreteMeasure mix(double wa, const DiscreteMeasure& a, double wb, const DiscreteMeasure& b);

/// Image measure sum_i w_i * dirac(f(x_i)), with colliding images merged.
/// The support of the result is exactly the image of the support.
DiscreteMeasure pushforward(const DiscreteMeasure& mu, const ReluNetwork& f);
DiscreteMeasure pushforward(const DiscreteMeasure& mu, const ReluLayer& f);

/// Prokhorov distance between finite-support measures, computed to within
/// tol by bisection over eps in [0, 1].
///
/// The feasibility test at a given eps checks, for each measure in turn,
/// mu(S) <= nu(S^eps) + eps over all subsets S of that measure's support
/// (S^eps the open eps-neighbourhood). Restricting to support subsets is
/// sufficient: a Borel set B has the same mu-mass as B intersected with
/// supp(mu), and shrinking B only shrinks B^eps.
///
/// Requires combined support size <= 20 (exponential enumeration budget);
/// use prokhorov_upper beyond that.
double prokhorov_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double tol = 1e-9);

/// Upper bound on the Prokhorov distance for arbitrary support sizes.
///
/// Builds a transport plan by greedily matching mass across pairs in order of
/// increasing distance, then returns the smallest eps such that the plan
/// moves at most eps mass farther than eps. Any coupling yields a valid
/// bound, so the result is always >= prokhorov_exact.
double prokhorov_upper(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Total weight of atoms within tol of the closed segment [seg_start, seg_end].
double segment_mass(const DiscreteMeasure& mu, const Vec& seg_start, const Vec& seg_end, double tol);

}  // namespace arcforge

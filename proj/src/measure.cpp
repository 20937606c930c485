// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0

#include "arcforge/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace arcforge {

namespace {

struct Atom {
  Vec point;
  double weight;
};

bool atom_less(const Atom& a, const Atom& b) {
  if (a.point != b.point) return lex_less(a.point, b.point);
  return a.weight < b.weight;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Vec> points, std::vector<double> weights) {
  if (points.size() != weights.size())
    throw std::invalid_argument("DiscreteMeasure: points/weights length mismatch");
  if (points.empty()) throw std::invalid_argument("DiscreteMeasure: needs at least one atom");
  dim_ = points.front().size();
  if (dim_ == 0) throw std::invalid_argument("DiscreteMeasure: zero-dimensional points");

  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim_) throw std::invalid_argument("DiscreteMeasure: inconsistent point dimensions");
    if (!(weights[i] >= 0.0)) throw std::invalid_argument("DiscreteMeasure: negative weight");
    if (weights[i] == 0.0) continue;  // zero-weight atoms are dropped
    atoms.push_back({std::move(points[i]), weights[i]});
  }
  if (atoms.empty()) throw std::invalid_argument("DiscreteMeasure: all atoms have zero weight");

  // Canonical order before merging keeps the merge order-independent.
  std::sort(atoms.begin(), atoms.end(), atom_less);

  points_.reserve(atoms.size());
  weights_.reserve(atoms.size());
  for (auto& atom : atoms) {
    if (!points_.empty() && dist(points_.back(), atom.point) <= kMergeTol) {
      weights_.back() += atom.weight;
    } else {
      points_.push_back(std::move(atom.point));
      weights_.push_back(atom.weight);
    }
  }

  const double mass = total_mass();
  if (std::abs(mass - 1.0) > kMassTol)
    throw std::invalid_argument("DiscreteMeasure: weights must sum to one");
}

double DiscreteMeasure::total_mass() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

bool same_atoms(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  return a.dim() == b.dim() && a.points() == b.points() && a.weights() == b.weights();
}

DiscreteMeasure mix(double wa, const DiscreteMeasure& a, double wb, const DiscreteMeasure& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("mix: dimension mismatch");
  if (wa < 0.0 || wb < 0.0 || std::abs(wa + wb - 1.0) > DiscreteMeasure::kMassTol)
    throw std::invalid_argument("mix: coefficients must be a convex combination");
  std::vector<Vec> points;
  std::vector<double> weights;
  points.reserve(a.size() + b.size());
  weights.reserve(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    points.push_back(a.points()[i]);
    weights.push_back(wa * a.weights()[i]);
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    points.push_back(b.points()[i]);
    weights.push_back(wb * b.weights()[i]);
  }
  return DiscreteMeasure(std::move(points), std::move(weights));
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const ReluNetwork& f) {
  if (f.dim() != mu.dim()) throw std::invalid_argument("pushforward: dimension mismatch");
  std::vector<Vec> points;
  points.reserve(mu.size());
  for (const auto& p : mu.points()) points.push_back(eval(f, p));
  return DiscreteMeasure(std::move(points), mu.weights());
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const ReluLayer& f) {
  return pushforward(mu, ReluNetwork(f));
}

namespace {

// Subset sums of the weight vector, indexed by bitmask.
std::vector<double> subset_sums(const std::vector<double>& weights) {
  const std::size_t n = weights.size();
  std::vector<double> sums(std::size_t{1} << n, 0.0);
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    const std::uint32_t low = s & (s - 1);
    const std::uint32_t bit = s ^ low;
    sums[s] = sums[low] + weights[static_cast<std::size_t>(std::countr_zero(bit))];
  }
  return sums;
}

// One direction of the Prokhorov feasibility test: max over subsets S of the
// row support of mass(S) - opposite_mass(S^eps) <= eps. Coverage masks say
// which row atoms lie within eps of each column atom.
bool direction_feasible(const std::vector<double>& subset_mass,
                        const std::vector<double>& col_weights,
                        const std::vector<std::vector<double>>& row_to_col_dist, double eps) {
  const std::size_t n = row_to_col_dist.size();
  const std::size_t m = col_weights.size();
  std::vector<std::uint32_t> cover(m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (row_to_col_dist[i][j] < eps) mask |= (1u << i);
    cover[j] = mask;
  }
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    double covered = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      if (cover[j] & s) covered += col_weights[j];
    if (subset_mass[s] - covered > eps) return false;
  }
  return true;
}

}  // namespace

double prokhorov_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double tol) {
  if (mu.dim() != nu.dim()) throw std::invalid_argument("prokhorov_exact: dimension mismatch");
  if (!(tol > 0.0)) throw std::invalid_argument("prokhorov_exact: tol must be positive");
  if (mu.size() + nu.size() > 20)
    throw std::invalid_argument("prokhorov_exact: support too large for exact mode, use prokhorov_upper");

  if (same_atoms(mu, nu)) return 0.0;

  std::vector<std::vector<double>> d_mu_nu(mu.size(), std::vector<double>(nu.size()));
  std::vector<std::vector<double>> d_nu_mu(nu.size(), std::vector<double>(mu.size()));
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j) {
      const double d = dist(mu.points()[i], nu.points()[j]);
      d_mu_nu[i][j] = d;
      d_nu_mu[j][i] = d;
    }

  const std::vector<double> mu_subset_mass = subset_sums(mu.weights());
  const std::vector<double> nu_subset_mass = subset_sums(nu.weights());
  const auto feasible = [&](double eps) {
    return direction_feasible(mu_subset_mass, nu.weights(), d_mu_nu, eps) &&
           direction_feasible(nu_subset_mass, mu.weights(), d_nu_mu, eps);
  };

  // d_P <= 1 always, so [0, 1] brackets the infimum.
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double prokhorov_upper(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.dim() != nu.dim()) throw std::invalid_argument("prokhorov_upper: dimension mismatch");
  if (same_atoms(mu, nu)) return 0.0;

  struct Pair {
    double d;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(mu.size() * nu.size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j)
      pairs.push_back({dist(mu.points()[i], nu.points()[j]), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  std::vector<double> supply = mu.weights();
  std::vector<double> demand = nu.weights();
  // Distinct transport distances with the mass moved at each.
  std::vector<std::pair<double, double>> levels;
  for (const auto& p : pairs) {
    const double t = std::min(supply[p.i], demand[p.j]);
    if (t <= 0.0) continue;
    supply[p.i] -= t;
    demand[p.j] -= t;
    if (!levels.empty() && levels.back().first == p.d)
      levels.back().second += t;
    else
      levels.emplace_back(p.d, t);
  }

  // The plan moves tail(eps) mass at distance >= eps; the bound is the
  // smallest eps with tail(eps) <= eps. tail is constant on each interval
  // (d_{k-1}, d_k] between distinct distances, so scan those intervals.
  const std::size_t K = levels.size();
  std::vector<double> suffix(K + 1, 0.0);
  for (std::size_t k = K; k-- > 0;) suffix[k] = suffix[k + 1] + levels[k].second;

  double best = levels.empty() ? 0.0 : levels.back().first;  // interval beyond the last distance
  for (std::size_t k = 0; k < K; ++k) {
    const double d_prev = (k == 0) ? 0.0 : levels[k - 1].first;
    if (suffix[k] <= levels[k].first) best = std::min(best, std::max(suffix[k], d_prev));
  }
  return std::min(best, 1.0);
}

double segment_mass(const DiscreteMeasure& mu, const Vec& seg_start, const Vec& seg_end, double tol) {
  if (seg_start == seg_end) throw std::invalid_argument("segment_mass: degenerate segment");
  double mass = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (point_segment_dist(mu.points()[i], seg_start, seg_end) <= tol) mass += mu.weights()[i];
  return mass;
}

}  // namespace arcforge

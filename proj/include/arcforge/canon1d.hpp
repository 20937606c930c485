// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "arcforge/measure.hpp"
#include "arcforge/relu_net.hpp"

namespace arcforge {

/// Continuous piecewise-linear function on R, stored as sorted breakpoints
/// with one (slope, intercept) pair per piece. Supports exact propagation
/// through one-dimensional ReLU layers: the affine part transforms slopes and
/// intercepts, and the rectification splits at most one piece because every
/// intermediate function is monotone.
class Pwl1D {
 public:
  static Pwl1D identity();

  std::size_t piece_count() const { return slopes_.size(); }
  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<double>& slopes() const { return slopes_; }
  const std::vector<double>& intercepts() const { return intercepts_; }

  double eval(double x) const;

  /// In-place map f -> w*f + b.
  void affine(double w, double b);
  /// In-place map f -> max(0, f).
  void rectify();
  /// Merge adjacent pieces whose slope and intercept agree within tol.
  void collapse(double tol = 1e-10);

 private:
  std::vector<double> breaks_;      // sorted; pieces = breaks + 1
  std::vector<double> slopes_;
  std::vector<double> intercepts_;  // piece value = slope*x + intercept
};

/// The three normal forms of a one-dimensional ReLU network.
struct ConstantForm {
  double c;  // f == c >= 0
};
struct BoundedRampForm {
  double c1, c2;  // constant values left of a1 and right of a2
  double a1, a2;  // a1 < a2, affine in between
};
struct KneeForm {
  double c;  // constant value, >= 0
  double a;  // breakpoint
  double w;  // nonzero slope of the unbounded side: f = c + w*(x-a) where w*(x-a) > 0
};
using Canon1DForm = std::variant<ConstantForm, BoundedRampForm, KneeForm>;

/// Weights and biases of the canonical three-layer rewrite.
struct ThreeLayerParams {
  double w1, b1, w2, b2, w3, b3;
};

/// Exact symbolic composition of a one-dimensional network followed by
/// pattern-matching against the normal forms.
Canon1DForm classify(const ReluNetwork& net);

/// The full symbolic composition (exposed for grid comparisons).
Pwl1D to_pwl(const ReluNetwork& net);

double eval_form(const Canon1DForm& form, double x);

/// Closed-form three-layer parameters realising the normal form on all of R.
ThreeLayerParams to_three_layer(const Canon1DForm& form);

/// Realisation map: the one-dimensional three-layer network of theta.
ReluNetwork realize(const ThreeLayerParams& theta);

/// Parameter update witnessing layer invariance: omega with
/// f_{omega} = layer(w, b) after f_{theta} as functions, hence
/// pushforward(p(theta), layer) = p(omega) for any prototype measure.
ThreeLayerParams family1d_step(const ThreeLayerParams& theta, double w, double b);

/// The six-parameter family member p(theta): pushforward of the prototype.
DiscreteMeasure family1d_measure(const ThreeLayerParams& theta, const DiscreteMeasure& mu0);

/// Default prototype: ten equally weighted atoms at 0.5, 1.5, ..., 9.5.
DiscreteMeasure default_prototype_1d();

}  // namespace arcforge

// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0

#include "arcforge/canon1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace arcforge {

Pwl1D Pwl1D::identity() {
  Pwl1D f;
  f.slopes_ = {1.0};
  f.intercepts_ = {0.0};
  return f;
}

double Pwl1D::eval(double x) const {
  std::size_t piece = std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin();
  return slopes_[piece] * x + intercepts_[piece];
}

void Pwl1D::affine(double w, double b) {
  for (std::size_t i = 0; i < slopes_.size(); ++i) {
    slopes_[i] *= w;
    intercepts_[i] = w * intercepts_[i] + b;
  }
}

void Pwl1D::rectify() {
  std::vector<double> nb, ns, ni;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < slopes_.size(); ++i) {
    const double left = (i == 0) ? -inf : breaks_[i - 1];
    const double right = (i == breaks_.size()) ? inf : breaks_[i];
    const double s = slopes_[i];
    const double t = intercepts_[i];

    const auto push = [&](double lo, double slope, double intercept) {
      if (lo != -inf) nb.push_back(lo);
      ns.push_back(slope);
      ni.push_back(intercept);
    };

    if (s == 0.0) {
      if (t >= 0.0)
        push(left, 0.0, t);
      else
        push(left, 0.0, 0.0);
      continue;
    }
    const double z = -t / s;  // zero crossing of this piece's affine extension
    if (s > 0.0) {
      // negative left of z
      if (z <= left)
        push(left, s, t);
      else if (z >= right)
        push(left, 0.0, 0.0);
      else {
        push(left, 0.0, 0.0);
        push(z, s, t);
      }
    } else {
      // negative right of z
      if (z >= right)
        push(left, s, t);
      else if (z <= left)
        push(left, 0.0, 0.0);
      else {
        push(left, s, t);
        push(z, 0.0, 0.0);
      }
    }
  }
  breaks_ = std::move(nb);
  slopes_ = std::move(ns);
  intercepts_ = std::move(ni);
}

void Pwl1D::collapse(double tol) {
  std::vector<double> nb, ns, ni;
  ns.push_back(slopes_[0]);
  ni.push_back(intercepts_[0]);
  for (std::size_t i = 1; i < slopes_.size(); ++i) {
    if (std::abs(slopes_[i] - ns.back()) <= tol && std::abs(intercepts_[i] - ni.back()) <= tol)
      continue;  // collinear with the previous piece
    nb.push_back(breaks_[i - 1]);
    ns.push_back(slopes_[i]);
    ni.push_back(intercepts_[i]);
  }
  breaks_ = std::move(nb);
  slopes_ = std::move(ns);
  intercepts_ = std::move(ni);
}

Pwl1D to_pwl(const ReluNetwork& net) {
  if (net.dim() != 1) throw std::invalid_argument("to_pwl: network must be one-dimensional");
  Pwl1D f = Pwl1D::identity();
  for (const auto& layer : net.layers()) {
    f.affine(layer.W(0, 0), layer.b[0]);
    f.rectify();
    f.collapse();
  }
  return f;
}

Canon1DForm classify(const ReluNetwork& net) {
  Pwl1D f = to_pwl(net);
  const auto& s = f.slopes();
  const auto& t = f.intercepts();
  const auto& br = f.breakpoints();

  if (f.piece_count() == 1) {
    if (s[0] != 0.0) throw std::logic_error("classify: unbounded affine output cannot occur");
    return ConstantForm{t[0]};
  }
  if (f.piece_count() == 2) {
    if (s[0] == 0.0 && s[1] != 0.0) return KneeForm{t[0], br[0], s[1]};
    if (s[1] == 0.0 && s[0] != 0.0) return KneeForm{t[1], br[0], s[0]};
    throw std::logic_error("classify: two-piece output without a constant side");
  }
  if (f.piece_count() == 3 && s[0] == 0.0 && s[2] == 0.0 && s[1] != 0.0)
    return BoundedRampForm{t[0], t[2], br[0], br[1]};
  throw std::logic_error("classify: output does not match a ReLU normal form");
}

double eval_form(const Canon1DForm& form, double x) {
  if (const auto* c = std::get_if<ConstantForm>(&form)) return c->c;
  if (const auto* r = std::get_if<BoundedRampForm>(&form)) {
    if (x <= r->a1) return r->c1;
    if (x >= r->a2) return r->c2;
    return r->c1 + (r->c2 - r->c1) / (r->a2 - r->a1) * (x - r->a1);
  }
  const auto& k = std::get<KneeForm>(form);
  const double lin = k.w * (x - k.a);
  return lin > 0.0 ? k.c + lin : k.c;
}

namespace {

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

ThreeLayerParams bounded_params(double c1, double c2, double a1, double a2) {
  return ThreeLayerParams{1.0,
                          -a1,
                          -std::abs(c2 - c1) / (a2 - a1),
                          std::abs(c2 - c1),
                          -sign_of(c2 - c1),
                          c2};
}

}  // namespace

ThreeLayerParams to_three_layer(const Canon1DForm& form) {
  if (const auto* c = std::get_if<ConstantForm>(&form)) return bounded_params(c->c, c->c, 0.0, 1.0);
  if (const auto* r = std::get_if<BoundedRampForm>(&form))
    return bounded_params(r->c1, r->c2, r->a1, r->a2);
  const auto& k = std::get<KneeForm>(form);
  const double sg = sign_of(k.w);
  return ThreeLayerParams{sg, -sg * k.a, std::abs(k.w), k.c, 1.0, 0.0};
}

ReluNetwork realize(const ThreeLayerParams& theta) {
  const auto layer = [](double w, double b) {
    Mat W(1, 1);
    W(0, 0) = w;
    return ReluLayer(std::move(W), Vec{b});
  };
  return ReluNetwork(std::vector<ReluLayer>{layer(theta.w1, theta.b1), layer(theta.w2, theta.b2),
                                            layer(theta.w3, theta.b3)});
}

ThreeLayerParams family1d_step(const ThreeLayerParams& theta, double w, double b) {
  std::vector<ReluLayer> layers = realize(theta).layers();
  Mat W(1, 1);
  W(0, 0) = w;
  layers.emplace_back(std::move(W), Vec{b});
  return to_three_layer(classify(ReluNetwork(std::move(layers))));
}

DiscreteMeasure family1d_measure(const ThreeLayerParams& theta, const DiscreteMeasure& mu0) {
  return pushforward(mu0, realize(theta));
}

DiscreteMeasure default_prototype_1d() {
  std::vector<Vec> points;
  std::vector<double> weights(10, 0.1);
  for (int i = 0; i < 10; ++i) points.push_back({0.5 + i});
  return DiscreteMeasure(std::move(points), std::move(weights));
}

}  // namespace arcforge

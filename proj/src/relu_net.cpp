// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0

#include "arcforge/relu_net.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace arcforge {

ReluLayer::ReluLayer(Mat weight, Vec bias) : W(std::move(weight)), b(std::move(bias)) {
  if (W.rows == 0 || W.rows != W.cols) throw std::invalid_argument("ReluLayer: weight matrix must be square");
  if (b.size() != W.rows) throw std::invalid_argument("ReluLayer: bias length must match weight matrix");
}

ReluNetwork::ReluNetwork(std::vector<ReluLayer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw std::invalid_argument("ReluNetwork: needs at least one layer");
  for (const auto& l : layers_)
    if (l.dim() != layers_.front().dim())
      throw std::invalid_argument("ReluNetwork: inconsistent layer dimensions");
}

ReluNetwork::ReluNetwork(ReluLayer layer) : ReluNetwork(std::vector<ReluLayer>{std::move(layer)}) {}

Vec eval(const ReluLayer& layer, const Vec& x) {
  if (x.size() != layer.dim()) throw std::invalid_argument("eval: dimension mismatch");
  Vec y = matvec(layer.W, x);
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] += layer.b[i];
    if (y[i] < 0.0) y[i] = 0.0;
  }
  return y;
}

Vec eval(const ReluNetwork& net, const Vec& x) {
  if (x.size() != net.dim()) throw std::invalid_argument("eval: dimension mismatch");
  Vec y = x;
  for (const auto& layer : net.layers()) y = eval(layer, y);
  return y;
}

ReluNetwork compose(const ReluNetwork& f, const ReluNetwork& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("compose: dimension mismatch");
  std::vector<ReluLayer> layers = f.layers();
  layers.insert(layers.end(), g.layers().begin(), g.layers().end());
  return ReluNetwork(std::move(layers));
}

ReluLayer embed_2d_to_d(const ReluLayer& layer, std::size_t d) {
  if (layer.dim() != 2) throw std::invalid_argument("embed_2d_to_d: layer must be planar");
  if (d < 2) throw std::invalid_argument("embed_2d_to_d: d must be >= 2");
  Mat W(d, d);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) W(i, j) = layer.W(i, j);
  Vec b(d, 0.0);
  b[0] = layer.b[0];
  b[1] = layer.b[1];
  return ReluLayer(std::move(W), std::move(b));
}

ReluNetwork embed_2d_to_d(const ReluNetwork& net, std::size_t d) {
  std::vector<ReluLayer> layers;
  layers.reserve(net.layers().size());
  for (const auto& l : net.layers()) layers.push_back(embed_2d_to_d(l, d));
  return ReluNetwork(std::move(layers));
}

Mat rotation(double alpha) {
  Mat r(2, 2);
  r(0, 0) = std::cos(alpha);
  r(0, 1) = -std::sin(alpha);
  r(1, 0) = std::sin(alpha);
  r(1, 1) = std::cos(alpha);
  return r;
}

}  // namespace arcforge

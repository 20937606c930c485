// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "arcforge/linalg.hpp"

namespace arcforge {

/// One network layer x -> relu(W x + b) with a square weight matrix.
struct ReluLayer {
  Mat W;
  Vec b;

  ReluLayer(Mat weight, Vec bias);

  std::size_t dim() const { return W.rows; }
};

/// A composition of equal-dimension ReLU layers, applied first-to-last.
class ReluNetwork {
 public:
  explicit ReluNetwork(std::vector<ReluLayer> layers);
  explicit ReluNetwork(ReluLayer layer);

  std::size_t dim() const { return layers_.front().dim(); }
  const std::vector<ReluLayer>& layers() const { return layers_; }

 private:
  std::vector<ReluLayer> layers_;
};

Vec eval(const ReluLayer& layer, const Vec& x);
Vec eval(const ReluNetwork& net, const Vec& x);

/// Layer concatenation; compose(f, g) applies f first, then g.
ReluNetwork compose(const ReluNetwork& f, const ReluNetwork& g);

/// Zero-pad a planar layer so it acts on span{e1, e2} of R^d and sends every
/// other coordinate to zero.
ReluLayer embed_2d_to_d(const ReluLayer& layer, std::size_t d);
ReluNetwork embed_2d_to_d(const ReluNetwork& net, std::size_t d);

/// 2x2 counterclockwise rotation by alpha.
Mat rotation(double alpha);

}  // namespace arcforge

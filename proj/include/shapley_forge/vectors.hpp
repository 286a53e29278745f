// Copyright 2026 The Shapley Forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Value vectors attached to a game. Shapley vectors are indexed by voter
// (entry i-1 holds voter i); correlation and Fourier vectors carry the
// constant coordinate x_0 = 1 in entry 0 followed by voters 1..n.

#include <cmath>
#include <cstddef>
#include <vector>

#include "shapley_forge/errors.hpp"

namespace shapley_forge {

template <class Tag>
struct IndexedVector {
  std::vector<double> values;

  IndexedVector() = default;
  explicit IndexedVector(std::vector<double> v) : values(std::move(v)) {}
  explicit IndexedVector(std::size_t size, double fill = 0.0) : values(size, fill) {}

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  auto begin() const { return values.begin(); }
  auto end() const { return values.end(); }
};

struct ShapleyTag;
struct CorrelationTag;
struct FourierTag;

using ShapleyVector = IndexedVector<ShapleyTag>;
using CorrelationVector = IndexedVector<CorrelationTag>;
using FourierVector = IndexedVector<FourierTag>;

inline double euclidean_distance(const std::vector<double>& a,
                                 const std::vector<double>& b) {
  check_same_length("euclidean_distance", a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace shapley_forge

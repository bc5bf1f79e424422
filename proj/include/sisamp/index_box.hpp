// SPDX-License-Identifier: Apache-2.0
//
// sisamp: sampling and reconstruction in finitely generated shift-invariant spaces
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sisamp/common.hpp"

namespace sisamp {

/// Axis-aligned box of integer multi-indices lo <= alpha <= hi, flattened
/// row-major (axis 0 slowest).
class IndexBox {
 public:
  IndexBox() = default;
  // |alpha|_inf <= radius
  IndexBox(int dim, long long radius);
  IndexBox(IVec lo, IVec hi);

  int dim() const { return static_cast<int>(lo_.size()); }
  const IVec& lo() const { return lo_; }
  const IVec& hi() const { return hi_; }
  long long extent(int axis) const { return hi_[axis] - lo_[axis] + 1; }
  std::size_t size() const { return size_; }

  bool contains(std::span<const long long> alpha) const;
  std::size_t flat(std::span<const long long> alpha) const;
  IVec at(std::size_t flat) const;
  void at(std::size_t flat, std::span<long long> out) const;

  // Smallest box containing both.
  IndexBox hull(const IndexBox& other) const;

 private:
  IVec lo_, hi_;
  std::size_t size_ = 0;
};

/// Complex values over an IndexBox (coefficient sequences, sample sets).
class IndexedArray {
 public:
  IndexedArray() = default;
  explicit IndexedArray(IndexBox box) : box_(std::move(box)), values_(box_.size(), cplx{}) {}
  IndexedArray(IndexBox box, std::vector<cplx> values);

  const IndexBox& box() const { return box_; }
  std::size_t size() const { return values_.size(); }
  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }

  cplx& operator[](std::size_t flat) { return values_[flat]; }
  cplx operator[](std::size_t flat) const { return values_[flat]; }

  // Zero outside the box.
  cplx at(std::span<const long long> alpha) const;
  cplx& ref(std::span<const long long> alpha) { return values_[box_.flat(alpha)]; }

  double norm2() const;
  // Largest |value| on the outer shell of the box.
  double boundary_max() const;

 private:
  IndexBox box_;
  std::vector<cplx> values_;
};

}  // namespace sisamp

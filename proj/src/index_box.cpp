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

#include "sisamp/index_box.hpp"

#include <algorithm>
#include <cmath>

namespace sisamp {

IndexBox::IndexBox(int dim, long long radius)
    : IndexBox(IVec(static_cast<std::size_t>(dim), -radius), IVec(static_cast<std::size_t>(dim), radius)) {}

IndexBox::IndexBox(IVec lo, IVec hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size() || lo_.empty()) throw Error(ErrorKind::ShapeMismatch, "index box corners differ in dimension");
  size_ = 1;
  for (std::size_t a = 0; a < lo_.size(); ++a) {
    if (hi_[a] < lo_[a]) throw Error(ErrorKind::ShapeMismatch, "empty index box");
    size_ *= static_cast<std::size_t>(hi_[a] - lo_[a] + 1);
  }
}

bool IndexBox::contains(std::span<const long long> alpha) const {
  for (std::size_t a = 0; a < lo_.size(); ++a)
    if (alpha[a] < lo_[a] || alpha[a] > hi_[a]) return false;
  return true;
}

std::size_t IndexBox::flat(std::span<const long long> alpha) const {
  std::size_t f = 0;
  for (std::size_t a = 0; a < lo_.size(); ++a)
    f = f * static_cast<std::size_t>(hi_[a] - lo_[a] + 1) + static_cast<std::size_t>(alpha[a] - lo_[a]);
  return f;
}

void IndexBox::at(std::size_t flat, std::span<long long> out) const {
  for (std::size_t a = lo_.size(); a-- > 0;) {
    const auto ext = static_cast<std::size_t>(hi_[a] - lo_[a] + 1);
    out[a] = lo_[a] + static_cast<long long>(flat % ext);
    flat /= ext;
  }
}

IVec IndexBox::at(std::size_t flat) const {
  IVec out(lo_.size());
  at(flat, out);
  return out;
}

IndexBox IndexBox::hull(const IndexBox& other) const {
  if (size_ == 0) return other;
  if (other.size_ == 0) return *this;
  IVec lo(lo_.size()), hi(lo_.size());
  for (std::size_t a = 0; a < lo_.size(); ++a) {
    lo[a] = std::min(lo_[a], other.lo_[a]);
    hi[a] = std::max(hi_[a], other.hi_[a]);
  }
  return IndexBox(std::move(lo), std::move(hi));
}

IndexedArray::IndexedArray(IndexBox box, std::vector<cplx> values) : box_(std::move(box)), values_(std::move(values)) {
  if (values_.size() != box_.size()) throw Error(ErrorKind::ShapeMismatch, "value count does not match index box");
}

cplx IndexedArray::at(std::span<const long long> alpha) const {
  if (!box_.contains(alpha)) return {};
  return values_[box_.flat(alpha)];
}

double IndexedArray::norm2() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return s;
}

double IndexedArray::boundary_max() const {
  double worst = 0.0;
  IVec alpha(static_cast<std::size_t>(box_.dim()));
  for (std::size_t f = 0; f < values_.size(); ++f) {
    box_.at(f, alpha);
    bool shell = false;
    for (int a = 0; a < box_.dim(); ++a)
      if (alpha[a] == box_.lo()[a] || alpha[a] == box_.hi()[a]) shell = true;
    if (shell) worst = std::max(worst, std::abs(values_[f]));
  }
  return worst;
}

}  // namespace sisamp

// Copyright 2026 The distlin Authors. All Rights Reserved.
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
// =============================================================================
#ifndef DISTLIN_TENSOR_HPP
#define DISTLIN_TENSOR_HPP

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "distlin/error.hpp"

namespace distlin {

using Index = long;
using Shape = std::vector<Index>;

inline Index volume_of(const Shape& shape) {
  Index v = 1;
  for (Index e : shape) v *= e;
  return v;
}

inline std::string shape_str(const Shape& shape) {
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + ")";
}

// Half-open [start, stop) interval per dimension, in global index space.
struct IndexRange {
  Shape start;
  Shape stop;

  IndexRange() = default;
  IndexRange(Shape start_, Shape stop_)
      : start(std::move(start_)), stop(std::move(stop_)) {
    DISTLIN_REQUIRE(start.size() == stop.size(),
                    "IndexRange: start/stop rank mismatch");
    for (std::size_t d = 0; d < start.size(); ++d) {
      DISTLIN_REQUIRE(start[d] <= stop[d], "IndexRange: start ", start[d],
                      " > stop ", stop[d], " in dim ", d);
    }
  }

  static IndexRange all(const Shape& shape) {
    return IndexRange(Shape(shape.size(), 0), shape);
  }
  // Rank-1 range over a flat buffer.
  static IndexRange flat(Index lo, Index hi) { return IndexRange({lo}, {hi}); }

  Index rank() const { return static_cast<Index>(start.size()); }
  Shape extents() const {
    Shape e(start.size());
    for (std::size_t d = 0; d < start.size(); ++d) e[d] = stop[d] - start[d];
    return e;
  }
  Index volume() const { return volume_of(extents()); }
  bool empty() const { return volume() == 0; }

  bool within(const Shape& shape) const {
    if (start.size() != shape.size()) return false;
    for (std::size_t d = 0; d < shape.size(); ++d) {
      if (start[d] < 0 || stop[d] > shape[d]) return false;
    }
    return true;
  }

  bool contains(const IndexRange& other) const {
    if (other.rank() != rank()) return false;
    for (std::size_t d = 0; d < start.size(); ++d) {
      if (other.start[d] < start[d] || other.stop[d] > stop[d]) {
        if (!(other.start[d] == other.stop[d]))  // empty always fits
          return false;
      }
    }
    return true;
  }

  friend IndexRange intersect(const IndexRange& a, const IndexRange& b) {
    DISTLIN_REQUIRE(a.rank() == b.rank(), "intersect: rank mismatch");
    Shape lo(a.start.size()), hi(a.start.size());
    for (std::size_t d = 0; d < a.start.size(); ++d) {
      lo[d] = std::max(a.start[d], b.start[d]);
      hi[d] = std::max(lo[d], std::min(a.stop[d], b.stop[d]));
    }
    return IndexRange(std::move(lo), std::move(hi));
  }

  bool disjoint(const IndexRange& other) const {
    return intersect(*this, other).empty();
  }

  friend bool operator==(const IndexRange& a, const IndexRange& b) {
    return a.start == b.start && a.stop == b.stop;
  }

  std::string str() const {
    std::string s;
    for (std::size_t d = 0; d < start.size(); ++d) {
      if (d) s += "x";
      s += "[" + std::to_string(start[d]) + "," + std::to_string(stop[d]) + ")";
    }
    return s;
  }
};

// Dense row-major tensor of arbitrary rank >= 1.  A scalar is shape (1);
// zero extents are allowed so that empty blocks compose with partitions.
template <typename T>
class Tensor {
 public:
  Tensor() : shape_{0} {}
  explicit Tensor(Shape shape) : shape_(std::move(shape)) {
    check_shape();
    data_.assign(static_cast<std::size_t>(volume_of(shape_)), T(0));
  }
  Tensor(Shape shape, std::vector<T> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    check_shape();
    DISTLIN_REQUIRE(static_cast<Index>(data_.size()) == volume_of(shape_),
                    "Tensor: data length ", data_.size(),
                    " != volume of shape ", shape_str(shape_));
  }

  static Tensor filled(Shape shape, T value) {
    Tensor t(std::move(shape));
    for (T& x : t.data_) x = value;
    return t;
  }

  Index rank() const { return static_cast<Index>(shape_.size()); }
  const Shape& shape() const { return shape_; }
  Index extent(Index dim) const { return shape_[static_cast<std::size_t>(dim)]; }
  Index size() const { return static_cast<Index>(data_.size()); }
  bool empty() const { return data_.empty(); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::span<T> flat() { return {data_.data(), data_.size()}; }
  std::span<const T> flat() const { return {data_.data(), data_.size()}; }

  T& operator[](Index i) { return data_[static_cast<std::size_t>(i)]; }
  const T& operator[](Index i) const {
    return data_[static_cast<std::size_t>(i)];
  }

  T& at(std::initializer_list<Index> idx) { return data_[offset_of(idx)]; }
  const T& at(std::initializer_list<Index> idx) const {
    return data_[offset_of(idx)];
  }

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

  Tensor reshaped(Shape new_shape) const {
    DISTLIN_REQUIRE(volume_of(new_shape) == size(), "reshape: volume mismatch ",
                    shape_str(new_shape), " vs ", shape_str(shape_));
    return Tensor(std::move(new_shape), data_);
  }

  // Row-major strides.
  Shape strides() const {
    Shape s(shape_.size(), 1);
    for (Index d = rank() - 2; d >= 0; --d) {
      s[static_cast<std::size_t>(d)] =
          s[static_cast<std::size_t>(d + 1)] * shape_[static_cast<std::size_t>(d + 1)];
    }
    return s;
  }

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }

 private:
  void check_shape() const {
    DISTLIN_REQUIRE(!shape_.empty(), "Tensor: rank 0 disallowed; a scalar is shape (1)");
    for (Index e : shape_) {
      DISTLIN_REQUIRE(e >= 0, "Tensor: negative extent in shape ", shape_str(shape_));
    }
  }

  std::size_t offset_of(std::initializer_list<Index> idx) const {
    DISTLIN_REQUIRE(static_cast<Index>(idx.size()) == rank(),
                    "Tensor::at: index rank mismatch");
    std::size_t off = 0, d = 0;
    for (Index i : idx) {
      DISTLIN_REQUIRE(i >= 0 && i < shape_[d], "Tensor::at: index ", i,
                      " out of bounds for dim ", d, " extent ", shape_[d]);
      off = off * static_cast<std::size_t>(shape_[d]) + static_cast<std::size_t>(i);
      ++d;
    }
    return off;
  }

  Shape shape_;
  std::vector<T> data_;
};

namespace detail {

// Visits every (dst_flat, src_flat) pair of a block copy between a tensor of
// shape `shape` restricted to `r` and a dense tensor with r's extents.
// Innermost dimension handled as a contiguous run.
template <typename F>
void for_each_block_run(const Shape& shape, const IndexRange& r, F&& f) {
  const Index rank = static_cast<Index>(shape.size());
  const Shape ext = r.extents();
  if (volume_of(ext) == 0) return;
  Shape strides(shape.size(), 1);
  for (Index d = rank - 2; d >= 0; --d)
    strides[static_cast<std::size_t>(d)] =
        strides[static_cast<std::size_t>(d + 1)] * shape[static_cast<std::size_t>(d + 1)];

  const Index run = ext[static_cast<std::size_t>(rank - 1)];
  const Index outer = volume_of(ext) / run;
  Shape idx(shape.size(), 0);  // index within the block, last dim fixed at 0
  for (Index o = 0; o < outer; ++o) {
    Index host = 0;
    for (Index d = 0; d < rank; ++d)
      host += (r.start[static_cast<std::size_t>(d)] + idx[static_cast<std::size_t>(d)]) *
              strides[static_cast<std::size_t>(d)];
    f(o * run, host, run);
    for (Index d = rank - 2; d >= 0; --d) {
      auto du = static_cast<std::size_t>(d);
      if (++idx[du] < ext[du]) break;
      idx[du] = 0;
    }
  }
}

}  // namespace detail

// Copy of the sub-block r of t.
template <typename T>
Tensor<T> slice(const Tensor<T>& t, const IndexRange& r) {
  DISTLIN_REQUIRE(r.rank() == t.rank(), "slice: range rank ", r.rank(),
                  " != tensor rank ", t.rank());
  DISTLIN_REQUIRE(r.within(t.shape()), "slice: range ", r.str(),
                  " out of bounds for shape ", shape_str(t.shape()));
  Tensor<T> out(r.extents());
  detail::for_each_block_run(t.shape(), r, [&](Index dst, Index src, Index n) {
    for (Index i = 0; i < n; ++i) out[dst + i] = t[src + i];
  });
  return out;
}

template <typename T>
void assign_slice(Tensor<T>& t, const IndexRange& r, const Tensor<T>& src) {
  DISTLIN_REQUIRE(r.within(t.shape()), "assign_slice: range ", r.str(),
                  " out of bounds for shape ", shape_str(t.shape()));
  DISTLIN_REQUIRE(src.shape() == r.extents(), "assign_slice: src shape ",
                  shape_str(src.shape()), " != range extents ",
                  shape_str(r.extents()));
  detail::for_each_block_run(t.shape(), r, [&](Index s, Index dst, Index n) {
    for (Index i = 0; i < n; ++i) t[dst + i] = src[s + i];
  });
}

template <typename T>
void add_slice(Tensor<T>& t, const IndexRange& r, const Tensor<T>& src) {
  DISTLIN_REQUIRE(r.within(t.shape()), "add_slice: range ", r.str(),
                  " out of bounds for shape ", shape_str(t.shape()));
  DISTLIN_REQUIRE(src.shape() == r.extents(), "add_slice: src shape ",
                  shape_str(src.shape()), " != range extents ",
                  shape_str(r.extents()));
  detail::for_each_block_run(t.shape(), r, [&](Index s, Index dst, Index n) {
    for (Index i = 0; i < n; ++i) t[dst + i] += src[s + i];
  });
}

template <typename T>
void clear_slice(Tensor<T>& t, const IndexRange& r) {
  DISTLIN_REQUIRE(r.within(t.shape()), "clear_slice: range ", r.str(),
                  " out of bounds for shape ", shape_str(t.shape()));
  detail::for_each_block_run(t.shape(), r, [&](Index, Index dst, Index n) {
    for (Index i = 0; i < n; ++i) t[dst + i] = T(0);
  });
}

// Standard Euclidean inner product, accumulated in flat-ascending order so
// results are reproducible across runs and workers.
template <typename T>
T inner_product(const Tensor<T>& a, const Tensor<T>& b) {
  DISTLIN_REQUIRE(a.same_shape(b), "inner_product: shape mismatch ",
                  shape_str(a.shape()), " vs ", shape_str(b.shape()));
  T acc(0);
  const T* pa = a.data();
  const T* pb = b.data();
  for (Index i = 0, n = a.size(); i < n; ++i) acc += pa[i] * pb[i];
  return acc;
}

template <typename T>
T squared_norm(const Tensor<T>& a) {
  T acc(0);
  const T* p = a.data();
  for (Index i = 0, n = a.size(); i < n; ++i) acc += p[i] * p[i];
  return acc;
}

template <typename T>
Tensor<T>& operator+=(Tensor<T>& a, const Tensor<T>& b) {
  DISTLIN_REQUIRE(a.same_shape(b), "operator+=: shape mismatch");
  for (Index i = 0, n = a.size(); i < n; ++i) a[i] += b[i];
  return a;
}

template <typename T>
Tensor<T> operator+(Tensor<T> a, const Tensor<T>& b) {
  a += b;
  return a;
}

// a += alpha * b
template <typename T>
void add_scaled(Tensor<T>& a, T alpha, const Tensor<T>& b) {
  DISTLIN_REQUIRE(a.same_shape(b), "add_scaled: shape mismatch");
  for (Index i = 0, n = a.size(); i < n; ++i) a[i] += alpha * b[i];
}

template <typename T>
Tensor<T> scaled(const Tensor<T>& a, T alpha) {
  Tensor<T> out(a.shape());
  for (Index i = 0, n = a.size(); i < n; ++i) out[i] = alpha * a[i];
  return out;
}

}  // namespace distlin

#endif  // DISTLIN_TENSOR_HPP

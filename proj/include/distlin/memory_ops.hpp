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
//
// Primitive linear memory operators over flat buffers: allocation and
// deallocation (zero-extension and truncation), clear, add, and the copy and
// move composites, each with a hand-derived adjoint.  These act on rank-1
// tensors, the realization of "a subset of memory"; block-structured variants
// used by the halo machinery live in tensor.hpp.

#ifndef DISTLIN_MEMORY_OPS_HPP
#define DISTLIN_MEMORY_OPS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "distlin/tensor.hpp"

namespace distlin {

// Two flat subsets of one buffer.  For add/copy/move the ranges must be
// disjoint and of equal length.
struct SubsetPair {
  IndexRange a;
  IndexRange b;

  SubsetPair(IndexRange a_, IndexRange b_) : a(std::move(a_)), b(std::move(b_)) {
    DISTLIN_REQUIRE(a.rank() == 1 && b.rank() == 1,
                    "SubsetPair: flat (rank-1) ranges required");
  }
  Index length() const { return a.volume(); }
};

enum class CopyMode { InPlace, OutOfPlace };

namespace detail {

template <typename T>
void require_rank1(const Tensor<T>& x, const char* op) {
  DISTLIN_REQUIRE(x.rank() == 1, op, ": flat (rank-1) tensor required, got ",
                  shape_str(x.shape()));
}

template <typename T>
void require_pair(const Tensor<T>& x, const SubsetPair& p, const char* op) {
  require_rank1(x, op);
  DISTLIN_REQUIRE(p.a.within(x.shape()) && p.b.within(x.shape()), op,
                  ": ranges ", p.a.str(), ", ", p.b.str(),
                  " out of bounds for ", shape_str(x.shape()));
  DISTLIN_REQUIRE(p.a.volume() == p.b.volume(), op, ": unequal extents ",
                  p.a.str(), " vs ", p.b.str());
  DISTLIN_REQUIRE(p.a.disjoint(p.b), op, ": ranges overlap: ", p.a.str(), ", ",
                  p.b.str());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Allocation / deallocation.  Allocation inserts a zeroed subset at the flat
// range b (appending when b starts at the end); deallocation drops b.  The
// two are adjoints of each other.

template <typename T>
Tensor<T> allocate_at(const Tensor<T>& x, const IndexRange& b) {
  detail::require_rank1(x, "allocate");
  DISTLIN_REQUIRE(b.rank() == 1, "allocate: flat range required");
  const Index lo = b.start[0], hi = b.stop[0];
  DISTLIN_REQUIRE(lo >= 0 && lo <= x.size() && hi >= lo,
                  "allocate: invalid range ", b.str(), " for size ", x.size());
  Tensor<T> out(Shape{x.size() + b.volume()});
  for (Index i = 0; i < lo; ++i) out[i] = x[i];
  for (Index i = lo; i < x.size(); ++i) out[i + b.volume()] = x[i];
  return out;
}

template <typename T>
Tensor<T> allocate(const Tensor<T>& x, Index extent) {
  DISTLIN_REQUIRE(extent >= 0, "allocate: negative extent ", extent);
  return allocate_at(x, IndexRange::flat(x.size(), x.size() + extent));
}

template <typename T>
Tensor<T> deallocate(const Tensor<T>& y, const IndexRange& b) {
  detail::require_rank1(y, "deallocate");
  DISTLIN_REQUIRE(b.rank() == 1 && b.within(y.shape()),
                  "deallocate: range ", b.str(), " out of bounds for size ",
                  y.size());
  Tensor<T> out(Shape{y.size() - b.volume()});
  for (Index i = 0; i < b.start[0]; ++i) out[i] = y[i];
  for (Index i = b.stop[0]; i < y.size(); ++i) out[i - b.volume()] = y[i];
  return out;
}

// ---------------------------------------------------------------------------
// Clear, add, and the copy/move composites.

template <typename T>
Tensor<T> clear(Tensor<T> x, const IndexRange& b) {
  detail::require_rank1(x, "clear");
  DISTLIN_REQUIRE(b.rank() == 1 && b.within(x.shape()), "clear: range ",
                  b.str(), " out of bounds for size ", x.size());
  for (Index i = b.start[0]; i < b.stop[0]; ++i) x[i] = T(0);
  return x;
}

// x_b += x_a.  The adjoint is the add in the reverse direction.
template <typename T>
Tensor<T> add(Tensor<T> x, const SubsetPair& p) {
  detail::require_pair(x, p, "add");
  for (Index i = 0; i < p.length(); ++i) x[p.b.start[0] + i] += x[p.a.start[0] + i];
  return x;
}

// In-place copy is add-after-clear; out-of-place copy allocates b (a trailing
// range) first.  For OutOfPlace, p.b must reference the appended range
// [x.size, x.size + |a|).
template <typename T>
Tensor<T> copy(Tensor<T> x, const SubsetPair& p, CopyMode mode) {
  if (mode == CopyMode::InPlace) {
    detail::require_pair(x, p, "copy");
    return add(clear(std::move(x), p.b), p);
  }
  DISTLIN_REQUIRE(p.b.start[0] == x.size() && p.b.volume() == p.a.volume(),
                  "copy(out-of-place): b must be the appended range, got ",
                  p.b.str(), " for size ", x.size());
  return add(allocate(std::move(x), p.b.volume()), p);
}

template <typename T>
Tensor<T> copy_adjoint(Tensor<T> y, const SubsetPair& p, CopyMode mode) {
  SubsetPair rev(p.b, p.a);
  if (mode == CopyMode::InPlace) {
    detail::require_pair(y, p, "copy_adjoint");
    return clear(add(std::move(y), rev), p.b);
  }
  return deallocate(add(std::move(y), rev), p.b);
}

// In-place move clears the source after the transfer; its adjoint is the move
// in the reverse direction.
template <typename T>
Tensor<T> move(Tensor<T> x, const SubsetPair& p, CopyMode mode) {
  if (mode == CopyMode::InPlace) {
    detail::require_pair(x, p, "move");
    return clear(add(clear(std::move(x), p.b), p), p.a);
  }
  DISTLIN_REQUIRE(p.b.start[0] == x.size() && p.b.volume() == p.a.volume(),
                  "move(out-of-place): b must be the appended range, got ",
                  p.b.str(), " for size ", x.size());
  return deallocate(add(allocate(std::move(x), p.b.volume()), p), p.a);
}

template <typename T>
Tensor<T> move_adjoint(Tensor<T> y, const SubsetPair& p, CopyMode mode) {
  if (mode == CopyMode::InPlace) return move(std::move(y), SubsetPair(p.b, p.a), mode);
  // Out-of-place: the forward dropped a and appended b at the end.  Re-insert
  // zeros at a, which shifts the trailing b block to [m, m+len), then add it
  // back into a and drop it.
  const Index len = p.a.volume();
  const Index m = y.size();
  Tensor<T> with_a = allocate_at(y, p.a);
  IndexRange b_shifted = IndexRange::flat(m, m + len);
  return deallocate(add(std::move(with_a), SubsetPair(b_shifted, p.a)), b_shifted);
}

// ---------------------------------------------------------------------------
// LinearOp: a forward map and its adjoint over lists of tensors.  The unit
// the adjoint test certifies.

template <typename T>
struct LinearOp {
  std::string name;
  std::vector<Shape> domain;    // shapes of the forward inputs
  std::vector<Shape> codomain;  // shapes of the forward outputs
  std::function<std::vector<Tensor<T>>(const std::vector<Tensor<T>>&)> forward;
  std::function<std::vector<Tensor<T>>(const std::vector<Tensor<T>>&)> adjoint;
};

// adjoint(g∘f) = adjoint(f)∘adjoint(g)
template <typename T>
LinearOp<T> compose(LinearOp<T> outer, LinearOp<T> inner) {
  DISTLIN_REQUIRE(outer.domain == inner.codomain, "compose: ", outer.name,
                  " domain does not match ", inner.name, " codomain");
  LinearOp<T> op;
  op.name = outer.name + "*" + inner.name;
  op.domain = inner.domain;
  op.codomain = outer.codomain;
  op.forward = [o = outer.forward, i = inner.forward](const std::vector<Tensor<T>>& x) {
    return o(i(x));
  };
  op.adjoint = [o = outer.adjoint, i = inner.adjoint](const std::vector<Tensor<T>>& y) {
    return i(o(y));
  };
  return op;
}

template <typename T>
LinearOp<T> identity_op(Shape shape) {
  LinearOp<T> op;
  op.name = "identity";
  op.domain = {shape};
  op.codomain = {std::move(shape)};
  op.forward = [](const std::vector<Tensor<T>>& x) { return x; };
  op.adjoint = [](const std::vector<Tensor<T>>& y) { return y; };
  return op;
}

template <typename T>
LinearOp<T> make_allocate_op(Index m, Index extent) {
  LinearOp<T> op;
  op.name = "allocate";
  op.domain = {Shape{m}};
  op.codomain = {Shape{m + extent}};
  IndexRange b = IndexRange::flat(m, m + extent);
  op.forward = [extent](const std::vector<Tensor<T>>& x) {
    return std::vector<Tensor<T>>{allocate(x[0], extent)};
  };
  op.adjoint = [b](const std::vector<Tensor<T>>& y) {
    return std::vector<Tensor<T>>{deallocate(y[0], b)};
  };
  return op;
}

template <typename T>
LinearOp<T> make_deallocate_op(Index n, IndexRange b) {
  LinearOp<T> op;
  op.name = "deallocate";
  op.domain = {Shape{n}};
  op.codomain = {Shape{n - b.volume()}};
  op.forward = [b](const std::vector<Tensor<T>>& x) {
    return std::vector<Tensor<T>>{deallocate(x[0], b)};
  };
  op.adjoint = [b](const std::vector<Tensor<T>>& y) {
    return std::vector<Tensor<T>>{allocate_at(y[0], b)};
  };
  return op;
}

template <typename T>
LinearOp<T> make_clear_op(Index n, IndexRange b) {
  LinearOp<T> op;
  op.name = "clear";
  op.domain = {Shape{n}};
  op.codomain = {Shape{n}};
  op.forward = [b](const std::vector<Tensor<T>>& x) {
    return std::vector<Tensor<T>>{clear(x[0], b)};
  };
  op.adjoint = op.forward;  // self-adjoint
  return op;
}

template <typename T>
LinearOp<T> make_add_op(Index n, SubsetPair p) {
  LinearOp<T> op;
  op.name = "add";
  op.domain = {Shape{n}};
  op.codomain = {Shape{n}};
  op.forward = [p](const std::vector<Tensor<T>>& x) {
    return std::vector<Tensor<T>>{add(x[0], p)};
  };
  op.adjoint = [rev = SubsetPair(p.b, p.a)](const std::vector<Tensor<T>>& y) {
    return std::vector<Tensor<T>>{add(y[0], rev)};
  };
  return op;
}

template <typename T>
LinearOp<T> make_copy_op(Index n, SubsetPair p, CopyMode mode) {
  LinearOp<T> op;
  op.name = mode == CopyMode::InPlace ? "copy-in-place" : "copy-out-of-place";
  op.domain = {Shape{n}};
  op.codomain = {Shape{mode == CopyMode::InPlace ? n : n + p.b.volume()}};
  op.forward = [p, mode](const std::vector<Tensor<T>>& x) {
    return std::vector<Tensor<T>>{copy(x[0], p, mode)};
  };
  op.adjoint = [p, mode](const std::vector<Tensor<T>>& y) {
    return std::vector<Tensor<T>>{copy_adjoint(y[0], p, mode)};
  };
  return op;
}

template <typename T>
LinearOp<T> make_move_op(Index n, SubsetPair p, CopyMode mode) {
  LinearOp<T> op;
  op.name = mode == CopyMode::InPlace ? "move-in-place" : "move-out-of-place";
  op.domain = {Shape{n}};
  op.codomain = {Shape{n}};
  op.forward = [p, mode](const std::vector<Tensor<T>>& x) {
    return std::vector<Tensor<T>>{move(x[0], p, mode)};
  };
  op.adjoint = [p, mode](const std::vector<Tensor<T>>& y) {
    return std::vector<Tensor<T>>{move_adjoint(y[0], p, mode)};
  };
  return op;
}

}  // namespace distlin

#endif  // DISTLIN_MEMORY_OPS_HPP

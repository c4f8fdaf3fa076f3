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
// Quantitative adjoint test: an implementation of F* is coherent with F if
//
//   |<Fx, y> - <x, F*y>| / max(|Fx||y|, |x||F*y|) < epsilon
//
// over randomized trials.  Collective operators run the same harness on all
// workers jointly, with the inner products summed across the group through a
// caller-provided deterministic reducer.

#ifndef DISTLIN_ADJOINT_TEST_HPP
#define DISTLIN_ADJOINT_TEST_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "distlin/memory_ops.hpp"
#include "distlin/tensor.hpp"

namespace distlin {

struct AdjointReport {
  std::string op;
  int trials = 0;
  double max_rel_err = 0.0;
  double epsilon = 0.0;
  bool pass = false;

  // `op, trials, max_rel_err, epsilon, PASS|FAIL`
  std::string to_line() const {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << op << ", " << trials << ", " << max_rel_err
       << ", " << epsilon << ", " << (pass ? "PASS" : "FAIL");
    return os.str();
  }
};

template <typename T>
constexpr double default_epsilon = std::is_same_v<T, float> ? 1e-4 : 1e-12;

// SplitMix64; used to derive independent streams from (seed, rank, trial).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Componentwise deterministic sum of per-worker partials.  Identity for
// sequential operators; comm_runtime supplies a rank-ordered group sum.
using GroupSum = std::function<std::vector<double>(const std::vector<double>&)>;

template <typename T>
struct AdjointTestOptions {
  int trials = 100;
  double epsilon = default_epsilon<T>;
  std::uint64_t seed = 0;
  GroupSum group_sum;                       // empty -> sequential
  std::function<T(std::mt19937_64&)> draw;  // empty -> uniform [-1, 1]
};

namespace detail {

template <typename T>
std::vector<Tensor<T>> draw_tensors(const std::vector<Shape>& shapes,
                                    std::mt19937_64& rng,
                                    const std::function<T(std::mt19937_64&)>& draw) {
  std::vector<Tensor<T>> out;
  out.reserve(shapes.size());
  for (const Shape& s : shapes) {
    Tensor<T> t(s);
    for (Index i = 0; i < t.size(); ++i) t[i] = draw(rng);
    out.push_back(std::move(t));
  }
  return out;
}

template <typename T>
double list_inner(const std::vector<Tensor<T>>& a, const std::vector<Tensor<T>>& b) {
  DISTLIN_REQUIRE(a.size() == b.size(), "adjoint_test: tensor list size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += static_cast<double>(inner_product(a[i], b[i]));
  return acc;
}

template <typename T>
double list_sqnorm(const std::vector<Tensor<T>>& a) {
  double acc = 0.0;
  for (const auto& t : a) acc += static_cast<double>(squared_norm(t));
  return acc;
}

}  // namespace detail

template <typename T>
AdjointReport adjoint_test(const LinearOp<T>& op, AdjointTestOptions<T> opt) {
  DISTLIN_REQUIRE(opt.trials >= 1, "adjoint_test: trials must be >= 1");
  DISTLIN_REQUIRE(opt.epsilon > 0, "adjoint_test: epsilon must be > 0");
  if (!opt.draw) {
    opt.draw = [](std::mt19937_64& rng) {
      return static_cast<T>(std::uniform_real_distribution<double>(-1.0, 1.0)(rng));
    };
  }

  AdjointReport report;
  report.op = op.name;
  report.trials = opt.trials;
  report.epsilon = opt.epsilon;

  double max_rel = 0.0;
  for (int trial = 0; trial < opt.trials; ++trial) {
    std::mt19937_64 rng(mix_seed(opt.seed, static_cast<std::uint64_t>(trial)));
    auto x = detail::draw_tensors<T>(op.domain, rng, opt.draw);
    auto y = detail::draw_tensors<T>(op.codomain, rng, opt.draw);

    auto fx = op.forward(x);
    auto fty = op.adjoint(y);

    std::vector<double> partial = {
        detail::list_inner(fx, y),   detail::list_inner(x, fty),
        detail::list_sqnorm(fx),     detail::list_sqnorm(y),
        detail::list_sqnorm(x),      detail::list_sqnorm(fty)};
    if (opt.group_sum) partial = opt.group_sum(partial);

    const double numer = std::abs(partial[0] - partial[1]);
    const double denom = std::max(std::sqrt(partial[2]) * std::sqrt(partial[3]),
                                  std::sqrt(partial[4]) * std::sqrt(partial[5]));
    double rel;
    if (denom == 0.0) {
      rel = numer == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      rel = numer / denom;
    }
    if (rel > max_rel) max_rel = rel;
  }

  report.max_rel_err = max_rel;
  report.pass = max_rel < opt.epsilon;
  return report;
}

// Spot check of linearity, op(ax + bz) == a op(x) + b op(z).  Scale factors
// are powers of two so data-movement operators must match exactly; a small
// tolerance accommodates genuinely accumulating operators.
template <typename T>
double linearity_defect(const LinearOp<T>& op, std::uint64_t seed, int trials = 10) {
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(mix_seed(seed, 0x10000ULL + static_cast<std::uint64_t>(trial)));
    auto draw = [](std::mt19937_64& g) {
      return static_cast<T>(std::uniform_real_distribution<double>(-1.0, 1.0)(g));
    };
    auto x = detail::draw_tensors<T>(op.domain, rng, draw);
    auto z = detail::draw_tensors<T>(op.domain, rng, draw);
    const T a = T(2), b = T(-0.5);

    std::vector<Tensor<T>> combo;
    combo.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      Tensor<T> c = scaled(x[i], a);
      add_scaled(c, b, z[i]);
      combo.push_back(std::move(c));
    }
    auto lhs = op.forward(combo);
    auto fx = op.forward(x);
    auto fz = op.forward(z);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      Tensor<T> rhs = scaled(fx[i], a);
      add_scaled(rhs, b, fz[i]);
      for (Index j = 0; j < rhs.size(); ++j) {
        worst = std::max(worst, static_cast<double>(std::abs(lhs[i][j] - rhs[j])));
      }
    }
  }
  return worst;
}

}  // namespace distlin

#endif  // DISTLIN_ADJOINT_TEST_HPP

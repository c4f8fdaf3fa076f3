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
#ifndef DISTLIN_ERROR_HPP
#define DISTLIN_ERROR_HPP

#include <sstream>
#include <stdexcept>
#include <string>

namespace distlin {

// Violated precondition or invariant on the caller's side.
class contract_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Failure inside the simulated message-passing runtime (mismatched
// collectives, watchdog timeouts, aborted worker groups).
class comm_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or truncated input files.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <typename... Args>
std::string concat(Args&&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

}  // namespace detail

}  // namespace distlin

#define DISTLIN_REQUIRE(cond, ...)                                 \
  do {                                                             \
    if (!(cond)) {                                                 \
      throw ::distlin::contract_error(                             \
          ::distlin::detail::concat("distlin: ", __VA_ARGS__));    \
    }                                                              \
  } while (0)

#endif  // DISTLIN_ERROR_HPP

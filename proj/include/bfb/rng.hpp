// Copyright 2026 The bfbconv Authors
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

#ifndef BFB_RNG_HPP
#define BFB_RNG_HPP

#include <cstdint>
#include <random>

namespace bfb {

// All randomness flows from one root seed.  A stream is derived as
// splitmix64(root ^ stream_id) so that independent consumers (initial
// data, property trials, ...) draw from decorrelated, reproducible
// generators regardless of call order.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t root_seed,
                                std::uint64_t stream_id) {
  return std::mt19937_64(splitmix64(root_seed ^ splitmix64(stream_id)));
}

}  // namespace bfb

#endif  // BFB_RNG_HPP

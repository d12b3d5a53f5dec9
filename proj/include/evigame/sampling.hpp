// Copyright 2026 The evigame Authors.
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

// Counter-based random streams and a chunked parallel loop. Draw i of a
// stream depends only on (seed, i), so chunking the index range across
// threads reproduces the sequential result bit for bit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

namespace evigame {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Random stream for one sample index.
class IndexedStream {
 public:
  IndexedStream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    state_ = splitmix64(s) ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL);
    splitmix64(state_);
  }

  std::uint64_t next() { return splitmix64(state_); }

  /// Uniform on (0, 1].
  double uniform() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

  /// Uniform on [-1, 1).
  double symmetric_uniform() { return 2.0 * (static_cast<double>(next() >> 11) * 0x1.0p-53) - 1.0; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double r = std::sqrt(-2.0 * std::log(uniform()));
    double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Worker count: EVIGAME_THREADS if set, otherwise hardware concurrency.
inline unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("EVIGAME_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  return hw;
}

/// Runs body(chunk, begin, end) over [0, n) split into contiguous chunks.
/// Callers combine per-chunk results in chunk order.
inline void parallel_chunks(
    std::uint64_t n, unsigned chunks,
    const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& body) {
  chunks = std::max(1u, chunks);
  if (chunks == 1 || n < 2 * chunks) {
    for (unsigned c = 0; c < chunks; ++c) {
      std::uint64_t b = n * c / chunks, e = n * (c + 1) / chunks;
      body(c, b, e);
    }
    return;
  }
  std::vector<std::thread> workers;
  for (unsigned c = 0; c < chunks; ++c) {
    std::uint64_t b = n * c / chunks, e = n * (c + 1) / chunks;
    workers.emplace_back([&body, c, b, e] { body(c, b, e); });
  }
  for (auto& w : workers) w.join();
}

/// Standard normal cdf.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace evigame

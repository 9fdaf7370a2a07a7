// Copyright 2026 The eprb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Counter-based random streams.
//
// Every trial draws from its own stream whose state is a pure function of
// (seed, trial_index), so trials can be generated in any order or on any
// number of threads and still reproduce bit for bit.
//
// Layout (Philox4x32-10, Salmon et al. SC'11):
//   key     = { lo32(seed), hi32(seed) }
//   counter = { lo32(block), hi32(block), lo32(trial), hi32(trial) }
// Block b yields four 32-bit words w0..w3. Uniform doubles are taken two per
// block in order: u = ((w1:w0) >> 11) * 2^-53, then ((w3:w2) >> 11) * 2^-53,
// giving values in [0, 1).

#ifndef EPRB_RANDOM_HPP_
#define EPRB_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <span>

namespace eprb {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// One Philox4x32 block with 10 rounds.
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  // Uniform in [0, 1) with 53 random bits.
  double uniform();

  // Index drawn from `weights` by walking cumulative sums in order with one
  // uniform. Weights are assumed non-negative and summing to ~1; a draw that
  // falls past the accumulated mass lands on the last positive weight.
  std::size_t pick(std::span<const double> weights);

  // Uniform index in [0, n), n > 0, from one uniform.
  std::size_t below(std::size_t n);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  // Number of uniforms consumed so far.
  std::uint64_t position() const { return drawn_; }

  friend bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t drawn_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
};

// Stream for one trial of a run.
inline RandomStream derive_substream(std::uint64_t seed, std::uint64_t trial_index) {
  return RandomStream(seed, trial_index);
}

// SplitMix64 finalizer over (seed, k); used to give each point of a sweep its
// own seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k);

}  // namespace eprb

#endif  // EPRB_RANDOM_HPP_

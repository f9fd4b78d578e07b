// Copyright 2026 The Coalition Authors
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

#ifndef COALITION_COALITION_HPP
#define COALITION_COALITION_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace coalition {

inline constexpr std::size_t kMaxPlayers = 64;

using PlayerId = std::uint32_t;

/// A set of players stored as a 64-bit mask; bit i is player i.
class Coalition {
 public:
  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint64_t bits) : bits_(bits) {}

  static constexpr Coalition empty() { return Coalition(); }
  static constexpr Coalition singleton(PlayerId i) {
    return Coalition(std::uint64_t{1} << i);
  }
  /// All players 0..n-1.
  static constexpr Coalition grand(std::size_t n) {
    return Coalition(n >= 64 ? ~std::uint64_t{0}
                             : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool is_empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return std::popcount(bits_); }
  constexpr bool contains(PlayerId i) const { return (bits_ >> i) & 1U; }

  constexpr Coalition with(PlayerId i) const {
    return Coalition(bits_ | (std::uint64_t{1} << i));
  }
  constexpr Coalition without(PlayerId i) const {
    return Coalition(bits_ & ~(std::uint64_t{1} << i));
  }
  constexpr bool subset_of(Coalition other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool disjoint(Coalition other) const {
    return (bits_ & other.bits_) == 0;
  }

  /// Members in ascending order.
  std::vector<PlayerId> members() const {
    std::vector<PlayerId> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<PlayerId>(std::countr_zero(b)));
    }
    return out;
  }

  friend constexpr Coalition operator|(Coalition a, Coalition b) {
    return Coalition(a.bits_ | b.bits_);
  }
  friend constexpr Coalition operator&(Coalition a, Coalition b) {
    return Coalition(a.bits_ & b.bits_);
  }
  friend constexpr bool operator==(Coalition, Coalition) = default;

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace coalition

#endif  // COALITION_COALITION_HPP

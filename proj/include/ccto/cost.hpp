#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace ccto {

/// Fuel cost: a finite non-negative integer or Infinite. Addition saturates.
class Cost {
 public:
  using Raw = std::uint64_t;
  static constexpr Raw kInfiniteRaw = std::numeric_limits<Raw>::max();
  static constexpr Raw kMaxFinite = kInfiniteRaw - 1;

  constexpr Cost() = default;
  constexpr explicit Cost(Raw value) : raw_(value) {}

  static constexpr Cost infinite() { return Cost(kInfiniteRaw); }
  static constexpr Cost zero() { return Cost(0); }

  constexpr bool is_finite() const { return raw_ != kInfiniteRaw; }
  constexpr bool is_infinite() const { return raw_ == kInfiniteRaw; }
  constexpr Raw raw() const { return raw_; }
  /// Only meaningful for finite costs.
  constexpr Raw value() const { return raw_; }

  friend constexpr Cost operator+(Cost a, Cost b) {
    if (a.is_infinite() || b.is_infinite()) return infinite();
    if (a.raw_ > kMaxFinite - b.raw_) return infinite();
    return Cost(a.raw_ + b.raw_);
  }
  constexpr Cost& operator+=(Cost other) { return *this = *this + other; }

  friend constexpr auto operator<=>(Cost, Cost) = default;
  friend constexpr bool operator==(Cost, Cost) = default;

  std::string to_string() const { return is_finite() ? std::to_string(raw_) : "inf"; }

 private:
  Raw raw_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, Cost c) { return os << c.to_string(); }

inline constexpr Cost min(Cost a, Cost b) { return b < a ? b : a; }

}  // namespace ccto

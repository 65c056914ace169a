#pragma once

#include <cstdint>
#include <string>

#include "andor/errors.hpp"

namespace andor {

// Costs are fixed-point integers: one unit equals one cost point at the
// default scale. Arc costs must stay at or above the configured minimum
// positive cost (delta, one unit by default).
using CostUnits = std::int64_t;

inline constexpr CostUnits kDefaultMinArcCost = 1;

/// Three-valued cost: nonnegative finite value, infinite, or undefined.
///
/// Addition absorbs upward: undefined + anything = undefined,
/// infinite + finite = infinite. An undefined operand wins even against
/// infinity, which is the conservative reading for costs of structures
/// that stopped short of the host graph's tips.
class ExtendedCost {
public:
  enum class Class : std::uint8_t { Finite, Infinite, Undefined };

  constexpr ExtendedCost() : cls_(Class::Finite), units_(0) {}

  static constexpr ExtendedCost finite(CostUnits units) {
    return ExtendedCost(Class::Finite, units);
  }
  static constexpr ExtendedCost infinite() {
    return ExtendedCost(Class::Infinite, 0);
  }
  static constexpr ExtendedCost undefined() {
    return ExtendedCost(Class::Undefined, 0);
  }

  constexpr Class cls() const { return cls_; }
  constexpr bool is_finite() const { return cls_ == Class::Finite; }
  constexpr bool is_infinite() const { return cls_ == Class::Infinite; }
  constexpr bool is_undefined() const { return cls_ == Class::Undefined; }

  CostUnits units() const {
    if (!is_finite()) throw InvalidArgument("units() on a non-finite cost");
    return units_;
  }

  friend constexpr bool operator==(ExtendedCost a, ExtendedCost b) {
    return a.cls_ == b.cls_ && (a.cls_ != Class::Finite || a.units_ == b.units_);
  }
  friend constexpr bool operator!=(ExtendedCost a, ExtendedCost b) {
    return !(a == b);
  }

  friend ExtendedCost operator+(ExtendedCost a, ExtendedCost b) {
    if (a.is_undefined() || b.is_undefined()) return undefined();
    if (a.is_infinite() || b.is_infinite()) return infinite();
    CostUnits sum = 0;
    if (__builtin_add_overflow(a.units_, b.units_, &sum))
      throw InvalidArgument("cost addition overflow");
    return finite(sum);
  }
  ExtendedCost& operator+=(ExtendedCost other) { return *this = *this + other; }

  /// Total order for containers and best-first queues:
  /// finite values by magnitude, then infinite, then undefined.
  friend constexpr bool total_less(ExtendedCost a, ExtendedCost b) {
    if (a.cls_ != b.cls_)
      return static_cast<int>(a.cls_) < static_cast<int>(b.cls_);
    return a.cls_ == Class::Finite && a.units_ < b.units_;
  }

  std::string to_string() const {
    switch (cls_) {
      case Class::Infinite: return "INF";
      case Class::Undefined: return "UNDEF";
      default: return std::to_string(units_);
    }
  }

private:
  constexpr ExtendedCost(Class c, CostUnits u) : cls_(c), units_(u) {}

  Class cls_;
  CostUnits units_;
};

inline ExtendedCost min_cost(ExtendedCost a, ExtendedCost b) {
  return total_less(b, a) ? b : a;
}

}  // namespace andor

#pragma once

#include <algorithm>
#include <limits>

namespace slabroker {

// One endpoint of a numeric interval. All constraint domains share the floor
// [0, +inf): quantities in SLAs (throughput, latency, cost, percentages) are
// nonnegative, so "x < c" denotes [0, c).
struct IntervalBound {
  double value = 0.0;
  bool open = false;

  friend bool operator==(const IntervalBound&, const IntervalBound&) = default;
};

struct Interval {
  IntervalBound lower{0.0, false};
  IntervalBound upper{std::numeric_limits<double>::infinity(), true};

  friend bool operator==(const Interval&, const Interval&) = default;

  static Interval full() { return {}; }
  static Interval point(double v) { return {{v, false}, {v, false}}; }
  static Interval at_least(double v, bool open = false) {
    return {{v, open}, {std::numeric_limits<double>::infinity(), true}};
  }
  static Interval at_most(double v, bool open = false) { return {{0.0, false}, {v, open}}; }

  bool unbounded_above() const { return upper.value == std::numeric_limits<double>::infinity(); }

  bool empty() const {
    if (lower.value > upper.value) return true;
    return lower.value == upper.value && (lower.open || upper.open);
  }

  bool contains(double x) const {
    if (lower.open ? x <= lower.value : x < lower.value) return false;
    if (upper.open ? x >= upper.value : x > upper.value) return false;
    return true;
  }

  // True when this interval's lower bound admits no value the other's
  // excludes (i.e. is at least as restrictive).
  static bool lower_within(const IntervalBound& a, const IntervalBound& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.open || !b.open;
  }
  static bool upper_within(const IntervalBound& a, const IntervalBound& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.open || !b.open;
  }

  // Empty intervals are a subset of everything.
  bool subset_of(const Interval& other) const {
    if (empty()) return true;
    if (other.empty()) return false;
    return lower_within(lower, other.lower) && upper_within(upper, other.upper);
  }
};

inline Interval intersect(const Interval& a, const Interval& b) {
  Interval out;
  out.lower = Interval::lower_within(a.lower, b.lower) ? a.lower : b.lower;
  out.upper = Interval::upper_within(a.upper, b.upper) ? a.upper : b.upper;
  return out;
}

}  // namespace slabroker

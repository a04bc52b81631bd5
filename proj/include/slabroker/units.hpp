#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "slabroker/diagnostics.hpp"
#include "slabroker/text.hpp"

namespace slabroker {

// Dimension vector over the base magnitudes used by the metric catalog.
// Plain counts are dimensionless, so count-like rates reduce to time^-1.
struct Dimension {
  int8_t time = 0;
  int8_t bytes = 0;
  int8_t notif = 0;
  int8_t usd = 0;
  int8_t month = 0;
  int8_t pct = 0;

  friend bool operator==(const Dimension&, const Dimension&) = default;

  Dimension operator+(const Dimension& o) const {
    return {static_cast<int8_t>(time + o.time),   static_cast<int8_t>(bytes + o.bytes),
            static_cast<int8_t>(notif + o.notif), static_cast<int8_t>(usd + o.usd),
            static_cast<int8_t>(month + o.month), static_cast<int8_t>(pct + o.pct)};
  }
  Dimension operator-(const Dimension& o) const {
    return {static_cast<int8_t>(time - o.time),   static_cast<int8_t>(bytes - o.bytes),
            static_cast<int8_t>(notif - o.notif), static_cast<int8_t>(usd - o.usd),
            static_cast<int8_t>(month - o.month), static_cast<int8_t>(pct - o.pct)};
  }
  bool dimensionless() const { return *this == Dimension{}; }
};

inline std::string dimension_name(const Dimension& d) {
  if (d == Dimension{}) return "count";
  if (d == Dimension{.time = 1}) return "time";
  if (d == Dimension{.bytes = 1}) return "storage";
  if (d == Dimension{.time = -1}) return "rate";
  if (d == Dimension{.time = -1, .bytes = 1}) return "storage rate";
  if (d == Dimension{.time = -1, .notif = 1}) return "notification rate";
  if (d == Dimension{.usd = 1, .month = -1}) return "cost rate";
  if (d == Dimension{.pct = 1}) return "percentage";
  return "composite";
}

// One registered unit. canon_factor converts a constraint quantity into the
// canonical unit of its dimension (time -> ms, storage -> bytes, paper
// convention). eval_factor converts a sample value into the scale used for
// mapping-expression arithmetic (time -> s, storage -> bytes, rates per-s).
struct UnitInfo {
  std::string_view name;
  Dimension dim;
  std::string_view canonical;
  double canon_factor;
  double eval_factor;
};

inline constexpr double kGiB = 1073741824.0;  // 2^30

inline const std::array<UnitInfo, 10>& unit_table() {
  static const std::array<UnitInfo, 10> table = {{
      {"notif/s", {.time = -1, .notif = 1}, "notif/s", 1.0, 1.0},
      {"ms", {.time = 1}, "ms", 1.0, 1e-3},
      {"s", {.time = 1}, "ms", 1000.0, 1.0},
      {"pct", {.pct = 1}, "pct", 1.0, 1.0},
      {"usd/month", {.usd = 1, .month = -1}, "usd/month", 1.0, 1.0},
      {"count", {}, "count", 1.0, 1.0},
      {"bytes", {.bytes = 1}, "bytes", 1.0, 1.0},
      {"bytes/s", {.time = -1, .bytes = 1}, "bytes/s", 1.0, 1.0},
      {"ops/s", {.time = -1}, "ops/s", 1.0, 1.0},
      {"GiB", {.bytes = 1}, "bytes", kGiB, kGiB},
  }};
  return table;
}

inline const UnitInfo* find_unit(std::string_view name) {
  for (const auto& u : unit_table())
    if (u.name == name) return &u;
  return nullptr;
}

inline const UnitInfo& unit_or_throw(std::string_view name, SourcePos pos = {},
                                     const std::string& file = {}) {
  if (const UnitInfo* u = find_unit(name)) return *u;
  throw Error(Error::Kind::unknown_unit, "unknown unit '" + std::string(name) + "'", pos, file);
}

// Dimension of a unit name; "" and "-" denote a dimensionless quantity.
inline Dimension unit_dimension(std::string_view name) {
  if (name.empty() || name == "-") return {};
  return unit_or_throw(name).dim;
}

struct Quantity {
  double value = 0.0;
  std::string unit;  // "" = dimensionless
};

// Converts to the canonical unit of the quantity's dimension. An optional
// "k " prefix on the unit is a x1000 multiplier ("30 k notif/s").
inline Quantity normalize_quantity(const Quantity& q) {
  if (!std::isfinite(q.value))
    throw Error(Error::Kind::non_finite_value, "quantity value is not finite");
  std::string_view unit = q.unit;
  double scale = 1.0;
  if (starts_with(unit, "k ")) {
    scale = 1000.0;
    unit.remove_prefix(2);
  }
  if (unit.empty() || unit == "-") return {q.value * scale, ""};
  const UnitInfo& info = unit_or_throw(unit);
  return {q.value * scale * info.canon_factor, std::string(info.canonical)};
}

// Factor from a unit to the canonical unit of its dimension (monitoring uses
// this to compare samples against normalized constraint intervals).
inline double canonical_factor(std::string_view unit) {
  if (unit.empty() || unit == "-") return 1.0;
  return unit_or_throw(unit).canon_factor;
}

inline double eval_factor(std::string_view unit) {
  if (unit.empty() || unit == "-") return 1.0;
  return unit_or_throw(unit).eval_factor;
}

}  // namespace slabroker

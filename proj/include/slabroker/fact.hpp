#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "slabroker/diagnostics.hpp"
#include "slabroker/interval.hpp"
#include "slabroker/text.hpp"
#include "slabroker/units.hpp"

namespace slabroker {

// --- constraint atoms -------------------------------------------------------
//
// Numeric intervals are stored in the canonical unit of their dimension
// (time in ms, storage in bytes); `unit` names that canonical unit and "" is
// dimensionless. Pattern variables (?x) occur only in antecedent symbol
// equalities and in consequent set insertions.

struct NumericConstraint {
  std::string var;
  Interval interval;
  std::string unit;
  SourcePos pos{};
};

struct SymbolEquality {
  std::string var;
  std::string symbol;   // symbol, or pattern variable name when pattern
  bool pattern = false;
  SourcePos pos{};
};

struct SetMembership {
  std::string element;
  std::string set_var;
  SourcePos pos{};
};

struct SetElement {
  std::string value;    // symbol, or pattern variable name when pattern
  bool pattern = false;
};

// Covers both consequent forms: "S = {a, b}" and "insert x into S". Both
// union their elements into the variable's growing set; insert_form only
// affects rendering. Elements keep file order.
struct SetAssignment {
  std::string set_var;
  std::vector<SetElement> elements;
  bool insert_form = false;
  SourcePos pos{};
};

using SimpleAtom = std::variant<NumericConstraint, SymbolEquality, SetMembership>;

// Negation as failure: holds iff no working-memory fact entails the inner atom.
struct Negated {
  SimpleAtom inner;
  SourcePos pos{};
};

// Antecedent-only disjunction of symbol equalities over one variable.
struct Disjunction {
  std::string var;
  std::vector<std::string> symbols;
  SourcePos pos{};
};

using ConstraintAtom =
    std::variant<NumericConstraint, SymbolEquality, SetMembership, SetAssignment, Negated,
                 Disjunction>;

inline const std::string& atom_var_negated(const Negated& n) {
  return std::visit(
      [](const auto& a) -> const std::string& {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, SetMembership>)
          return a.set_var;
        else
          return a.var;
      },
      n.inner);
}

inline const std::string& atom_var(const ConstraintAtom& atom) {
  return std::visit(
      [](const auto& a) -> const std::string& {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, NumericConstraint> || std::is_same_v<T, SymbolEquality> ||
                      std::is_same_v<T, Disjunction>)
          return a.var;
        else if constexpr (std::is_same_v<T, SetMembership> || std::is_same_v<T, SetAssignment>)
          return a.set_var;
        else
          return atom_var_negated(a);
      },
      atom);
}

// --- facts ------------------------------------------------------------------

// Timestamp 0 marks SLA-origin facts; derived facts carry the derivation
// order. Provenance lists the SLO ids / rule ids that produced the fact.
struct ConstraintFact {
  ConstraintAtom atom;
  std::int64_t timestamp = 0;
  std::vector<std::string> provenance;
};

// --- rendering ---------------------------------------------------------------

enum class RenderStyle {
  display,  // trace/report style: App = E-SilboPS
  dsl,      // reparseable rule syntax: App = "E-SilboPS"
};

inline std::string render_symbol(const std::string& s, RenderStyle style) {
  return style == RenderStyle::dsl ? "\"" + s + "\"" : s;
}

inline std::string render_quantity(double value, const std::string& unit) {
  std::string out = format_number(value);
  if (!unit.empty()) out += " " + unit;
  return out;
}

// Renders a canonical interval back as a comparison. The closed-zero lower
// bound is the domain floor and is left implicit.
inline std::string render_numeric(const NumericConstraint& a) {
  const Interval& iv = a.interval;
  const bool floor_lower = iv.lower == IntervalBound{0.0, false};
  if (!iv.unbounded_above() && !floor_lower && !(iv.lower.value == iv.upper.value)) {
    std::string out = format_number(iv.lower.value);
    out += iv.lower.open ? " < " : " <= ";
    out += a.var;
    out += iv.upper.open ? " < " : " <= ";
    out += format_number(iv.upper.value);
    if (!a.unit.empty()) out += " " + a.unit;
    return out;
  }
  if (!iv.unbounded_above() && iv.lower.value == iv.upper.value && !iv.lower.open &&
      !iv.upper.open)
    return a.var + " = " + render_quantity(iv.upper.value, a.unit);
  if (floor_lower && !iv.unbounded_above())
    return a.var + (iv.upper.open ? " < " : " <= ") + render_quantity(iv.upper.value, a.unit);
  if (iv.unbounded_above())
    return a.var + (iv.lower.open ? " > " : " >= ") + render_quantity(iv.lower.value, a.unit);
  return a.var + " in []";  // unreachable for well-formed atoms
}

inline std::string render_atom(const ConstraintAtom& atom, RenderStyle style);

inline std::string render_simple(const SimpleAtom& atom, RenderStyle style) {
  return std::visit([&](const auto& a) { return render_atom(ConstraintAtom(a), style); }, atom);
}

inline std::string render_atom(const ConstraintAtom& atom, RenderStyle style = RenderStyle::display) {
  return std::visit(
      [&](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, NumericConstraint>) {
          return render_numeric(a);
        } else if constexpr (std::is_same_v<T, SymbolEquality>) {
          if (a.pattern) return a.var + " = ?" + a.symbol;
          return a.var + " = " + render_symbol(a.symbol, style);
        } else if constexpr (std::is_same_v<T, SetMembership>) {
          return render_symbol(a.element, style) + " in " + a.set_var;
        } else if constexpr (std::is_same_v<T, SetAssignment>) {
          if (a.insert_form && a.elements.size() == 1) {
            const SetElement& e = a.elements.front();
            return "insert " + (e.pattern ? "?" + e.value : render_symbol(e.value, style)) +
                   " into " + a.set_var;
          }
          std::string out = a.set_var + " = {";
          for (size_t i = 0; i < a.elements.size(); ++i) {
            if (i) out += ", ";
            out += a.elements[i].pattern ? "?" + a.elements[i].value
                                         : render_symbol(a.elements[i].value, style);
          }
          return out + "}";
        } else if constexpr (std::is_same_v<T, Negated>) {
          return "not " + render_simple(a.inner, style);
        } else {
          std::string out;
          for (size_t i = 0; i < a.symbols.size(); ++i) {
            if (i) out += " or ";
            out += a.var + " = " + render_symbol(a.symbols[i], style);
          }
          return out;
        }
      },
      atom);
}

inline std::string render_fact(const ConstraintFact& fact) { return render_atom(fact.atom); }

// --- entailment --------------------------------------------------------------

inline void check_same_dimension(const NumericConstraint& fact, const NumericConstraint& ant) {
  if (unit_dimension(fact.unit) != unit_dimension(ant.unit))
    throw Error(Error::Kind::dimension_mismatch,
                "incompatible units on variable '" + ant.var + "': fact is in '" +
                    (fact.unit.empty() ? "count" : fact.unit) + "', antecedent in '" +
                    (ant.unit.empty() ? "count" : ant.unit) + "'",
                ant.pos);
}

// Ground fact vs. antecedent atom over the same variable. A numeric fact
// entails a numeric antecedent iff its (nonempty) interval is a subset; a
// set-assignment fact entails a membership atom iff it contains the element.
inline bool entails(const ConstraintAtom& fact, const ConstraintAtom& antecedent) {
  if (const auto* ant = std::get_if<NumericConstraint>(&antecedent)) {
    const auto* f = std::get_if<NumericConstraint>(&fact);
    if (!f) return false;
    check_same_dimension(*f, *ant);
    return !f->interval.empty() && f->interval.subset_of(ant->interval);
  }
  if (const auto* ant = std::get_if<SymbolEquality>(&antecedent)) {
    const auto* f = std::get_if<SymbolEquality>(&fact);
    return f && !f->pattern && !ant->pattern && f->symbol == ant->symbol;
  }
  if (const auto* ant = std::get_if<SetMembership>(&antecedent)) {
    if (const auto* f = std::get_if<SetMembership>(&fact))
      return f->set_var == ant->set_var && f->element == ant->element;
    if (const auto* f = std::get_if<SetAssignment>(&fact)) {
      if (f->set_var != ant->set_var) return false;
      return std::any_of(f->elements.begin(), f->elements.end(),
                         [&](const SetElement& e) { return !e.pattern && e.value == ant->element; });
    }
    return false;
  }
  if (const auto* ant = std::get_if<Disjunction>(&antecedent)) {
    const auto* f = std::get_if<SymbolEquality>(&fact);
    if (!f || f->pattern) return false;
    return std::find(ant->symbols.begin(), ant->symbols.end(), f->symbol) != ant->symbols.end();
  }
  return false;
}

inline bool entails(const ConstraintFact& fact, const ConstraintAtom& antecedent) {
  return entails(fact.atom, antecedent);
}

// --- numeric merge ------------------------------------------------------------

inline std::vector<std::string> merge_provenance(const std::vector<std::string>& a,
                                                 const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& p : b)
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  return out;
}

// Intersection of two numeric facts about one variable. An identical result
// interval keeps the existing fact (and timestamp); the merge then only
// extends provenance. An empty intersection is a contradiction and aborts
// the translation.
inline ConstraintFact merge_numeric(const ConstraintFact& existing,
                                    const ConstraintFact& incoming) {
  const auto& e = std::get<NumericConstraint>(existing.atom);
  const auto& i = std::get<NumericConstraint>(incoming.atom);
  check_same_dimension(i, e);
  Interval merged = intersect(e.interval, i.interval);
  if (merged.empty())
    throw Error(Error::Kind::contradiction,
                "contradictory constraints on '" + e.var + "': " + render_numeric(e) + " (from " +
                    join(existing.provenance, ", ") + ") vs " + render_numeric(i) + " (from " +
                    join(incoming.provenance, ", ") + ")");
  ConstraintFact out;
  if (merged == e.interval) {
    out = existing;
    out.provenance = merge_provenance(existing.provenance, incoming.provenance);
    return out;
  }
  NumericConstraint atom = e;
  atom.interval = merged;
  out.atom = atom;
  out.timestamp = incoming.timestamp;
  out.provenance = merge_provenance(existing.provenance, incoming.provenance);
  return out;
}

}  // namespace slabroker

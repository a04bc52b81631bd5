#pragma once

#include <string>
#include <vector>

#include "slabroker/fact.hpp"

namespace slabroker {

// One production rule: a conjunction of antecedent atoms and an ordered list
// of consequent assertions. Every consequent pattern variable is bound by
// exactly one antecedent symbol equality (checked at parse time).
struct ProductionRule {
  std::string id;
  std::vector<ConstraintAtom> antecedent;
  std::vector<ConstraintAtom> consequent;
  SourcePos pos{};
};

using KnowledgeBase = std::vector<ProductionRule>;

// Parsed SLA: named objectives plus unnamed context facts (application
// descriptors). seed_facts preserves file order for working-memory seeding;
// that order carries no semantics since all SLA facts share timestamp 0.
struct SlaDocument {
  struct Objective {
    std::string id;
    std::vector<ConstraintAtom> atoms;
  };
  struct SeedFact {
    ConstraintAtom atom;
    std::string provenance;  // objective id, or "context"
  };

  std::vector<Objective> objectives;
  std::vector<ConstraintAtom> context_facts;
  std::vector<SeedFact> seed_facts;

  bool empty() const { return seed_facts.empty(); }
};

// Natural ordering for rule identifiers: R2 < R10. Falls back to plain
// string comparison when there is no trailing number.
inline bool natural_id_less(const std::string& a, const std::string& b) {
  auto split_id = [](const std::string& s) {
    size_t i = s.size();
    while (i > 0 && s[i - 1] >= '0' && s[i - 1] <= '9') --i;
    long n = -1;
    if (i < s.size()) n = std::stol(s.substr(i));
    return std::pair<std::string, long>(s.substr(0, i), n);
  };
  auto [pa, na] = split_id(a);
  auto [pb, nb] = split_id(b);
  if (pa != pb) return pa < pb;
  if (na != nb) return na < nb;
  return a < b;
}

}  // namespace slabroker

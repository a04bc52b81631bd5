#include <gtest/gtest.h>

#include <random>

#include "slabroker/fact.hpp"
#include "slabroker/units.hpp"

using namespace slabroker;

namespace {

NumericConstraint num(std::string var, Interval iv, std::string unit = "") {
  return {std::move(var), iv, std::move(unit)};
}

ConstraintFact fact_of(ConstraintAtom atom, std::int64_t ts = 0, std::string prov = "test") {
  return {std::move(atom), ts, {std::move(prov)}};
}

// --- normalize_quantity ------------------------------------------------------

TEST(NormalizeQuantity, ExpandsKiloPrefix) {
  Quantity q = normalize_quantity({30, "k notif/s"});
  EXPECT_DOUBLE_EQ(q.value, 30000);
  EXPECT_EQ(q.unit, "notif/s");
}

TEST(NormalizeQuantity, IdentityOnCanonical) {
  Quantity q = normalize_quantity({0, "ms"});
  EXPECT_DOUBLE_EQ(q.value, 0);
  EXPECT_EQ(q.unit, "ms");
}

TEST(NormalizeQuantity, SecondsToMilliseconds) {
  Quantity q = normalize_quantity({2, "s"});
  EXPECT_DOUBLE_EQ(q.value, 2000);
  EXPECT_EQ(q.unit, "ms");
}

TEST(NormalizeQuantity, GibibytesToBytes) {
  Quantity q = normalize_quantity({4, "GiB"});
  EXPECT_DOUBLE_EQ(q.value, 4.0 * 1073741824.0);
  EXPECT_EQ(q.unit, "bytes");
}

TEST(NormalizeQuantity, UnknownUnit) {
  try {
    normalize_quantity({1, "furlong"});
    FAIL() << "expected unknown_unit";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Error::Kind::unknown_unit);
  }
}

TEST(NormalizeQuantity, Idempotent) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1e6);
  for (const auto& unit : unit_table()) {
    for (int i = 0; i < 50; ++i) {
      Quantity q{dist(rng), std::string(unit.name)};
      Quantity once = normalize_quantity(q);
      Quantity twice = normalize_quantity(once);
      EXPECT_DOUBLE_EQ(once.value, twice.value);
      EXPECT_EQ(once.unit, twice.unit);
    }
  }
}

// --- entails -----------------------------------------------------------------

TEST(Entails, ThroughputFactMeetsWeakerThreshold) {
  // Fact throughput >= 30000 entails antecedent throughput >= 10000.
  auto fact = num("throughput", Interval::at_least(30000), "notif/s");
  auto ant = num("throughput", Interval::at_least(10000), "notif/s");
  EXPECT_TRUE(entails(ConstraintAtom(fact), ConstraintAtom(ant)));
}

TEST(Entails, ReflexiveOnInterval) {
  auto a = num("latency", Interval::at_most(30, /*open=*/true), "ms");
  EXPECT_TRUE(entails(ConstraintAtom(a), ConstraintAtom(a)));
}

TEST(Entails, WiderIntervalDoesNotEntail) {
  // [0, 80) is not a subset of [0, 50].
  auto fact = num("response_time", Interval::at_most(80, true), "ms");
  auto ant = num("response_time", Interval::at_most(50, false), "ms");
  EXPECT_FALSE(entails(ConstraintAtom(fact), ConstraintAtom(ant)));
}

TEST(Entails, DimensionMismatchThrows) {
  auto fact = num("latency", Interval::at_most(30), "ms");
  auto ant = num("latency", Interval::at_most(30), "pct");
  try {
    entails(ConstraintAtom(fact), ConstraintAtom(ant));
    FAIL() << "expected dimension_mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Error::Kind::dimension_mismatch);
  }
}

TEST(Entails, SymbolAndDisjunction) {
  SymbolEquality app{"App", "E-SilboPS"};
  SymbolEquality other{"App", "BeTree"};
  Disjunction dis{"App", {"E-SilboPS", "BeTree"}};
  EXPECT_TRUE(entails(ConstraintAtom(app), ConstraintAtom(app)));
  EXPECT_FALSE(entails(ConstraintAtom(app), ConstraintAtom(other)));
  EXPECT_TRUE(entails(ConstraintAtom(app), ConstraintAtom(dis)));
  EXPECT_FALSE(entails(ConstraintAtom(SymbolEquality{"App", "RabbitMQ"}), ConstraintAtom(dis)));
}

TEST(Entails, SetMembershipAgainstSetFact) {
  SetAssignment regions{"regions", {{"EU_CENTRAL", false}, {"EU_WEST", false}}};
  SetMembership in_set{"EU_WEST", "regions"};
  SetMembership not_in_set{"US_EAST", "regions"};
  EXPECT_TRUE(entails(ConstraintAtom(regions), ConstraintAtom(in_set)));
  EXPECT_FALSE(entails(ConstraintAtom(regions), ConstraintAtom(not_in_set)));
}

TEST(Entails, CaseSensitiveSymbols) {
  SymbolEquality lowercase{"law", "gdpr"};
  SymbolEquality uppercase{"law", "GDPR"};
  EXPECT_FALSE(entails(ConstraintAtom(lowercase), ConstraintAtom(uppercase)));
}

// Randomized interval properties: reflexivity, subset transitivity, and the
// equality case of mutual entailment.
TEST(Entails, IntervalProperties) {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> val(0.0, 100.0);
  std::bernoulli_distribution coin(0.5);

  auto random_interval = [&]() {
    double a = val(rng), b = val(rng);
    if (a > b) std::swap(a, b);
    Interval iv{{a, coin(rng)}, {b, coin(rng)}};
    if (coin(rng)) iv.lower = {0.0, false};
    if (coin(rng)) iv.upper = {std::numeric_limits<double>::infinity(), true};
    return iv;
  };

  int checked = 0;
  for (int i = 0; i < 3000 && checked < 1000; ++i) {
    Interval a = random_interval(), b = random_interval(), c = random_interval();
    if (a.empty()) continue;
    ++checked;
    auto fa = ConstraintAtom(num("x", a));
    auto fb = ConstraintAtom(num("x", b));
    auto fc = ConstraintAtom(num("x", c));
    // reflexivity on ground, nonempty atoms
    EXPECT_TRUE(entails(fa, fa));
    // transitivity of the subset relation
    if (entails(fa, fb) && !b.empty() && entails(fb, fc)) {
      EXPECT_TRUE(entails(fa, fc));
    }
    // mutual entailment only at equality
    if (!b.empty() && entails(fa, fb) && entails(fb, fa)) {
      EXPECT_TRUE(a == b);
    }
  }
  EXPECT_GE(checked, 1000);
}

// --- merge_numeric -----------------------------------------------------------

TEST(MergeNumeric, IntersectsIntervals) {
  auto a = fact_of(num("response_time", Interval::at_most(90), "ms"), 0, "SLO2");
  auto b = fact_of(num("response_time", Interval::at_most(80), "ms"), 3, "R9");
  ConstraintFact merged = merge_numeric(a, b);
  const auto& atom = std::get<NumericConstraint>(merged.atom);
  EXPECT_EQ(atom.interval, Interval::at_most(80));
  EXPECT_EQ(merged.timestamp, 3);
  EXPECT_EQ(merged.provenance, (std::vector<std::string>{"SLO2", "R9"}));
}

TEST(MergeNumeric, IdempotentKeepsExistingTimestamp) {
  auto a = fact_of(num("x", Interval::at_most(80)), 1, "R1");
  auto b = fact_of(num("x", Interval::at_most(80)), 5, "R2");
  ConstraintFact merged = merge_numeric(a, b);
  EXPECT_EQ(std::get<NumericConstraint>(merged.atom).interval, Interval::at_most(80));
  EXPECT_EQ(merged.timestamp, 1);
  EXPECT_EQ(merged.provenance, (std::vector<std::string>{"R1", "R2"}));
}

TEST(MergeNumeric, EmptyIntersectionIsContradiction) {
  // throughput >= 30000 vs throughput < 30000
  auto a = fact_of(num("throughput", Interval::at_least(30000), "notif/s"));
  auto b = fact_of(num("throughput", Interval::at_most(30000, true), "notif/s"));
  try {
    merge_numeric(a, b);
    FAIL() << "expected contradiction";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Error::Kind::contradiction);
  }
}

TEST(MergeNumeric, CommutativeAndSubsetOfInputs) {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> val(0.0, 50.0);
  std::bernoulli_distribution coin(0.5);
  auto random_fact = [&](std::int64_t ts, const char* prov) {
    double a = val(rng), b = val(rng) + 50.0;
    return fact_of(num("x", Interval{{a, coin(rng)}, {b, coin(rng)}}), ts, prov);
  };
  for (int i = 0; i < 1000; ++i) {
    auto a = random_fact(1, "A");
    auto b = random_fact(2, "B");
    ConstraintFact ab = merge_numeric(a, b);
    ConstraintFact ba = merge_numeric(b, a);
    const auto& iab = std::get<NumericConstraint>(ab.atom).interval;
    const auto& iba = std::get<NumericConstraint>(ba.atom).interval;
    EXPECT_TRUE(iab == iba);
    EXPECT_TRUE(iab.subset_of(std::get<NumericConstraint>(a.atom).interval));
    EXPECT_TRUE(iab.subset_of(std::get<NumericConstraint>(b.atom).interval));
    // associativity up to provenance
    auto c = random_fact(3, "C");
    const Interval ic1 =
        std::get<NumericConstraint>(merge_numeric(merge_numeric(a, b), c).atom).interval;
    const Interval ic2 =
        std::get<NumericConstraint>(merge_numeric(a, merge_numeric(b, c)).atom).interval;
    EXPECT_TRUE(ic1 == ic2);
  }
}

// --- interval details --------------------------------------------------------

TEST(Interval, EmptyDetection) {
  EXPECT_TRUE((Interval{{5, false}, {4, false}}.empty()));
  EXPECT_TRUE((Interval{{5, true}, {5, false}}.empty()));
  EXPECT_TRUE((Interval{{5, false}, {5, true}}.empty()));
  EXPECT_FALSE(Interval::point(5).empty());
  EXPECT_FALSE(Interval::full().empty());
}

TEST(Interval, OpenClosedSubsetEdges) {
  // (50, 100] vs [50, 100]
  Interval open_lower{{50, true}, {100, false}};
  Interval closed{{50, false}, {100, false}};
  EXPECT_TRUE(open_lower.subset_of(closed));
  EXPECT_FALSE(closed.subset_of(open_lower));
  EXPECT_TRUE(Interval::point(60).subset_of(open_lower));
  EXPECT_FALSE(Interval::point(50).subset_of(open_lower));
}

TEST(Interval, ContainsRespectsOpenness) {
  Interval iv{{30, false}, {50, true}};  // 30 <= x < 50
  EXPECT_TRUE(iv.contains(30));
  EXPECT_TRUE(iv.contains(49.999));
  EXPECT_FALSE(iv.contains(50));
  EXPECT_FALSE(iv.contains(29.999));
}

// --- rendering ---------------------------------------------------------------

TEST(Render, NumericForms) {
  EXPECT_EQ(render_numeric(num("total_cost", Interval::at_most(200, true), "usd/month")),
            "total_cost < 200 usd/month");
  EXPECT_EQ(render_numeric(num("CPU_usage", Interval::at_most(80), "pct")),
            "CPU_usage <= 80 pct");
  EXPECT_EQ(render_numeric(num("throughput", Interval::at_least(30000), "notif/s")),
            "throughput >= 30000 notif/s");
  EXPECT_EQ(render_numeric(num("number_regions", Interval::point(1))), "number_regions = 1");
  EXPECT_EQ(render_numeric(num("latency", Interval{{30, false}, {50, true}}, "ms")),
            "30 <= latency < 50 ms");
}

TEST(Render, SymbolAndSetForms) {
  EXPECT_EQ(render_atom(SymbolEquality{"App", "E-SilboPS"}), "App = E-SilboPS");
  EXPECT_EQ(render_atom(SymbolEquality{"App", "E-SilboPS"}, RenderStyle::dsl),
            "App = \"E-SilboPS\"");
  EXPECT_EQ(render_atom(SetMembership{"Europe", "continents"}), "Europe in continents");
  EXPECT_EQ(render_atom(SetAssignment{"regions",
                                      {{"EU_NORTH", false}, {"EU_WEST", false}, {"EU_CENTRAL", false}},
                                      false}),
            "regions = {EU_NORTH, EU_WEST, EU_CENTRAL}");
  EXPECT_EQ(render_atom(SetAssignment{"regions", {{"x", true}}, true}), "insert ?x into regions");
  EXPECT_EQ(render_atom(Negated{SymbolEquality{"law", "GDPR"}}, RenderStyle::dsl),
            "not law = \"GDPR\"");
}

}  // namespace

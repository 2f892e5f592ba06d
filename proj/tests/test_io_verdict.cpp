#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "typesem/errors.hpp"
#include "typesem/verdict.hpp"

using namespace typesem;

namespace {

Json parse(const char *text) { return Json::parse(text); }

const char *kZ3 = R"({
  "schema": 1,
  "name": "z3",
  "space": {"type": "finite", "points": ["x1", "x2", "x3"]},
  "generators": [
    {"name": "r", "type": "partial_bijection",
     "map": {"x1": "x2", "x2": "x3", "x3": "x1"}}
  ]
})";

const char *kCuntz2 = R"({
  "schema": 1,
  "name": "cuntz2",
  "space": {"type": "path", "vertices": ["v"],
            "edges": [{"label": "0", "from": "v", "to": "v"},
                      {"label": "1", "from": "v", "to": "v"}]},
  "generators": [
    {"name": "s0", "type": "prefix_exchange", "from": "", "to": "0"},
    {"name": "s1", "type": "prefix_exchange", "from": "", "to": "1"}
  ],
  "budgets": {"depth": 2, "len": 3, "mult": 4, "nmax": 8}
})";

const char *kTwoOrbit = R"({
  "schema": 1,
  "name": "two_orbit",
  "space": {"type": "finite", "points": ["a1", "a2", "b"]},
  "generators": [
    {"name": "s", "type": "partial_bijection", "map": {"a1": "a2", "a2": "a1"}}
  ]
})";

} // namespace

TEST_CASE("model files parse into running models") {
  SUBCASE("finite model with defaults") {
    ActionModel m = model_from_json(parse(kZ3));
    CHECK(m.name == "z3");
    CHECK(m.space->is_finite());
    CHECK(m.sgrp.generator_names() == std::vector<std::string>{"r"});
    CHECK(m.budgets.depth == Budgets{}.depth);
    CHECK(m.budgets.len == Budgets{}.len);
    // The unit defaults to the constant 1 and the samples to the unit.
    CHECK(m.normalize_at.values() ==
          std::vector<ExtNat>{ExtNat(1), ExtNat(1), ExtNat(1)});
    REQUIRE(m.probe_samples.size() == 1);
    CHECK(m.probe_samples[0] == m.normalize_at);
  }

  SUBCASE("path model with explicit budgets") {
    ActionModel m = model_from_json(parse(kCuntz2));
    CHECK(m.space->is_path());
    CHECK(m.budgets.len == 3);
    CHECK(m.sgrp.elements().size() > 2);
  }

  SUBCASE("explicit unit and samples") {
    Json j = parse(kZ3);
    j["unit"] = parse(R"({"values": [2, 0, 0]})");
    j["samples"] = Json::array({parse("[1, 1, 0]")});
    ActionModel m = model_from_json(j);
    CHECK(m.normalize_at.values() ==
          std::vector<ExtNat>{ExtNat(2), ExtNat(0), ExtNat(0)});
    REQUIRE(m.probe_samples.size() == 1);
    CHECK(m.probe_samples[0].values() ==
          std::vector<ExtNat>{ExtNat(1), ExtNat(1), ExtNat(0)});
  }
}

TEST_CASE("schema violations name the offending field") {
  SUBCASE("wrong schema version") {
    Json j = parse(kZ3);
    j["schema"] = 2;
    CHECK_THROWS_WITH_AS(model_from_json(j), "model.schema: expected 1",
                         SchemaError);
  }
  SUBCASE("unknown top level field") {
    Json j = parse(kZ3);
    j["extra"] = true;
    CHECK_THROWS_WITH_AS(model_from_json(j), "model.extra: unknown field",
                         SchemaError);
  }
  SUBCASE("unknown point label in a generator map") {
    Json j = parse(kZ3);
    j["generators"][0]["map"]["x9"] = "x1";
    CHECK_THROWS_WITH_AS(
        model_from_json(j),
        "model.generators[0].map: \"x9\" is not a point of the space",
        SchemaError);
  }
  SUBCASE("duplicate generator names") {
    Json j = parse(kZ3);
    j["generators"].push_back(j["generators"][0]);
    CHECK_THROWS_WITH_AS(
        model_from_json(j),
        "model.generators[1].name: generator names must be nonempty and "
        "distinct",
        SchemaError);
  }
  SUBCASE("generator kind must match the space kind") {
    Json j = parse(kZ3);
    j["generators"][0] = parse(
        R"({"name": "s", "type": "prefix_exchange", "from": "", "to": "0"})");
    CHECK_THROWS_AS(model_from_json(j), SchemaError);
  }
  SUBCASE("non-injective maps surface as model errors") {
    Json j = parse(kZ3);
    j["generators"][0]["map"] = parse(R"({"x1": "x2", "x3": "x2"})");
    CHECK_THROWS_AS(model_from_json(j), ModelError);
  }
  SUBCASE("missing required fields carry their path") {
    Json j = parse(kZ3);
    j.erase("name");
    CHECK_THROWS_WITH_AS(model_from_json(j), "model.name: missing",
                         SchemaError);
  }
}

TEST_CASE("function and budget literals") {
  ActionModel fin = model_from_json(parse(kZ3));
  ActionModel path = model_from_json(parse(kCuntz2));

  SUBCASE("bare arrays and value objects agree") {
    LscFun a = lsc_from_text(fin.space, "[1, 2, 0]");
    LscFun b = lsc_from_text(fin.space, R"({"values": [1, 2, 0]})");
    CHECK(a == b);
    CHECK(a.values()[1] == ExtNat(2));
  }
  SUBCASE("infinity spells inf") {
    LscFun a = lsc_from_text(fin.space, R"([1, "inf", 0])");
    CHECK(a.values()[1].is_infinite());
    CHECK_THROWS_AS(lsc_from_text(fin.space, R"([1, "oo", 0])"), SchemaError);
    CHECK_THROWS_AS(lsc_from_text(fin.space, "[1, -2, 0]"), SchemaError);
  }
  SUBCASE("cylinder values on the path space") {
    LscFun f = lsc_from_text(
        path.space,
        R"({"cylinders": [{"word": "0", "value": 1}, {"word": "10", "value": 2}]})");
    CHECK(f.value_on_cylinder("00") == ExtNat(1));
    CHECK(f.value_on_cylinder("10") == ExtNat(2));
    CHECK(f.value_on_cylinder("11") == ExtNat(0));
    CHECK_THROWS_AS(
        lsc_from_text(path.space, R"({"cylinders": [{"word": "2", "value": 1}]})"),
        SchemaError);
    // Overlapping words would make the values ambiguous.
    CHECK_THROWS_AS(
        lsc_from_text(
            path.space,
            R"({"cylinders": [{"word": "", "value": 1}, {"word": "0", "value": 2}]})"),
        ModelError);
  }
  SUBCASE("the array form needs the right length") {
    CHECK_THROWS_WITH_AS(lsc_from_text(fin.space, "[1, 2]"),
                         "function argument: expected 3 values, got 2",
                         SchemaError);
  }
  SUBCASE("budget strings patch a base") {
    Budgets base;
    Budgets b = budgets_from_text("len=3,nmax=2", base);
    CHECK(b.len == 3);
    CHECK(b.nmax == 2);
    CHECK(b.depth == base.depth);
    CHECK(b.mult == base.mult);
    CHECK_THROWS_AS(budgets_from_text("len", base), SchemaError);
    CHECK_THROWS_AS(budgets_from_text("len=x", base), SchemaError);
    CHECK_THROWS_AS(budgets_from_text("cap=3", base), SchemaError);
  }
}

TEST_CASE("serialized functions and states round trip") {
  ActionModel fin = model_from_json(parse(kZ3));
  ActionModel path = model_from_json(parse(kCuntz2));

  SUBCASE("finite functions") {
    LscFun f = lsc_from_text(fin.space, R"([1, "inf", 0])");
    Json j = lsc_to_json(f);
    CHECK(lsc_from_json(fin.space, j, "t") == f);
    CHECK(j.dump() == R"({"values":[1,"inf",0]})");
  }
  SUBCASE("path functions keep their cylinders in shortlex order") {
    LscFun f = lsc_from_text(
        path.space,
        R"({"cylinders": [{"word": "00", "value": 1}, {"word": "1", "value": 2}]})");
    Json j = lsc_to_json(f);
    CHECK(lsc_from_json(path.space, j, "t") == f);
    CHECK(j.dump() ==
          R"({"cylinders":[{"word":"1","value":2},{"word":"00","value":1}]})");
  }
  SUBCASE("states follow the pinned shape") {
    TarskiResult t = tarski_test(fin.normalize_at, fin);
    REQUIRE(t.kind == TarskiResult::Kind::StateExists);
    Json j = state_to_json(*t.state);
    CHECK(j.dump() ==
          R"({"weights":{"x1":"1/3","x2":"1/3","x3":"1/3"},)"
          R"("normalized_at":{"values":[1,1,1]},"value":"1"})");
  }
  SUBCASE("tri labels are capitalized") {
    CHECK(tri_label(Tri::Yes) == "Yes");
    CHECK(tri_label(Tri::No) == "No");
    CHECK(tri_label(Tri::Unknown) == "Unknown");
  }
}

TEST_CASE("analyze pins the corpus outcomes") {
  SUBCASE("the rotation is stably finite with the uniform state") {
    ActionModel m = model_from_json(parse(kZ3));
    Verdict v = analyze(m);
    CHECK(v.outcome == Verdict::Outcome::StablyFinite);
    REQUIRE(v.state.has_value());
    for (const auto &[label, r] : v.state->weights_by_label())
      CHECK(r == Rat(1, 3));
    CHECK(verify_state(m, *v.state));
    CHECK(!v.witness.has_value());
  }

  SUBCASE("the binary shift is purely infinite with a doubling witness") {
    ActionModel m = model_from_json(parse(kCuntz2));
    Verdict v = analyze(m);
    CHECK(v.outcome == Verdict::Outcome::PurelyInfinite);
    CHECK(v.minimal.status == Tri::Yes);
    CHECK(v.topologically_free.status == Tri::Yes);
    CHECK(v.closed_action.status == Tri::Yes);
    CHECK(v.probe_gate == Tri::Yes);
    REQUIRE(v.witness.has_value());
    LscFun two = lsc_add(m.normalize_at, m.normalize_at);
    CHECK(apply_witness(*v.witness, two, m.normalize_at).ok);
    CHECK(!v.state.has_value());
  }

  SUBCASE("a proper invariant open set stops the pipeline") {
    ActionModel m = model_from_json(parse(kTwoOrbit));
    Verdict v = analyze(m);
    CHECK(v.outcome == Verdict::Outcome::HypothesesNotMet);
    REQUIRE(!v.reasons.empty());
    CHECK(v.reasons[0].find("minimality") != std::string::npos);
    CHECK(!v.state.has_value());
    CHECK(!v.witness.has_value());
  }

  SUBCASE("a zero unit is rejected up front") {
    Json j = parse(kZ3);
    j["unit"] = parse("[0, 0, 0]");
    ActionModel m = model_from_json(j);
    CHECK_THROWS_AS(analyze(m), ModelError);
  }

  SUBCASE("an infinite unit is rejected up front") {
    Json j = parse(kZ3);
    j["unit"] = parse(R"([1, "inf", 1])");
    ActionModel m = model_from_json(j);
    CHECK_THROWS_AS(analyze(m), ModelError);
  }
}

TEST_CASE("verdict reports are deterministic") {
  ActionModel m = model_from_json(parse(kCuntz2));
  Verdict v1 = analyze(m);
  Verdict v2 = analyze(m);
  std::string r1 = dump_report(verdict_to_json(m, v1));
  std::string r2 = dump_report(verdict_to_json(m, v2));
  CHECK(r1 == r2);
  CHECK(r1.back() == '\n');

  Json j = Json::parse(r1);
  CHECK(j["schema"] == 1);
  CHECK(j["model"] == "cuntz2");
  CHECK(j["outcome"] == "PurelyInfinite");
  CHECK(j["certificate"]["type"] == "paradox");
  CHECK(j["certificate"]["k"] == 2);
  CHECK(j["certificate"]["l"] == 1);
  // Key order is part of the report contract.
  CHECK(r1.find("\"schema\"") < r1.find("\"model\""));
  CHECK(r1.find("\"model\"") < r1.find("\"hypotheses\""));
  CHECK(r1.find("\"hypotheses\"") < r1.find("\"outcome\""));

  std::string s = verdict_summary(m, v1);
  CHECK(s.find("PurelyInfinite") != std::string::npos);
  CHECK(s.find("cuntz2") != std::string::npos);
}

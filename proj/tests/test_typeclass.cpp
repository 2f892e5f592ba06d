#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "typesem/errors.hpp"
#include "typesem/orbit.hpp"
#include "typesem/typeclass.hpp"

using namespace typesem;

namespace {

ActionModel make_model(SpacePtr space, std::vector<Mover> gens,
                       std::vector<std::string> names, Budgets b = {}) {
  auto sgrp =
      InverseSemigroup::closure(space, std::move(gens), std::move(names), b);
  return ActionModel{"test", space, std::move(sgrp), b,
                     LscFun::indicator(OpenSet::full_set(space)), {}};
}

ActionModel z3_model() {
  auto sp = BaseSpace::make_finite({"x1", "x2", "x3"});
  return make_model(sp, {Mover::finite_map(sp, {1, 2, 0})}, {"r"});
}

ActionModel cuntz2_model() {
  auto sp = BaseSpace::make_path({"v"}, {{"0", "v", "v"}, {"1", "v", "v"}});
  Budgets b;
  b.len = 4;
  return make_model(sp,
                    {Mover::prefix_exchange(sp, "", "0"),
                     Mover::prefix_exchange(sp, "", "1")},
                    {"s0", "s1"}, b);
}

ActionModel loop_model() {
  auto sp = BaseSpace::make_path({"v"}, {{"a", "v", "v"}});
  return make_model(sp, {Mover::prefix_exchange(sp, "", "a")}, {"sa"});
}

LscFun constant(const SpacePtr &sp, std::uint64_t k) {
  return LscFun::indicator(OpenSet::full_set(sp)).scaled(ExtNat(k));
}

LscFun fin(const SpacePtr &sp, std::uint64_t a, std::uint64_t b,
           std::uint64_t c) {
  return LscFun::of_values(sp, {ExtNat(a), ExtNat(b), ExtNat(c)});
}

} // namespace

TEST_CASE("classes over a finite space reduce to orbit mass keys") {
  auto m = z3_model();
  auto sp = m.space;

  SUBCASE("equal masses mean equal classes") {
    auto a = class_of(fin(sp, 1, 1, 1), m);
    auto b = class_of(fin(sp, 2, 1, 0), m);
    REQUIRE(a.has_orbit_key());
    CHECK(a.orbit_key() == std::vector<std::uint64_t>{3});
    CHECK(b.orbit_key() == std::vector<std::uint64_t>{3});
    CHECK(class_eq(a, b, m) == Tri::Yes);
    CHECK(class_leq(a, b, m) == Tri::Yes);
  }
  SUBCASE("strictly larger mass does not fit below") {
    auto small = class_of(fin(sp, 0, 1, 0), m);
    auto large = class_of(fin(sp, 2, 0, 0), m);
    CHECK(class_leq(small, large, m) == Tri::Yes);
    CHECK(class_leq(large, small, m) == Tri::No);
    CHECK(class_eq(small, large, m) == Tri::No);
  }
  SUBCASE("keys follow orbit structure") {
    auto sp2 = BaseSpace::make_finite({"a1", "a2", "b"});
    auto m2 = make_model(sp2, {Mover::finite_map(sp2, {1, 0, -1})}, {"swap"});
    auto cls = class_of(LscFun::of_values(sp2, {ExtNat(1), ExtNat(0), ExtNat(2)}), m2);
    CHECK(cls.orbit_key() == std::vector<std::uint64_t>{1, 2});
  }
  SUBCASE("infinite representatives are rejected") {
    CHECK_THROWS_AS(
        class_of(LscFun::of_values(
                     sp, {ExtNat::infinity(), ExtNat(0), ExtNat(0)}),
                 m),
        ModelError);
  }
  SUBCASE("zero class is least and a singleton") {
    auto zero = class_of(LscFun::zero(sp), m);
    auto one = class_of(fin(sp, 1, 0, 0), m);
    CHECK(class_leq(zero, one, m) == Tri::Yes);
    CHECK(class_leq(one, zero, m) == Tri::No);
    CHECK(class_eq(class_add(zero, one, m), one, m) == Tri::Yes);
  }
}

TEST_CASE("classes over the binary shift are compared through the engine") {
  auto m = cuntz2_model();
  auto sp = m.space;
  LscFun z0 = LscFun::indicator(OpenSet::of_words(sp, {"0"}));
  LscFun z1 = LscFun::indicator(OpenSet::of_words(sp, {"1"}));

  SUBCASE("a cylinder class equals the full class") {
    auto a = class_of(z0, m);
    auto b = class_of(constant(sp, 1), m);
    CHECK_FALSE(a.has_orbit_key());
    CHECK_THROWS_AS(a.orbit_key(), ModelError);
    CHECK(class_eq(a, b, m) == Tri::Yes);
  }
  SUBCASE("mover invariance of classes") {
    CHECK(class_eq(class_of(z0, m), class_of(z1, m), m) == Tri::Yes);
  }
  SUBCASE("zero stays a singleton without any state certificate") {
    auto zero = class_of(LscFun::zero(sp), m);
    auto one = class_of(constant(sp, 1), m);
    CHECK(class_leq(one, zero, m) == Tri::No);
    CHECK(class_leq(zero, one, m) == Tri::Yes);
  }
  SUBCASE("addition is monotone on samples") {
    auto a = class_of(z0, m);
    auto b = class_of(constant(sp, 1), m);
    auto c = class_of(constant(sp, 2), m);
    REQUIRE(class_leq(a, b, m) == Tri::Yes);
    CHECK(class_leq(class_add(a, c, m), class_add(b, c, m), m) == Tri::Yes);
  }
}

TEST_CASE("paradoxicality decisions") {
  SUBCASE("the binary shift doubles") {
    auto m = cuntz2_model();
    auto d = is_kl_paradoxical(constant(m.space, 1), 2, 1, m);
    REQUIRE(d.outcome == Decision::Outcome::Yes);
    CHECK(apply_witness(*d.witness, constant(m.space, 2), constant(m.space, 1))
              .ok);
  }
  SUBCASE("finite spaces never shrink") {
    auto m = z3_model();
    auto d = is_kl_paradoxical(fin(m.space, 1, 1, 1), 2, 1, m);
    REQUIRE(d.outcome == Decision::Outcome::No);
    CHECK(d.mass_certificate.has_value());
  }
  SUBCASE("the single loop is measured") {
    auto m = loop_model();
    auto d = is_kl_paradoxical(constant(m.space, 1), 2, 1, m);
    REQUIRE(d.outcome == Decision::Outcome::No);
    CHECK(d.state_certificate.has_value());
  }
  SUBCASE("contract errors") {
    auto m = z3_model();
    LscFun one = fin(m.space, 1, 1, 1);
    CHECK_THROWS_AS(is_kl_paradoxical(one, 1, 1, m), ModelError);
    CHECK_THROWS_AS(is_kl_paradoxical(one, 1, 2, m), ModelError);
    CHECK_THROWS_AS(is_kl_paradoxical(one, 2, 0, m), ModelError);
    CHECK_THROWS_AS(is_kl_paradoxical(LscFun::zero(m.space), 2, 1, m),
                    ModelError);
  }
}

TEST_CASE("tarski test returns exactly one certificate") {
  SUBCASE("rotation carries the uniform state") {
    auto m = z3_model();
    auto r = tarski_test(fin(m.space, 1, 1, 1), m);
    REQUIRE(r.kind == TarskiResult::Kind::StateExists);
    REQUIRE(r.state.has_value());
    CHECK(r.state->weights() ==
          std::vector<Rat>{Rat(1, 3), Rat(1, 3), Rat(1, 3)});
    CHECK_FALSE(r.witness.has_value());
  }
  SUBCASE("the binary shift is paradoxical at the first level") {
    auto m = cuntz2_model();
    auto r = tarski_test(constant(m.space, 1), m);
    REQUIRE(r.kind == TarskiResult::Kind::Paradoxical);
    CHECK(r.n == 1);
    REQUIRE(r.witness.has_value());
    CHECK(apply_witness(*r.witness, constant(m.space, 2),
                        constant(m.space, 1))
              .ok);
    CHECK_FALSE(r.state.has_value());
  }
  SUBCASE("the single loop carries its invariant measure") {
    auto m = loop_model();
    auto r = tarski_test(constant(m.space, 1), m);
    CHECK(r.kind == TarskiResult::Kind::StateExists);
  }
  SUBCASE("zero is excluded") {
    auto m = z3_model();
    CHECK_THROWS_AS(tarski_test(LscFun::zero(m.space), m), ModelError);
  }
}

TEST_CASE("plain paradox probe") {
  SUBCASE("finite models are vacuously fine") {
    auto m = z3_model();
    auto rep = plain_paradox_probe(
        m, {fin(m.space, 1, 1, 1), fin(m.space, 2, 0, 1)}, 4);
    CHECK_FALSE(rep.violation_found);
    REQUIRE(rep.entries.size() == 2);
    for (const auto &e : rep.entries) {
      CHECK(e.first_n == 0);
      CHECK(e.status == "no paradox within n_max");
    }
  }
  SUBCASE("every paradoxical sample on the shift is (2,1)-paradoxical") {
    auto m = cuntz2_model();
    auto sp = m.space;
    auto rep = plain_paradox_probe(
        m,
        {constant(sp, 1), LscFun::indicator(OpenSet::of_words(sp, {"0"})),
         constant(sp, 2)},
        3);
    CHECK_FALSE(rep.violation_found);
    REQUIRE(rep.entries.size() == 3);
    for (const auto &e : rep.entries) {
      CHECK(e.first_n == 1);
      CHECK(e.two_one == Tri::Yes);
      REQUIRE(e.witness.has_value());
    }
    CHECK(rep.note.find("every paradoxical sample") != std::string::npos);
  }
  SUBCASE("empty and degenerate samples") {
    auto m = z3_model();
    auto rep = plain_paradox_probe(m, {}, 4);
    CHECK_FALSE(rep.violation_found);
    CHECK(rep.entries.empty());
    auto rep2 = plain_paradox_probe(m, {LscFun::zero(m.space)}, 4);
    CHECK(rep2.entries[0].status == "skipped: zero sample");
  }
}

TEST_CASE("minimality transfers covering numbers to class bounds") {
  auto m = z3_model();
  auto sp = m.space;
  REQUIRE(is_minimal(m).status == Tri::Yes);
  LscFun x = fin(sp, 1, 1, 1);
  LscFun y = fin(sp, 1, 0, 0);
  auto cov = covering_number(x, y, m);
  REQUIRE(cov.status == Tri::Yes);
  CHECK(cov.m == 3);
  auto lhs = class_of(x, m);
  auto rhs = class_of(y.scaled(ExtNat(static_cast<std::uint64_t>(cov.m))), m);
  CHECK(class_leq(lhs, rhs, m) == Tri::Yes);
}

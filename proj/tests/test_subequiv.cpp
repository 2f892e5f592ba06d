#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "typesem/errors.hpp"
#include "typesem/subequiv.hpp"

using namespace typesem;

namespace {

ActionModel make_model(SpacePtr space, std::vector<Mover> gens,
                       std::vector<std::string> names, Budgets b = {}) {
  auto sgrp =
      InverseSemigroup::closure(space, std::move(gens), std::move(names), b);
  return ActionModel{"test", space, std::move(sgrp), b,
                     LscFun::indicator(OpenSet::full_set(space)), {}};
}

SpacePtr three_points() { return BaseSpace::make_finite({"x1", "x2", "x3"}); }

ActionModel z3_model() {
  auto sp = three_points();
  return make_model(sp, {Mover::finite_map(sp, {1, 2, 0})}, {"r"});
}

SpacePtr binary_graph() {
  return BaseSpace::make_path({"v"}, {{"0", "v", "v"}, {"1", "v", "v"}});
}

ActionModel cuntz2_model(int len = 4) {
  auto sp = binary_graph();
  Budgets b;
  b.len = len;
  return make_model(sp,
                    {Mover::prefix_exchange(sp, "", "0"),
                     Mover::prefix_exchange(sp, "", "1")},
                    {"s0", "s1"}, b);
}

LscFun constant(const SpacePtr &sp, std::uint64_t k) {
  return LscFun::indicator(OpenSet::full_set(sp)).scaled(ExtNat(k));
}

} // namespace

TEST_CASE("apply_witness re-checks the inequalities from scratch") {
  auto sp = binary_graph();
  Mover s0 = Mover::prefix_exchange(sp, "", "0");
  Mover s1 = Mover::prefix_exchange(sp, "", "1");
  OpenSet whole = OpenSet::full_set(sp);

  SUBCASE("valid witness for 2*1_X below 1_X") {
    TransportWitness w{{{whole, s0, 1}, {whole, s1, 1}}};
    auto rep = apply_witness(w, constant(sp, 2), constant(sp, 1));
    CHECK(rep.ok);
    CHECK(rep.failures.empty());
  }
  SUBCASE("overlapping images overfill H at a named cylinder") {
    TransportWitness w{{{whole, s0, 2}}};
    auto rep = apply_witness(w, constant(sp, 2), constant(sp, 1));
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.failures.size() == 1);
    CHECK(rep.failures[0].find("overfill") != std::string::npos);
    CHECK(rep.failures[0].find("Z(0") != std::string::npos);
  }
  SUBCASE("empty witness certifies the zero function") {
    TransportWitness w;
    CHECK(apply_witness(w, LscFun::zero(sp), constant(sp, 1)).ok);
    CHECK_FALSE(apply_witness(w, constant(sp, 1), constant(sp, 1)).ok);
  }
  SUBCASE("coverage failures name the cell") {
    TransportWitness w{{{OpenSet::of_words(sp, {"0"}), s0, 1}}};
    auto rep = apply_witness(w, constant(sp, 1), constant(sp, 2));
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.failures.size() == 1);
    CHECK(rep.failures[0].find("coverage misses F at Z(1") !=
          std::string::npos);
  }
  SUBCASE("pieces must sit inside the mover's domain") {
    auto fsp = three_points();
    Mover partial = Mover::finite_map(fsp, {1, -1, -1});
    TransportWitness w{{{OpenSet::of_points(fsp, {"x1", "x2"}), partial, 1}}};
    auto rep =
        apply_witness(w, LscFun::of_values(fsp, {ExtNat(1), ExtNat(0), ExtNat(0)}),
                      constant(fsp, 1));
    CHECK_FALSE(rep.ok);
    CHECK(rep.failures[0].find("item 0") != std::string::npos);
    CHECK(rep.failures[0].find("dom") != std::string::npos);
  }
  SUBCASE("nonpositive multiplicity is rejected") {
    TransportWitness w{{{whole, s0, 0}}};
    auto rep = apply_witness(w, LscFun::zero(sp), constant(sp, 1));
    CHECK_FALSE(rep.ok);
    CHECK(rep.failures[0].find("multiplicity") != std::string::npos);
  }
}

TEST_CASE("decide_subequiv is exact on finite spaces") {
  auto m = z3_model();
  auto sp = m.space;
  auto fn = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return LscFun::of_values(sp, {ExtNat(a), ExtNat(b), ExtNat(c)});
  };

  SUBCASE("pointwise dominance yields the identity witness") {
    auto d = decide_subequiv(fn(1, 0, 1), fn(1, 1, 1), m, m.budgets);
    REQUIRE(d.outcome == Decision::Outcome::Yes);
    REQUIRE(d.witness.has_value());
    REQUIRE(d.witness->items.size() == 2);
    for (const auto &it : d.witness->items) {
      CHECK(it.mover == m.sgrp.unit());
      CHECK(it.mult == 1);
    }
    CHECK(apply_witness(*d.witness, fn(1, 0, 1), fn(1, 1, 1)).ok);
  }
  SUBCASE("orbit mass violation is an unconditional No") {
    auto d = decide_subequiv(fn(2, 0, 0), fn(0, 1, 0), m, m.budgets);
    REQUIRE(d.outcome == Decision::Outcome::No);
    REQUIRE(d.mass_certificate.has_value());
    CHECK(d.mass_certificate->f_mass == ExtNat(2));
    CHECK(d.mass_certificate->h_mass == ExtNat(1));
    CHECK(d.mass_certificate->orbit_points ==
          std::vector<std::string>{"x1", "x2", "x3"});
    CHECK(d.note.find("mass 2") != std::string::npos);
    CHECK_FALSE(d.witness.has_value());
  }
  SUBCASE("transport across the orbit succeeds when mass fits") {
    auto d = decide_subequiv(fn(2, 0, 0), fn(0, 1, 1), m, m.budgets);
    REQUIRE(d.outcome == Decision::Outcome::Yes);
    CHECK(apply_witness(*d.witness, fn(2, 0, 0), fn(0, 1, 1)).ok);
  }
  SUBCASE("infinite supply needs an infinite sink in its orbit") {
    LscFun F = LscFun::of_values(sp, {ExtNat::infinity(), ExtNat(0), ExtNat(0)});
    LscFun H = LscFun::of_values(sp, {ExtNat(0), ExtNat::infinity(), ExtNat(0)});
    auto d = decide_subequiv(F, H, m, m.budgets);
    REQUIRE(d.outcome == Decision::Outcome::Yes);
    CHECK(d.clip_level == 1);
    CHECK(apply_witness(*d.witness, F.clipped(1), H).ok);

    auto bad = decide_subequiv(F, fn(3, 3, 3), m, m.budgets);
    REQUIRE(bad.outcome == Decision::Outcome::No);
    REQUIRE(bad.mass_certificate.has_value());
    CHECK(bad.mass_certificate->f_mass.is_infinite());
  }
  SUBCASE("mass stays within its own orbit") {
    auto sp2 = BaseSpace::make_finite({"a1", "a2", "b"});
    auto m2 = make_model(sp2, {Mover::finite_map(sp2, {1, 0, -1})}, {"swap"});
    LscFun F = LscFun::of_values(sp2, {ExtNat(0), ExtNat(0), ExtNat(1)});
    LscFun H = LscFun::of_values(sp2, {ExtNat(1), ExtNat(1), ExtNat(0)});
    auto d = decide_subequiv(F, H, m2, m2.budgets);
    REQUIRE(d.outcome == Decision::Outcome::No);
    REQUIRE(d.mass_certificate.has_value());
    CHECK(d.mass_certificate->orbit_points == std::vector<std::string>{"b"});
  }
  SUBCASE("contract errors") {
    Budgets zero;
    zero.mult = 0;
    CHECK_THROWS_AS(decide_subequiv(fn(1, 0, 0), fn(1, 0, 0), m, zero),
                    ModelError);
    auto other = cuntz2_model();
    CHECK_THROWS_AS(decide_subequiv(constant(other.space, 1),
                                    constant(other.space, 1), m, m.budgets),
                    ModelError);
  }
}

TEST_CASE("decide_subequiv transport on the binary shift") {
  auto m = cuntz2_model();
  auto sp = m.space;
  Mover s0 = Mover::prefix_exchange(sp, "", "0");
  Mover s1 = Mover::prefix_exchange(sp, "", "1");

  SUBCASE("two copies of the whole space fit into one") {
    auto d = decide_subequiv(constant(sp, 2), constant(sp, 1), m, m.budgets);
    REQUIRE(d.outcome == Decision::Outcome::Yes);
    REQUIRE(d.witness.has_value());
    REQUIRE(d.witness->items.size() == 2);
    CHECK(d.witness->items[0].piece == OpenSet::full_set(sp));
    CHECK(d.witness->items[0].mover == s0);
    CHECK(d.witness->items[0].mult == 1);
    CHECK(d.witness->items[1].piece == OpenSet::full_set(sp));
    CHECK(d.witness->items[1].mover == s1);
    CHECK(d.witness->items[1].mult == 1);
  }
  SUBCASE("three copies also fit") {
    auto d = decide_subequiv(constant(sp, 3), constant(sp, 1), m, m.budgets);
    REQUIRE(d.outcome == Decision::Outcome::Yes);
    CHECK(apply_witness(*d.witness, constant(sp, 3), constant(sp, 1)).ok);
  }
  SUBCASE("cylinders move both ways") {
    LscFun z0 = LscFun::indicator(OpenSet::of_words(sp, {"0"}));
    LscFun z1 = LscFun::indicator(OpenSet::of_words(sp, {"1"}));
    CHECK(decide_subequiv(z0, z1, m, m.budgets).outcome ==
          Decision::Outcome::Yes);
    CHECK(decide_subequiv(z1, z0, m, m.budgets).outcome ==
          Decision::Outcome::Yes);
    CHECK(decide_subequiv(z0, z0, m, m.budgets).outcome ==
          Decision::Outcome::Yes);
  }
  SUBCASE("infinite values ride into the infinite region") {
    LscFun F = LscFun::of_cylinders(sp, {{"0", ExtNat::infinity()}});
    LscFun H = constant(sp, 1).scaled(ExtNat::infinity());
    auto d = decide_subequiv(F, H, m, m.budgets);
    REQUIRE(d.outcome == Decision::Outcome::Yes);
    CHECK(d.clip_level == 1);
    CHECK(apply_witness(*d.witness, F.clipped(1), H).ok);

    auto u = decide_subequiv(F, constant(sp, 1), m, m.budgets);
    CHECK(u.outcome == Decision::Outcome::Unknown);
    CHECK(u.note.find("infinite") != std::string::npos);
  }
  SUBCASE("budget exhaustion without a state is Unknown") {
    auto tight = cuntz2_model(1);
    LscFun H = LscFun::indicator(OpenSet::of_words(sp, {"00"}));
    auto d = decide_subequiv(constant(sp, 1), H, tight, tight.budgets);
    CHECK(d.outcome == Decision::Outcome::Unknown);
    CHECK(d.note.find("no witness within budgets") != std::string::npos);
    CHECK(d.note.find("len=1") != std::string::npos);
    auto wide = decide_subequiv(constant(sp, 1), H, m, m.budgets);
    CHECK(wide.outcome == Decision::Outcome::Yes);
  }
}

TEST_CASE("decide_subequiv upgrades exhaustion with a separating state") {
  auto sp = BaseSpace::make_path({"u", "w"}, {{"a", "u", "u"}, {"b", "w", "w"}});
  auto m = make_model(sp,
                      {Mover::prefix_exchange(sp, "", "a"),
                       Mover::prefix_exchange(sp, "", "b")},
                      {"sa", "sb"});
  LscFun za = LscFun::indicator(OpenSet::of_words(sp, {"a"}));
  LscFun zb = LscFun::indicator(OpenSet::of_words(sp, {"b"}));

  SUBCASE("mass cannot cross components") {
    auto d = decide_subequiv(za, zb, m, m.budgets);
    REQUIRE(d.outcome == Decision::Outcome::No);
    REQUIRE(d.state_certificate.has_value());
    const StateWitness &nu = *d.state_certificate;
    CHECK(nu.eval(za) == ExtRat{false, 1});
    CHECK(nu.eval(zb) == ExtRat{false, 0});
    CHECK(d.note.find("nu(F)") != std::string::npos);
  }
  SUBCASE("a single loop admits no doubling") {
    auto lsp = BaseSpace::make_path({"v"}, {{"a", "v", "v"}});
    auto lm = make_model(lsp, {Mover::prefix_exchange(lsp, "", "a")}, {"sa"});
    auto d =
        decide_subequiv(constant(lsp, 2), constant(lsp, 1), lm, lm.budgets);
    REQUIRE(d.outcome == Decision::Outcome::No);
    REQUIRE(d.state_certificate.has_value());
    CHECK(d.state_certificate->eval(constant(lsp, 1)) == ExtRat{false, Rat(1, 2)});
  }
}

TEST_CASE("brute force oracle agrees and refuses big instances") {
  auto m = z3_model();
  auto sp = m.space;

  SUBCASE("full sweep of small finite instances") {
    int checked = 0;
    for (int f0 = 0; f0 <= 2; ++f0)
      for (int f1 = 0; f1 <= 2; ++f1)
        for (int f2 = 0; f2 <= 2; ++f2)
          for (int h0 = 0; h0 <= 2; ++h0)
            for (int h1 = 0; h1 <= 2; ++h1)
              for (int h2 = 0; h2 <= 2; ++h2) {
                LscFun F = LscFun::of_values(
                    sp, {ExtNat(static_cast<std::uint64_t>(f0)),
                         ExtNat(static_cast<std::uint64_t>(f1)),
                         ExtNat(static_cast<std::uint64_t>(f2))});
                LscFun H = LscFun::of_values(
                    sp, {ExtNat(static_cast<std::uint64_t>(h0)),
                         ExtNat(static_cast<std::uint64_t>(h1)),
                         ExtNat(static_cast<std::uint64_t>(h2))});
                auto fast = decide_subequiv(F, H, m, m.budgets);
                auto slow = brute_force_subequiv(F, H, m, m.budgets);
                REQUIRE(fast.outcome == slow.outcome);
                ++checked;
              }
    CHECK(checked == 729);
  }
  SUBCASE("agreement on the two orbit model") {
    auto sp2 = BaseSpace::make_finite({"a1", "a2", "b"});
    auto m2 = make_model(sp2, {Mover::finite_map(sp2, {1, 0, -1})}, {"swap"});
    for (int f = 0; f < 8; ++f)
      for (int h = 0; h < 8; ++h) {
        LscFun F = LscFun::of_values(sp2, {ExtNat(static_cast<std::uint64_t>(f & 1)),
                                           ExtNat(static_cast<std::uint64_t>((f >> 1) & 1)),
                                           ExtNat(static_cast<std::uint64_t>((f >> 2) & 1))});
        LscFun H = LscFun::of_values(sp2, {ExtNat(static_cast<std::uint64_t>(h & 1)),
                                           ExtNat(static_cast<std::uint64_t>((h >> 1) & 1)),
                                           ExtNat(static_cast<std::uint64_t>((h >> 2) & 1))});
        REQUIRE(decide_subequiv(F, H, m2, m2.budgets).outcome ==
                brute_force_subequiv(F, H, m2, m2.budgets).outcome);
      }
  }
  SUBCASE("agreement on the binary shift instance") {
    auto pm = cuntz2_model();
    auto fast =
        decide_subequiv(constant(pm.space, 2), constant(pm.space, 1), pm, pm.budgets);
    Budgets tiny = pm.budgets;
    tiny.depth = 2;
    auto slow = brute_force_subequiv(constant(pm.space, 2), constant(pm.space, 1),
                                     pm, tiny);
    CHECK(fast.outcome == Decision::Outcome::Yes);
    CHECK(slow.outcome == Decision::Outcome::Yes);
    CHECK(apply_witness(*slow.witness, constant(pm.space, 2),
                        constant(pm.space, 1))
              .ok);
  }
  SUBCASE("refusals outside the oracle bounds") {
    auto big = BaseSpace::make_finite({"p1", "p2", "p3", "p4", "p5", "p6", "p7"});
    auto bm = make_model(big, {}, {});
    CHECK_THROWS_AS(brute_force_subequiv(constant(big, 1), constant(big, 1),
                                         bm, bm.budgets),
                    ModelError);
    CHECK_THROWS_AS(brute_force_subequiv(constant(sp, 5), constant(sp, 5), m,
                                         m.budgets),
                    ModelError);
    Budgets deep;
    deep.depth = 3;
    auto pm = cuntz2_model();
    CHECK_THROWS_AS(brute_force_subequiv(constant(pm.space, 1),
                                         constant(pm.space, 1), pm, deep),
                    ModelError);
    Budgets fat;
    fat.mult = 5;
    CHECK_THROWS_AS(brute_force_subequiv(constant(sp, 1), constant(sp, 1), m,
                                         fat),
                    ModelError);
  }
}

TEST_CASE("compose_witnesses splices transport chains") {
  auto m = cuntz2_model();
  auto sp = m.space;
  Mover s0 = Mover::prefix_exchange(sp, "", "0");
  Mover s1 = Mover::prefix_exchange(sp, "", "1");
  OpenSet whole = OpenSet::full_set(sp);

  SUBCASE("4 below 2 below 1 composes to 4 below 1") {
    TransportWitness w1{{{whole, s0, 2}, {whole, s1, 2}}};
    TransportWitness w2{{{whole, s0, 1}, {whole, s1, 1}}};
    auto out =
        compose_witnesses(w1, w2, constant(sp, 4), constant(sp, 2), constant(sp, 1));
    CHECK(out.items.size() == 4);
    for (const auto &it : out.items)
      CHECK(it.mult == 1);
    CHECK(apply_witness(out, constant(sp, 4), constant(sp, 1)).ok);
  }
  SUBCASE("identity on the right returns the first witness") {
    TransportWitness w1{{{whole, s0, 1}, {whole, s1, 1}}};
    TransportWitness w2{{{whole, Mover::identity(sp), 1}}};
    auto out = compose_witnesses(w1, w2, constant(sp, 2), constant(sp, 1),
                                 constant(sp, 1));
    REQUIRE(out.items.size() == 2);
    CHECK(out.items[0].piece == whole);
    CHECK(out.items[0].mover == s0);
    CHECK(out.items[0].mult == 1);
    CHECK(out.items[1].mover == s1);
  }
  SUBCASE("two single moves compose to one") {
    auto fm = z3_model();
    auto fsp = fm.space;
    Mover r = Mover::finite_map(fsp, {1, 2, 0});
    LscFun e1 = LscFun::of_values(fsp, {ExtNat(1), ExtNat(0), ExtNat(0)});
    LscFun e2 = LscFun::of_values(fsp, {ExtNat(0), ExtNat(1), ExtNat(0)});
    LscFun e3 = LscFun::of_values(fsp, {ExtNat(0), ExtNat(0), ExtNat(1)});
    TransportWitness w1{{{OpenSet::of_points(fsp, {"x1"}), r, 1}}};
    TransportWitness w2{{{OpenSet::of_points(fsp, {"x2"}), r, 1}}};
    auto out = compose_witnesses(w1, w2, e1, e2, e3);
    REQUIRE(out.items.size() == 1);
    CHECK(out.items[0].piece == OpenSet::of_points(fsp, {"x1"}));
    CHECK(out.items[0].mover.apply_point(0) == 2);
    CHECK(apply_witness(out, e1, e3).ok);
  }
  SUBCASE("concatenation certifies sums") {
    auto fm = z3_model();
    auto fsp = fm.space;
    Mover r = Mover::finite_map(fsp, {1, 2, 0});
    LscFun f = LscFun::of_values(fsp, {ExtNat(1), ExtNat(0), ExtNat(0)});
    LscFun fp = LscFun::of_values(fsp, {ExtNat(0), ExtNat(1), ExtNat(0)});
    LscFun h = LscFun::of_values(fsp, {ExtNat(0), ExtNat(1), ExtNat(0)});
    LscFun hp = LscFun::of_values(fsp, {ExtNat(0), ExtNat(0), ExtNat(1)});
    TransportWitness wf{{{OpenSet::of_points(fsp, {"x1"}), r, 1}}};
    TransportWitness wh{{{OpenSet::of_points(fsp, {"x2"}), r, 1}}};
    TransportWitness cat{{wf.items[0], wh.items[0]}};
    CHECK(apply_witness(wf, f, fp).ok);
    CHECK(apply_witness(wh, h, hp).ok);
    CHECK(apply_witness(cat, lsc_add(f, h), lsc_add(fp, hp)).ok);
  }
  SUBCASE("invalid inputs are contract errors") {
    TransportWitness broken{{{whole, s0, 1}}};
    TransportWitness w2{{{whole, s0, 1}, {whole, s1, 1}}};
    CHECK_THROWS_AS(compose_witnesses(broken, w2, constant(sp, 2),
                                      constant(sp, 2), constant(sp, 1)),
                    ModelError);
  }
}

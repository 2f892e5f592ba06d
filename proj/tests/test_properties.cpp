#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "typesem/errors.hpp"
#include "typesem/state.hpp"
#include "typesem/typeclass.hpp"

using namespace typesem;

namespace {

// Every randomized suite runs on a fixed seed so failures reproduce.
using Rng = std::mt19937;

int pick(Rng &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

SpacePtr random_finite_space(Rng &rng) {
  int n = pick(rng, 1, 5);
  std::vector<std::string> points;
  for (int i = 1; i <= n; ++i)
    points.push_back("x" + std::to_string(i));
  return BaseSpace::make_finite(std::move(points));
}

LscFun random_finite_fun(Rng &rng, const SpacePtr &sp, bool allow_inf) {
  std::vector<ExtNat> values;
  for (std::size_t i = 0; i < sp->fin().points.size(); ++i) {
    if (allow_inf && pick(rng, 0, 7) == 0)
      values.push_back(ExtNat::infinity());
    else
      values.push_back(ExtNat(static_cast<std::uint64_t>(pick(rng, 0, 3))));
  }
  return LscFun::of_values(sp, std::move(values));
}

SpacePtr binary_space() {
  static SpacePtr sp =
      BaseSpace::make_path({"v"}, {{"0", "v", "v"}, {"1", "v", "v"}});
  return sp;
}

LscFun random_path_fun(Rng &rng, const SpacePtr &sp, bool allow_inf) {
  std::vector<std::pair<std::string, ExtNat>> entries;
  for (const char *w : {"00", "01", "10", "11"}) {
    if (allow_inf && pick(rng, 0, 7) == 0)
      entries.emplace_back(w, ExtNat::infinity());
    else
      entries.emplace_back(w, ExtNat(static_cast<std::uint64_t>(pick(rng, 0, 3))));
  }
  return LscFun::of_cylinders(sp, std::move(entries));
}

Mover random_partial_bijection(Rng &rng, const SpacePtr &sp) {
  int n = static_cast<int>(sp->fin().points.size());
  std::vector<int> targets(n);
  for (int i = 0; i < n; ++i)
    targets[i] = i;
  std::shuffle(targets.begin(), targets.end(), rng);
  std::vector<int> table(n, -1);
  for (int i = 0; i < n; ++i)
    if (pick(rng, 0, 2) != 0)
      table[i] = targets[i];
  return Mover::finite_map(sp, std::move(table));
}

ActionModel random_finite_model(Rng &rng) {
  SpacePtr sp = random_finite_space(rng);
  Budgets b;
  b.len = 2;
  int k = pick(rng, 1, 2);
  std::vector<Mover> gens;
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) {
    gens.push_back(random_partial_bijection(rng, sp));
    names.push_back("g" + std::to_string(i + 1));
  }
  auto sgrp = InverseSemigroup::closure(sp, std::move(gens), std::move(names), b);
  return ActionModel{"random", sp, std::move(sgrp), b,
                     LscFun::indicator(OpenSet::full_set(sp)), {}};
}

ActionModel make_model(SpacePtr sp, std::vector<Mover> gens,
                       std::vector<std::string> names, Budgets b = {}) {
  auto sgrp =
      InverseSemigroup::closure(sp, std::move(gens), std::move(names), b);
  return ActionModel{"corpus", sp, std::move(sgrp), b,
                     LscFun::indicator(OpenSet::full_set(sp)), {}};
}

// The corpus the cross-cutting consistency suites run over: both finite
// dynamics, a measure-preserving path model, and the doubling shift.
std::vector<ActionModel> consistency_corpus() {
  std::vector<ActionModel> out;
  {
    auto sp = BaseSpace::make_finite({"x1", "x2", "x3"});
    out.push_back(make_model(sp, {Mover::finite_map(sp, {1, 2, 0})}, {"r"}));
  }
  {
    auto sp = BaseSpace::make_finite({"a1", "a2", "b"});
    out.push_back(make_model(sp, {Mover::finite_map(sp, {1, 0, -1})}, {"s"}));
  }
  {
    auto sp = BaseSpace::make_finite({"pt"});
    out.push_back(make_model(sp, {Mover::finite_map(sp, {0})}, {"e"}));
  }
  {
    auto sp = BaseSpace::make_path({"v"}, {{"a", "v", "v"}});
    out.push_back(make_model(sp, {Mover::prefix_exchange(sp, "", "a")}, {"sa"}));
  }
  {
    auto sp = binary_space();
    Budgets b;
    b.len = 2;
    out.push_back(make_model(sp,
                             {Mover::prefix_exchange(sp, "", "0"),
                              Mover::prefix_exchange(sp, "", "1")},
                             {"s0", "s1"}, b));
  }
  return out;
}

bool extrat_leq(const ExtRat &a, const ExtRat &b) {
  if (b.inf)
    return true;
  if (a.inf)
    return false;
  return !(b.v < a.v);
}

Tri tri_of(Decision::Outcome o) {
  switch (o) {
  case Decision::Outcome::Yes:
    return Tri::Yes;
  case Decision::Outcome::No:
    return Tri::No;
  default:
    return Tri::Unknown;
  }
}

} // namespace

TEST_CASE("ordered monoid axioms hold on randomized functions") {
  Rng rng(20260818);
  int instances = 0;
  auto exercise = [&](const SpacePtr &sp, auto gen) {
    LscFun f = gen(true);
    ++instances;

    // O1: a pointwise increasing chain has the expected supremum, and a
    // declared unbounded continuation pushes it to infinity there.
    std::vector<LscFun> chain{f};
    for (int step = 0, k = pick(rng, 1, 3); step < k; ++step)
      chain.push_back(lsc_add(chain.back(), gen(false)));
    CHECK(sup_chain(chain, OpenSet::empty_set(sp)) == chain.back());
    OpenSet grow = gen(false).support();
    LscFun expected =
        lsc_add(chain.back(), LscFun::indicator(grow).scaled(ExtNat::infinity()));
    CHECK(sup_chain(chain, grow) == expected);

    // O2: the clipping chain is way below f and recovers it in the limit.
    std::uint64_t top = std::max<std::uint64_t>(f.max_finite_value(), 1);
    std::vector<LscFun> clips;
    for (std::uint64_t c = 1; c <= top; ++c) {
      clips.push_back(f.clipped(c));
      CHECK(way_below(clips.back(), f));
      CHECK(lsc_leq(clips.back(), f));
    }
    CHECK(sup_chain(clips, f.inf_region()) == f);

    // O3: addition preserves order and the way-below relation.
    LscFun f2 = gen(true);
    LscFun h1 = lsc_add(f, gen(true));
    LscFun h2 = lsc_add(f2, gen(true));
    CHECK(lsc_leq(lsc_add(f, f2), lsc_add(h1, h2)));
    LscFun c1 = f.clipped(2);
    LscFun c2 = f2.clipped(1);
    CHECK(way_below(c1, f));
    CHECK(way_below(c2, f2));
    CHECK(way_below(lsc_add(c1, c2), lsc_add(f, f2)));

    // O4: suprema are additive on increasing chains.
    std::vector<LscFun> other{f2};
    while (other.size() < chain.size())
      other.push_back(lsc_add(other.back(), gen(false)));
    std::vector<LscFun> sums;
    for (std::size_t i = 0; i < chain.size(); ++i)
      sums.push_back(lsc_add(chain[i], other[i]));
    OpenSet grow2 = gen(false).support();
    CHECK(sup_chain(sums, set_union(grow, grow2)) ==
          lsc_add(sup_chain(chain, grow), sup_chain(other, grow2)));

    // Way below implies below, and holds reflexively iff finite-valued.
    LscFun g = gen(true);
    if (way_below(g, f))
      CHECK(lsc_leq(g, f));
    CHECK(way_below(f, f) == f.is_finite_valued());
  };

  for (int i = 0; i < 120; ++i) {
    SpacePtr sp = random_finite_space(rng);
    exercise(sp, [&](bool inf) { return random_finite_fun(rng, sp, inf); });
  }
  for (int i = 0; i < 100; ++i) {
    SpacePtr sp = binary_space();
    exercise(sp, [&](bool inf) { return random_path_fun(rng, sp, inf); });
  }
  CHECK(instances >= 200);

  CHECK_THROWS_AS(
      sup_chain({LscFun::of_values(random_finite_space(rng), {ExtNat(1)})},
                OpenSet::empty_set(binary_space())),
      ModelError);
}

TEST_CASE("the rank map retracts the diagonal embedding") {
  Rng rng(7041776);
  int instances = 0;
  for (int i = 0; i < 110; ++i) {
    SpacePtr sp = random_finite_space(rng);
    LscFun f = random_finite_fun(rng, sp, false);
    CHECK(rho_embed(f).rank_vector() == f);
    ++instances;
  }
  CHECK(instances >= 100);

  SUBCASE("the embedding refuses infinite ranks") {
    SpacePtr sp = BaseSpace::make_finite({"x1"});
    CHECK_THROWS_AS(rho_embed(LscFun::of_values(sp, {ExtNat::infinity()})),
                    ModelError);
  }
}

TEST_CASE("transport commutes with the rank map") {
  Rng rng(16180339);
  int pairs = 0;
  for (int i = 0; i < 60; ++i) {
    ActionModel m = random_finite_model(rng);
    const SpacePtr &sp = m.space;
    int n = static_cast<int>(sp->fin().points.size());

    std::vector<std::vector<Rat>> eigs(n);
    for (int x = 0; x < n; ++x)
      for (int k = pick(rng, 0, 2); k > 0; --k)
        eigs[x].emplace_back(pick(rng, 1, 6), pick(rng, 1, 3));

    for (const Mover &s : m.sgrp.elements()) {
      if (s.is_zero())
        continue;
      // Strong invariance needs the element supported in dom(s).
      std::vector<std::vector<Rat>> cut = eigs;
      for (int x = 0; x < n; ++x)
        if (s.apply_point(x) < 0)
          cut[x].clear();
      DiagonalElement a = DiagonalElement::make(sp, cut);
      DiagonalElement moved = transport_diagonal(s, a);
      CHECK(moved.rank_vector() == s.push_forward(a.rank_vector()));
      ++pairs;
    }
  }
  CHECK(pairs >= 100);
}

TEST_CASE("quasitraces integrate breakpoints exactly") {
  Rng rng(27182818);
  int instances = 0;
  for (int i = 0; i < 60; ++i) {
    SpacePtr sp = random_finite_space(rng);
    int n = static_cast<int>(sp->fin().points.size());

    std::vector<int> raw(n);
    int total = 0;
    for (int x = 0; x < n; ++x)
      total += raw[x] = pick(rng, 0, 3);
    if (total == 0)
      raw[0] = total = 1;
    std::vector<Rat> weights;
    for (int x = 0; x < n; ++x)
      weights.emplace_back(raw[x], total);
    StateWitness beta(sp, weights,
                      LscFun::indicator(OpenSet::full_set(sp)));

    auto random_diag = [&]() {
      std::vector<std::vector<Rat>> eigs(n);
      for (int x = 0; x < n; ++x)
        for (int k = pick(rng, 0, 3); k > 0; --k)
          eigs[x].emplace_back(pick(rng, 1, 8), pick(rng, 1, 4));
      return DiagonalElement::make(sp, eigs);
    };
    DiagonalElement a = random_diag();
    DiagonalElement b = random_diag();

    // The breakpoint integral collapses to the weighted eigenvalue sum.
    Rat closed_form(0);
    for (int x = 0; x < n; ++x) {
      Rat colsum(0);
      for (const Rat &lambda : a.eigenvalues()[x])
        colsum += lambda;
      closed_form += weights[x] * colsum;
    }
    CHECK(quasitrace(a, beta) == closed_form);
    CHECK(quasitrace(direct_sum(a, b), beta) ==
          quasitrace(a, beta) + quasitrace(b, beta));
    ++instances;

    // On a projection the quasitrace is the measure of the support.
    std::vector<int> ids;
    for (int x = 0; x < n; ++x)
      if (pick(rng, 0, 1) == 1)
        ids.push_back(x);
    OpenSet u = OpenSet::of_point_indices(sp, std::move(ids));
    DiagonalElement proj = rho_embed(LscFun::indicator(u));
    ExtRat lifted = lift_state_to_functional(beta, LscFun::indicator(u));
    REQUIRE(!lifted.inf);
    CHECK(quasitrace(proj, beta) == lifted.v);
    CHECK(quasitrace(proj, beta) == beta.measure(u));
  }
  CHECK(instances >= 50);
  CHECK(quasitrace(DiagonalElement::zero(BaseSpace::make_finite({"x1"})),
                   StateWitness(BaseSpace::make_finite({"x1"}), {Rat(1)},
                                LscFun::of_values(BaseSpace::make_finite({"x1"}),
                                                  {ExtNat(1)}))) == Rat(0));
}

TEST_CASE("subequivalence decisions respect the preorder laws") {
  Rng rng(31415926);
  for (int i = 0; i < 40; ++i) {
    ActionModel m = random_finite_model(rng);
    LscFun f = random_finite_fun(rng, m.space, false);
    LscFun g = random_finite_fun(rng, m.space, false);
    LscFun h = random_finite_fun(rng, m.space, false);

    CHECK(decide_subequiv(f, f, m, m.budgets).outcome ==
          Decision::Outcome::Yes);

    // Additivity of Yes answers.
    LscFun fg = lsc_add(f, g);
    LscFun gh = lsc_add(g, h);
    Decision dfg = decide_subequiv(f, fg, m, m.budgets);
    Decision dgh = decide_subequiv(g, gh, m, m.budgets);
    REQUIRE(dfg.outcome == Decision::Outcome::Yes);
    REQUIRE(dgh.outcome == Decision::Outcome::Yes);
    Decision dsum =
        decide_subequiv(lsc_add(f, g), lsc_add(fg, gh), m, m.budgets);
    CHECK(dsum.outcome == Decision::Outcome::Yes);

    // Orbit mass keys and the engine are two routes to the same order.
    TypeClass cf = class_of(f, m);
    TypeClass ch = class_of(h, m);
    Decision direct = decide_subequiv(f, h, m, m.budgets);
    Tri keyed = class_leq(cf, ch, m);
    CHECK(tri_of(direct.outcome) == keyed);

    // Movers witness equivalence of a piece with its image.
    int sampled = 0;
    for (const Mover &s : m.sgrp.elements()) {
      if (s.is_zero() || s.is_idempotent())
        continue;
      if (++sampled > 6)
        break;
      OpenSet v = s.dom();
      LscFun iv = LscFun::indicator(v);
      LscFun im = LscFun::indicator(s.image_of(v));
      CHECK(decide_subequiv(iv, im, m, m.budgets).outcome ==
            Decision::Outcome::Yes);
      CHECK(decide_subequiv(im, iv, m, m.budgets).outcome ==
            Decision::Outcome::Yes);
    }
  }
}

TEST_CASE("tarski alternative stays consistent across the corpus") {
  for (const ActionModel &m : consistency_corpus()) {
    std::vector<LscFun> samples{m.normalize_at,
                                lsc_add(m.normalize_at, m.normalize_at)};
    for (const LscFun &F : samples) {
      TarskiResult t = tarski_test(F, m);
      if (t.kind == TarskiResult::Kind::StateExists) {
        REQUIRE(t.state.has_value());
        CHECK(!t.witness.has_value());
        CHECK(verify_state(m, *t.state));
        CHECK(t.state->eval(F) == ExtRat{false, Rat(1)});
      } else if (t.kind == TarskiResult::Kind::Paradoxical) {
        REQUIRE(t.witness.has_value());
        CHECK(!t.state.has_value());
        CHECK(t.n >= 1);
        LscFun big = F.scaled(ExtNat(static_cast<std::uint64_t>(t.n) + 1));
        LscFun small = F.scaled(ExtNat(static_cast<std::uint64_t>(t.n)));
        CHECK(apply_witness(*t.witness, big, small).ok);
      } else {
        CHECK(t.no_state.has_value());
      }
    }
  }
}

TEST_CASE("invariant states dominate along every Yes decision") {
  Rng rng(14142135);
  int checked = 0;
  for (const ActionModel &m : consistency_corpus()) {
    StateOutcome so = find_invariant_state(m, m.normalize_at);
    const StateWitness *nu = std::get_if<StateWitness>(&so);
    if (!nu)
      continue;

    std::vector<LscFun> pool{m.normalize_at,
                             lsc_add(m.normalize_at, m.normalize_at)};
    if (m.space->is_finite()) {
      for (int i = 0; i < 6; ++i)
        pool.push_back(random_finite_fun(rng, m.space, false));
    } else {
      for (const char *w : {"0", "1", "00", "a", "aa"}) {
        if (!m.space->graph().word_valid(w))
          continue;
        pool.push_back(
            LscFun::indicator(OpenSet::of_words(m.space, {w})));
      }
    }
    for (const LscFun &F : pool)
      for (const LscFun &H : pool) {
        Decision d = decide_subequiv(F, H, m, m.budgets);
        if (d.outcome != Decision::Outcome::Yes)
          continue;
        CHECK(extrat_leq(nu->eval(F), nu->eval(H)));
        ++checked;
      }
  }
  CHECK(checked >= 50);
}

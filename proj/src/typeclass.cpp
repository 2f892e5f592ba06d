#include "typesem/typeclass.hpp"

#include <map>
#include <sstream>

#include "typesem/errors.hpp"

namespace typesem {

namespace {

/// Pairwise path-space decisions are memoized per model identity. The key
/// includes the space, the closure size, the generator names, and the
/// budgets, so two models only collide when the decision would be the same
/// anyway.
std::string memo_key(const ActionModel &model, const LscFun &a,
                     const LscFun &b) {
  std::ostringstream os;
  os << model.space.get() << '#' << model.sgrp.size() << '#';
  for (const auto &n : model.sgrp.generator_names())
    os << n << ',';
  os << '#' << model.budgets.to_string() << '#' << a.to_string() << '#'
     << b.to_string();
  return os.str();
}

std::map<std::string, Decision::Outcome> &decision_memo() {
  static std::map<std::string, Decision::Outcome> memo;
  return memo;
}

Tri outcome_to_tri(Decision::Outcome o) {
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

const std::vector<std::uint64_t> &TypeClass::orbit_key() const {
  if (!has_key_)
    throw ModelError("orbit_key: classes over a path space carry no key");
  return key_;
}

TypeClass class_of(const LscFun &F, const ActionModel &model) {
  require_same_space(F.space(), model.space, "class_of");
  if (!F.is_finite_valued())
    throw ModelError("class_of: representative must be finite-valued");
  TypeClass cls(F);
  if (model.space->is_finite()) {
    auto comps = orbit_components(build_orbit_graph(model));
    cls.key_.assign(comps.size(), 0);
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (int x : comps[c])
        cls.key_[c] += F.value_at_point(x).finite_value();
    cls.has_key_ = true;
  }
  return cls;
}

Tri class_leq(const TypeClass &a, const TypeClass &b, const ActionModel &model) {
  require_same_space(a.representative().space(), model.space, "class_leq");
  require_same_space(b.representative().space(), model.space, "class_leq");
  // The zero class is least, and it is a singleton: nothing nonzero fits
  // below it, because every witness image of a nonempty piece is nonempty.
  if (a.representative().is_zero())
    return Tri::Yes;
  if (b.representative().is_zero())
    return Tri::No;
  if (a.has_orbit_key() && b.has_orbit_key()) {
    if (a.orbit_key().size() != b.orbit_key().size())
      throw ModelError("class_leq: classes come from different models");
    for (std::size_t c = 0; c < a.orbit_key().size(); ++c)
      if (a.orbit_key()[c] > b.orbit_key()[c])
        return Tri::No;
    return Tri::Yes;
  }
  std::string key = memo_key(model, a.representative(), b.representative());
  auto &memo = decision_memo();
  auto it = memo.find(key);
  if (it != memo.end())
    return outcome_to_tri(it->second);
  Decision d = decide_subequiv(a.representative(), b.representative(), model,
                               model.budgets);
  memo.emplace(std::move(key), d.outcome);
  return outcome_to_tri(d.outcome);
}

Tri class_eq(const TypeClass &a, const TypeClass &b, const ActionModel &model) {
  Tri fwd = class_leq(a, b, model);
  if (fwd == Tri::No)
    return Tri::No;
  Tri bwd = class_leq(b, a, model);
  if (bwd == Tri::No)
    return Tri::No;
  if (fwd == Tri::Yes && bwd == Tri::Yes)
    return Tri::Yes;
  return Tri::Unknown;
}

TypeClass class_add(const TypeClass &a, const TypeClass &b,
                    const ActionModel &model) {
  return class_of(lsc_add(a.representative(), b.representative()), model);
}

Decision is_kl_paradoxical(const LscFun &F, int k, int l,
                           const ActionModel &model) {
  require_same_space(F.space(), model.space, "is_kl_paradoxical");
  if (l <= 0 || k <= l)
    throw ModelError("is_kl_paradoxical: requires k > l > 0");
  if (!F.is_finite_valued())
    throw ModelError("is_kl_paradoxical: F must be finite-valued");
  if (F.is_zero())
    throw ModelError("is_kl_paradoxical: F must be nonzero");
  return decide_subequiv(F.scaled(ExtNat(static_cast<std::uint64_t>(k))),
                         F.scaled(ExtNat(static_cast<std::uint64_t>(l))),
                         model, model.budgets);
}

TarskiResult tarski_test(const LscFun &F, const ActionModel &model,
                         int n_max) {
  require_same_space(F.space(), model.space, "tarski_test");
  if (n_max < 1)
    throw ModelError("tarski_test: n_max must be positive");
  if (!F.is_finite_valued())
    throw ModelError("tarski_test: F must be finite-valued");
  if (F.is_zero())
    throw ModelError("tarski_test: F must be nonzero");

  TarskiResult res;
  res.budgets = model.budgets;
  res.budgets.nmax = n_max;

  StateOutcome st = find_invariant_state(model, F);
  const StateWitness *found_state = std::get_if<StateWitness>(&st);

  int paradox_n = 0;
  std::optional<TransportWitness> paradox_witness;
  for (int n = 1; n <= n_max && paradox_n == 0; ++n) {
    Decision d = is_kl_paradoxical(F, n + 1, n, model);
    if (d.outcome == Decision::Outcome::Yes) {
      paradox_n = n;
      paradox_witness = std::move(d.witness);
    }
  }

  if (found_state != nullptr && paradox_n > 0)
    throw InternalCheckError(
        "tarski_test: found both an invariant state and a paradox");

  if (found_state != nullptr) {
    res.kind = TarskiResult::Kind::StateExists;
    res.state = *found_state;
    res.note = "normalized invariant state found";
    return res;
  }
  if (paradox_n > 0) {
    res.kind = TarskiResult::Kind::Paradoxical;
    res.n = paradox_n;
    res.witness = std::move(paradox_witness);
    res.note = "(" + std::to_string(paradox_n + 1) + "," +
               std::to_string(paradox_n) + ")-paradox witnessed";
    return res;
  }
  res.kind = TarskiResult::Kind::Unknown;
  res.no_state = std::get<InfeasibilityCert>(st);
  res.note = "no invariant state exists, and no paradox surfaced up to n=" +
             std::to_string(n_max);
  return res;
}

TarskiResult tarski_test(const LscFun &F, const ActionModel &model) {
  return tarski_test(F, model, model.budgets.nmax);
}

PlainParadoxReport plain_paradox_probe(const ActionModel &model,
                                       const std::vector<LscFun> &samples,
                                       int n_max) {
  if (n_max < 1)
    throw ModelError("plain_paradox_probe: n_max must be positive");
  PlainParadoxReport rep;
  rep.budgets = model.budgets;
  rep.budgets.nmax = n_max;
  for (const LscFun &F : samples) {
    require_same_space(F.space(), model.space, "plain_paradox_probe");
    PlainParadoxEntry entry{F, 0, {}, Tri::Unknown, false, ""};
    if (F.is_zero()) {
      entry.status = "skipped: zero sample";
      rep.entries.push_back(std::move(entry));
      continue;
    }
    if (!F.is_finite_valued()) {
      entry.status = "skipped: not finite-valued";
      rep.entries.push_back(std::move(entry));
      continue;
    }
    for (int n = 1; n <= n_max && entry.first_n == 0; ++n) {
      Decision d = is_kl_paradoxical(F, n + 1, n, model);
      if (d.outcome == Decision::Outcome::Yes) {
        entry.first_n = n;
        entry.witness = std::move(d.witness);
      }
    }
    if (entry.first_n == 0) {
      entry.status = "no paradox within n_max";
      rep.entries.push_back(std::move(entry));
      continue;
    }
    entry.two_one = outcome_to_tri(is_kl_paradoxical(F, 2, 1, model).outcome);
    entry.violation = entry.two_one != Tri::Yes;
    entry.status = "paradoxical at n=" + std::to_string(entry.first_n) +
                   "; (2,1) " + tri_to_string(entry.two_one);
    if (entry.violation)
      rep.violation_found = true;
    rep.entries.push_back(std::move(entry));
  }
  rep.note = rep.violation_found
                 ? "a sampled class is paradoxical but not (2,1)-paradoxical"
                 : "every paradoxical sample is (2,1)-paradoxical";
  return rep;
}

} // namespace typesem

#ifndef TYPESEM_SEMIGROUP_HPP
#define TYPESEM_SEMIGROUP_HPP

#include <string>
#include <vector>

#include "typesem/lsc.hpp"
#include "typesem/mover.hpp"
#include "typesem/space.hpp"

namespace typesem {

/// Search budgets. Every "No" or "Unknown" answer obtained under a budget
/// is stamped with it.
struct Budgets {
  int depth = 2; ///< cylinder depth for pieces and orbit resolution
  int len = 4;   ///< max number of generator factors in closure elements
  int mult = 4;  ///< max multiplicity per transport witness item
  int nmax = 8;  ///< largest n probed by the paradox hierarchy

  std::string to_string() const {
    return "depth=" + std::to_string(depth) + ",len=" + std::to_string(len) +
           ",mult=" + std::to_string(mult) + ",nmax=" + std::to_string(nmax);
  }
};

/// The inverse semigroup generated by a finite set of movers: all
/// composites of generators and their inverses, plus the identity.
/// Over a finite space the closure is exact (partial bijections on a finite
/// set are finitely many); over a path space it is truncated at the word
/// length budget and `saturated()` reports whether a fixpoint was reached.
/// Elements are deduplicated by canonical form and stored in a
/// deterministic order.
class InverseSemigroup {
public:
  static InverseSemigroup closure(SpacePtr space, std::vector<Mover> generators,
                                  std::vector<std::string> generator_names,
                                  const Budgets &budgets);

  const SpacePtr &space() const { return space_; }
  const std::vector<Mover> &elements() const { return elements_; }
  /// Shortest product expression found for each element, e.g. "s.t*".
  const std::vector<std::string> &element_names() const { return names_; }
  const std::vector<Mover> &generators() const { return gens_; }
  const std::vector<std::string> &generator_names() const { return gen_names_; }
  /// True iff composing one more factor adds no new element.
  bool saturated() const { return saturated_; }

  int size() const { return static_cast<int>(elements_.size()); }
  /// Index of a mover in the element list, or -1.
  int index_of(const Mover &m) const;
  bool contains(const Mover &m) const { return index_of(m) >= 0; }
  const Mover &unit() const;
  /// Indices of the idempotents E(S), in element order.
  std::vector<int> idempotent_ids() const;

private:
  SpacePtr space_;
  std::vector<Mover> elements_;
  std::vector<std::string> names_;
  std::vector<Mover> gens_;
  std::vector<std::string> gen_names_;
  bool saturated_ = false;
};

/// The trivialized part of s: the union of dom(v) over all idempotents
/// v in S with v below s in the natural order (idempotents are exactly the
/// elements below the unit). On this set s acts as the identity, witnessed
/// inside S.
OpenSet ideal_support(const Mover &s, const InverseSemigroup &sgrp);

/// A dynamical model: the base space, the acting semigroup, the budgets it
/// was built under, the function the analysis normalizes states at, and
/// optional probe samples for the paradoxicality sweep.
struct ActionModel {
  std::string name;
  SpacePtr space;
  InverseSemigroup sgrp;
  Budgets budgets;
  LscFun normalize_at;
  std::vector<LscFun> probe_samples;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> checks;
  std::vector<std::string> failures;
};

/// Verifies the action axioms on the closure: inverse laws s s* s = s,
/// commuting idempotents, associativity on sampled triples, the unit acting
/// as the identity, density of the domains, idempotents acting as partial
/// identities, and monotonicity of dom/ran along the natural order.
/// Failures carry the offending elements; they never throw.
ValidationReport validate_action(const ActionModel &model);

} // namespace typesem

#endif // TYPESEM_SEMIGROUP_HPP

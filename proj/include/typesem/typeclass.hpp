#ifndef TYPESEM_TYPECLASS_HPP
#define TYPESEM_TYPECLASS_HPP

#include <optional>
#include <string>
#include <vector>

#include "typesem/orbit.hpp"
#include "typesem/state.hpp"
#include "typesem/subequiv.hpp"

namespace typesem {

/// An element of the retracted dynamical Cuntz semigroup: the class of a
/// finite-valued function under mutual subequivalence. On a finite space
/// the class is determined by the vector of per-orbit masses, so class
/// comparisons are exact key comparisons. On path spaces no finite
/// classifying key exists and classes are compared through their
/// representatives, with pairwise decisions memoized.
class TypeClass {
public:
  const LscFun &representative() const { return rep_; }
  bool has_orbit_key() const { return has_key_; }
  /// Per-orbit masses, indexed by orbit component. Finite spaces only.
  const std::vector<std::uint64_t> &orbit_key() const;

private:
  friend TypeClass class_of(const LscFun &F, const ActionModel &model);
  explicit TypeClass(LscFun rep) : rep_(std::move(rep)) {}

  LscFun rep_;
  std::vector<std::uint64_t> key_;
  bool has_key_ = false;
};

/// Throws ModelError when F has infinite values: classes live in the
/// finite-valued part of the semigroup.
TypeClass class_of(const LscFun &F, const ActionModel &model);

/// Class preorder. Exact on finite spaces; on path spaces Yes/No follow
/// the subequivalence engine and budget exhaustion surfaces as Unknown.
/// The zero class is least and is a singleton: comparisons against it are
/// answered exactly on every space.
Tri class_leq(const TypeClass &a, const TypeClass &b, const ActionModel &model);

/// Mutual subequivalence of representatives.
Tri class_eq(const TypeClass &a, const TypeClass &b, const ActionModel &model);

/// [a] + [b] = [a + b].
TypeClass class_add(const TypeClass &a, const TypeClass &b,
                    const ActionModel &model);

/// Decides k*F below l*F. Requires k > l > 0 and a nonzero finite-valued F.
Decision is_kl_paradoxical(const LscFun &F, int k, int l,
                           const ActionModel &model);

/// Outcome of the dichotomy test on one element: either a normalized
/// invariant state evaluating F to 1, or a verified (n+1, n)-paradox, or
/// neither within budgets. The two certificates exclude each other; finding
/// both is an internal error.
struct TarskiResult {
  enum class Kind { StateExists, Paradoxical, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<StateWitness> state;
  /// Paradoxical: the smallest n with (n+1)F below nF.
  int n = 0;
  std::optional<TransportWitness> witness;
  /// Set when the state search ended in a verified infeasibility: no
  /// invariant state exists even though no paradox surfaced in budget.
  std::optional<InfeasibilityCert> no_state;
  Budgets budgets;
  std::string note;
};

TarskiResult tarski_test(const LscFun &F, const ActionModel &model, int n_max);
/// Uses the model's nmax budget.
TarskiResult tarski_test(const LscFun &F, const ActionModel &model);

/// One probed sample: the smallest paradox level found (0 = none within
/// n_max) and the (2,1) decision for it.
struct PlainParadoxEntry {
  LscFun sample;
  int first_n = 0;
  std::optional<TransportWitness> witness;
  Tri two_one = Tri::Unknown;
  bool violation = false;
  std::string status;
};

/// Hypothesis gate for the dichotomy: every sampled class that is
/// paradoxical at some level must already be (2,1)-paradoxical. A sample
/// paradoxical at some n whose (2,1) check does not come back Yes within
/// budget counts as a violation; samples with no paradox at all pass
/// vacuously.
struct PlainParadoxReport {
  std::vector<PlainParadoxEntry> entries;
  bool violation_found = false;
  Budgets budgets;
  std::string note;
};

PlainParadoxReport plain_paradox_probe(const ActionModel &model,
                                       const std::vector<LscFun> &samples,
                                       int n_max);

} // namespace typesem

#endif // TYPESEM_TYPECLASS_HPP

#ifndef TYPESEM_LSC_HPP
#define TYPESEM_LSC_HPP

#include <string>
#include <utility>
#include <vector>

#include "typesem/extnat.hpp"
#include "typesem/space.hpp"

namespace typesem {

/// A lower semicontinuous function X -> extended naturals with finitely
/// presented level structure. Over a finite space: one value per point.
/// Over a path space: a finite list of (word, value) pairs whose words form
/// an antichain, the function being constant on each listed cylinder and 0
/// elsewhere. Canonical form: zero values dropped, entries in shortlex
/// order, sibling-complete families of equal value collapsed to the parent.
/// These functions model the Cuntz semigroup of the commutative coefficient
/// algebra; addition is pointwise and infinity-absorbing.
class LscFun {
public:
  static LscFun zero(SpacePtr space);
  static LscFun indicator(const OpenSet &u);
  /// Finite space, one value per point in point order.
  static LscFun of_values(SpacePtr space, std::vector<ExtNat> values);
  /// Path space; the words must form an antichain (pairwise
  /// prefix-incomparable), and values are taken on whole cylinders.
  static LscFun of_cylinders(SpacePtr space,
                             std::vector<std::pair<std::string, ExtNat>> entries);

  const SpacePtr &space() const { return space_; }
  /// Finite space: values in point order.
  const std::vector<ExtNat> &values() const;
  /// Path space: canonical (word, value) entries.
  const std::vector<std::pair<std::string, ExtNat>> &entries() const;

  bool is_zero() const;
  /// Largest value attained (0 for the zero function).
  ExtNat max_value() const;
  /// Largest finite value attained, 0 if none.
  std::uint64_t max_finite_value() const;
  bool is_finite_valued() const { return max_value().is_finite(); }

  /// Value at a point of a finite space.
  ExtNat value_at_point(int id) const;
  /// Value on the cylinder Z(word); throws ModelError if the function is
  /// not constant there (some entry properly extends the word).
  ExtNat value_on_cylinder(const std::string &word) const;
  /// Largest entry word length (0 for finite spaces).
  int depth() const;
  /// Values on all depth-d words, aligned with words_of_length(d).
  /// Requires d >= depth().
  std::vector<ExtNat> values_at_depth(int d) const;

  /// {x : F(x) >= 1}.
  OpenSet support() const;
  /// {x : F(x) = infinity}.
  OpenSet inf_region() const;
  /// Pointwise minimum with a finite constant.
  LscFun clipped(std::uint64_t bound) const;
  /// k * F pointwise with 0 * infinity = 0.
  LscFun scaled(const ExtNat &k) const;
  /// F restricted to a set (0 outside).
  LscFun restricted_to(const OpenSet &u) const;

  friend LscFun lsc_add(const LscFun &f, const LscFun &h);
  friend bool lsc_leq(const LscFun &f, const LscFun &h);
  /// f is way below h: f is finite-valued and f <= h. Valid in these models
  /// because the base spaces are compact and zero-dimensional, so every
  /// finite-valued lower semicontinuous function is compactly supported at
  /// each level.
  friend bool way_below(const LscFun &f, const LscFun &h);

  friend bool operator==(const LscFun &a, const LscFun &b);
  friend bool operator!=(const LscFun &a, const LscFun &b) { return !(a == b); }
  /// Deterministic order for containers.
  friend bool lex_less(const LscFun &a, const LscFun &b);

  std::string to_string() const;

private:
  explicit LscFun(SpacePtr space) : space_(std::move(space)) {}
  void canonicalize_entries();

  SpacePtr space_;
  std::vector<ExtNat> vals_;
  std::vector<std::pair<std::string, ExtNat>> entries_;
};

/// The unique decomposition F = sum of 1_{U_i} plus an infinity tail:
/// U_i = {x : F(x) >= i} for i = 1..N with N the largest finite value, and
/// tail = {x : F(x) = infinity}. The U_i decrease.
struct NormalForm {
  std::vector<OpenSet> levels;
  OpenSet inf_tail;

  /// Rebuilds the function (levels summed, infinity on the tail).
  LscFun reconstruct(const SpacePtr &space) const;
};

NormalForm normal_form(const LscFun &f);

/// Pointwise supremum of a finitely presented increasing chain. The chain
/// stands for its eventual continuation: on the declared `unbounded` set
/// the values grow without bound, so the supremum there is infinity.
/// Throws ModelError if the list is not pointwise increasing.
LscFun sup_chain(const std::vector<LscFun> &chain, const OpenSet &unbounded);

/// Almost refinement: given f_i way below x_i and sum x_i <= sum y_j,
/// produces u_{i,j} with f_i <= sum_j u_{i,j} <= x_i, the inner sum
/// finite-valued (hence way below x_i), and sum_i u_{i,j} <= y_j.
/// Greedy pointwise allocation in index order; at points where x_i is
/// infinite only the finite demand f_i is poured, which keeps the row sums
/// finite-valued. Throws ModelError naming the failing index when a
/// precondition does not hold.
std::vector<std::vector<LscFun>> almost_refinement(const std::vector<LscFun> &f,
                                                   const std::vector<LscFun> &x,
                                                   const std::vector<LscFun> &y);

} // namespace typesem

#endif // TYPESEM_LSC_HPP

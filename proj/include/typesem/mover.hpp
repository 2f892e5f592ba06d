#ifndef TYPESEM_MOVER_HPP
#define TYPESEM_MOVER_HPP

#include <map>
#include <string>
#include <vector>

#include "typesem/lsc.hpp"
#include "typesem/space.hpp"

namespace typesem {

/// A partial bijection of the base space.
///
/// Over a finite space it is an injective partial map given by a
/// point-to-point table. Over a path space it is a prefix exchange
/// (q -> p): the homeomorphism Z(q) -> Z(p) sending q.w to p.w, optionally
/// restricted to an open subset of Z(q). Canonical form strips the longest
/// common suffix of q and p (which does not change the map), intersects the
/// restriction into the domain cylinder, and collapses an empty domain to
/// the zero map, so equal presentations compare equal structurally.
///
/// A mover may carry a formal cyclic grading (period n, exponent k): the
/// underlying set map is unchanged, but composition adds exponents mod n
/// and two movers are equal only if their exponents agree. This expresses
/// abstract semigroup elements acting trivially, e.g. a generator of order
/// n acting as the identity. Exponent 0 is identified with the untagged
/// concrete mover.
class Mover {
public:
  /// Finite space; table[x] = image point index, or -1 where undefined.
  static Mover finite_map(SpacePtr space, std::vector<int> table);
  static Mover finite_map_labels(SpacePtr space,
                                 const std::map<std::string, std::string> &table);
  /// Path space prefix exchange; pass the full cylinder Z(from) as
  /// restriction by giving an empty optional via the two-argument form.
  static Mover prefix_exchange(SpacePtr space, const std::string &from,
                               const std::string &to);
  static Mover prefix_exchange(SpacePtr space, const std::string &from,
                               const std::string &to, const OpenSet &restriction);
  static Mover identity(SpacePtr space);
  static Mover zero_map(SpacePtr space);

  /// Same underlying map with a formal cyclic grading attached.
  Mover with_formal(int period, int exponent) const;

  const SpacePtr &space() const { return space_; }
  int formal_period() const { return fper_; }
  int formal_exponent() const { return fexp_; }

  bool is_zero() const;
  /// Partial identity with exponent 0, i.e. an idempotent s = s*s = ss*.
  bool is_idempotent() const;

  OpenSet dom() const;
  OpenSet ran() const;
  OpenSet image_of(const OpenSet &u) const;
  OpenSet preimage_of(const OpenSet &u) const;
  /// Transport of functions: (m.push_forward(F))(y) = F(m^{-1}(y)) on the
  /// range, 0 elsewhere. Only the restriction of F to dom(m) contributes.
  LscFun push_forward(const LscFun &f) const;

  Mover inverse() const;
  Mover restricted_to(const OpenSet &u) const;
  friend Mover compose(const Mover &after, const Mover &before);

  /// Natural partial order: s <= t iff s equals t restricted to dom(s)
  /// (equivalently s = t s*s), with matching formal exponents.
  friend bool natural_leq(const Mover &s, const Mover &t);

  friend bool operator==(const Mover &a, const Mover &b);
  friend bool operator!=(const Mover &a, const Mover &b) { return !(a == b); }

  /// Canonical display string; doubles as a dedup key.
  std::string display() const;

  // Finite-space accessors.
  const std::vector<int> &table() const;
  /// Image of a point index, or -1.
  int apply_point(int id) const;

  // Path-space accessors (canonical form).
  const std::string &from_word() const;
  const std::string &to_word() const;
  const OpenSet &restriction() const;

private:
  explicit Mover(SpacePtr space);
  void normalize_path();

  SpacePtr space_;
  std::vector<int> table_;
  std::string q_, p_;
  OpenSet restr_;
  int fper_ = 0;
  int fexp_ = 0;
};

} // namespace typesem

#endif // TYPESEM_MOVER_HPP

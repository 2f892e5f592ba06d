#ifndef TYPESEM_SUBEQUIV_HPP
#define TYPESEM_SUBEQUIV_HPP

#include <optional>
#include <string>
#include <vector>

#include "typesem/semigroup.hpp"
#include "typesem/state.hpp"

namespace typesem {

/// One transport step: move `mult` copies of the piece along the mover.
struct WitnessItem {
  OpenSet piece;
  Mover mover;
  int mult = 1;
};

/// Certificate for F below H: F <= sum of mult*1_{piece} and
/// sum of mult*1_{mover(piece)} <= H, with each piece inside its mover's
/// domain. Both inequalities re-check by direct evaluation.
struct TransportWitness {
  std::vector<WitnessItem> items;
};

struct WitnessReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Re-evaluates the witness inequalities from scratch, independent of any
/// search: containment of pieces in domains, coverage of F, packing of the
/// images under H. Failures name the offending item, point, or cylinder.
WitnessReport apply_witness(const TransportWitness &w, const LscFun &F,
                            const LscFun &H);

/// A violated conservation law: one orbit carries more mass in F than H
/// can absorb. Exact, including infinite masses.
struct MassCertificate {
  std::vector<std::string> orbit_points;
  ExtNat f_mass;
  ExtNat h_mass;
};

struct Decision {
  enum class Outcome { Yes, No, Unknown };
  Outcome outcome = Outcome::Unknown;
  /// Yes: the transport witness. When clip_level > 0 the left side had
  /// infinite values and the witness certifies clip(F, clip_level); its
  /// infinity-bound items route into the infinite-capacity region of H, so
  /// the same items replicate to any higher clip level.
  std::optional<TransportWitness> witness;
  int clip_level = 0;
  /// No on a finite space: per-orbit mass violation.
  std::optional<MassCertificate> mass_certificate;
  /// No on a path space: a harmonic state separating F from H.
  std::optional<StateWitness> state_certificate;
  Budgets budgets;
  std::string note;
};

/// Decides the dynamical subequivalence F below H.
///
/// Finite spaces are exact: the max-flow transport problem and the
/// per-orbit mass inequality both run and must agree. Path spaces are a
/// budgeted semidecision: depth-first search over multisets of
/// (cylinder piece, mover) pairs with pieces of depth <= budgets.depth,
/// movers from the closure, and multiplicity <= budgets.mult per item,
/// memoized on residual state. Exhaustion is reported as Unknown stamped
/// with the budgets, upgraded to an unconditional No only when a harmonic
/// state certifies nu(F) > nu(H).
Decision decide_subequiv(const LscFun &F, const LscFun &H,
                         const ActionModel &model, const Budgets &budgets);

/// Independent oracle: plain exhaustive enumeration with none of the main
/// engine's shortcuts (no orbit reduction, no memoization, reversed
/// exploration order). Refuses instances outside its tiny bounds: finite
/// spaces need |X| <= 6, finite-valued F with max value <= bounds.mult;
/// path spaces need bounds.depth <= 2; bounds.mult <= 4 always. Within
/// bounds, finite answers are exhaustive (Yes or No); path exhaustion is
/// Unknown.
Decision brute_force_subequiv(const LscFun &F, const LscFun &H,
                              const ActionModel &model, const Budgets &bounds);

/// Splices a witness for F below G with one for G below H into a witness
/// for F below H: the images of the first are split along the pieces of
/// the second by almost refinement, and the movers compose. The inputs are
/// verified first; the output is re-verified before it is returned.
TransportWitness compose_witnesses(const TransportWitness &w1,
                                   const TransportWitness &w2,
                                   const LscFun &F, const LscFun &G,
                                   const LscFun &H);

} // namespace typesem

#endif // TYPESEM_SUBEQUIV_HPP

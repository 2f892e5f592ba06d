#ifndef TYPESEM_STATE_HPP
#define TYPESEM_STATE_HPP

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "typesem/lp.hpp"
#include "typesem/rational.hpp"
#include "typesem/semigroup.hpp"

namespace typesem {

/// An invariant finitely additive measure presented by rational weights:
/// one per point of a finite space, or one per vertex of a path graph. In
/// the vertex form, measures come from the harmonic system: mu(Z(w)) is
/// the weight of the vertex where the continuations of w start, and
/// harmonicity t(v) = sum of t(dst(e)) over edges leaving v makes this
/// finitely additive and invariant under every prefix exchange.
/// The witness is normalized: nu(normalized_at) = 1.
class StateWitness {
public:
  StateWitness(SpacePtr space, std::vector<Rat> weights, LscFun normalized_at);

  const SpacePtr &space() const { return space_; }
  const std::vector<Rat> &weights() const { return weights_; }
  const LscFun &normalized_at() const { return normalized_at_; }
  /// Weights keyed by point or vertex label.
  std::map<std::string, Rat> weights_by_label() const;

  /// The measure of an open set; always finite.
  Rat measure(const OpenSet &u) const;
  /// nu([f]): weighted sum of values, with the convention that an infinite
  /// value on a null set contributes nothing.
  ExtRat eval(const LscFun &f) const;

private:
  SpacePtr space_;
  std::vector<Rat> weights_;
  LscFun normalized_at_;
};

/// A verified reason no invariant normalized state exists: Farkas
/// multipliers for the exact constraint system. Combining the named rows
/// with these multipliers bounds every weight's coefficient by zero while
/// the right-hand side stays positive.
struct InfeasibilityCert {
  LpProblem problem;
  std::vector<Rat> farkas;
  std::string derivation;
};

using StateOutcome = std::variant<StateWitness, InfeasibilityCert>;

/// The exact constraint system behind find_invariant_state, exposed so
/// certificates can be re-verified independently.
LpProblem build_state_lp(const ActionModel &model, const LscFun &normalize_at);

/// Coefficients of mu(u) as a linear form in the vertex weights of a path
/// space: the empty word counts every vertex, a word w counts its target.
std::vector<Rat> measure_coefficients(const SpacePtr &space, const OpenSet &u);

/// Exact rational feasibility: nonnegative weights, invariance equalities
/// (finite spaces), harmonic and generator-invariance equalities (path
/// spaces), and the normalization nu(normalize_at) = 1. States on path
/// spaces are drawn from the harmonic vertex-weight family only; existence
/// questions beyond that family are covered by the paradox side.
StateOutcome find_invariant_state(const ActionModel &model,
                                  const LscFun &normalize_at);

/// Re-verifies every constraint by exact substitution, plus sampled
/// cylinder invariance for each generator.
bool verify_state(const ActionModel &model, const StateWitness &w);

/// beta(F) = sup { nu([z]) : z way below F }. The sup is attained at F
/// itself when F is finite valued, and is infinite exactly when F is
/// infinite on a set of positive measure.
ExtRat lift_state_to_functional(const StateWitness &nu, const LscFun &f);

/// A positive diagonal element over C(X) for a finite space X: a finite
/// multiset of strictly positive rational eigenvalues at each point,
/// stored sorted in decreasing order.
class DiagonalElement {
public:
  static DiagonalElement make(SpacePtr space,
                              std::vector<std::vector<Rat>> eigenvalues);
  static DiagonalElement zero(SpacePtr space);

  const SpacePtr &space() const { return space_; }
  const std::vector<std::vector<Rat>> &eigenvalues() const { return eigs_; }
  bool is_zero() const;
  /// The rank map sigma: counts eigenvalues per point.
  LscFun rank_vector() const;
  /// (a - t)_+ : keeps lambda - t for every eigenvalue lambda > t.
  DiagonalElement cut_down(const Rat &t) const;

  friend DiagonalElement direct_sum(const DiagonalElement &a,
                                    const DiagonalElement &b);
  friend bool operator==(const DiagonalElement &a, const DiagonalElement &b);

private:
  explicit DiagonalElement(SpacePtr space) : space_(std::move(space)) {}
  SpacePtr space_;
  std::vector<std::vector<Rat>> eigs_;
};

/// rho: embeds a finite-valued function as the diagonal element with f(x)
/// eigenvalues all equal to 1, so that sigma(rho(f)) = f.
DiagonalElement rho_embed(const LscFun &f);

/// Transports a diagonal element along a mover; requires the support to
/// lie in dom(s).
DiagonalElement transport_diagonal(const Mover &s, const DiagonalElement &a);

/// Exact breakpoint integration of t -> beta([(a - t)_+]): the rank vector
/// of the cut-down is a step function of t with breakpoints at the
/// eigenvalues.
Rat quasitrace(const DiagonalElement &a, const StateWitness &beta);

} // namespace typesem

#endif // TYPESEM_STATE_HPP

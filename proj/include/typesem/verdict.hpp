#ifndef TYPESEM_VERDICT_HPP
#define TYPESEM_VERDICT_HPP

#include <optional>
#include <string>
#include <vector>

#include "typesem/model_io.hpp"

namespace typesem {

/// The dichotomy verdict for one model. The hypothesis ledger is always
/// filled in, whatever the outcome, so failed runs stay diagnosable.
/// StablyFinite carries a re-verified invariant state; PurelyInfinite
/// carries a re-verified transport witness for 2*F0 below F0. The two
/// certificates exclude each other.
struct Verdict {
  enum class Outcome {
    StablyFinite,
    PurelyInfinite,
    HypothesesNotMet,
    Inconclusive
  };

  Outcome outcome = Outcome::Inconclusive;
  ValidationReport validation;
  GateResult minimal;
  GateResult topologically_free;
  GateResult closed_action;
  PlainParadoxReport paradox_probe;
  /// The probe folded to a gate: No on a definite violation, Unknown when
  /// some paradoxical sample's (2,1) check exhausted its budget.
  Tri probe_gate = Tri::Unknown;
  /// Filled when the pipeline reached the state/paradox stage.
  std::optional<TarskiResult> tarski;
  std::optional<StateWitness> state;
  std::optional<TransportWitness> witness;
  std::vector<std::string> reasons;
  Budgets budgets;
  std::string note;
};

std::string outcome_to_string(Verdict::Outcome o);

/// The full pipeline: action validation, the hypothesis gates, then the
/// state/paradox dichotomy on the model's designated unit. Any gate No
/// gives HypothesesNotMet; a gate Unknown gives Inconclusive; otherwise
/// the Tarski stage decides. Certificates are re-verified from scratch
/// before they are attached; a failure there throws InternalCheckError.
/// Requires a nonzero finite-valued designated unit.
Verdict analyze(const ActionModel &model);

Json verdict_to_json(const ActionModel &model, const Verdict &v);
/// Short human-readable synopsis, one line per pipeline stage.
std::string verdict_summary(const ActionModel &model, const Verdict &v);

} // namespace typesem

#endif // TYPESEM_VERDICT_HPP

#include "typesem/verdict.hpp"

#include "typesem/errors.hpp"

namespace typesem {

namespace {

Tri fold_probe(const PlainParadoxReport &r) {
  bool unknown = false;
  for (const PlainParadoxEntry &e : r.entries) {
    if (e.first_n == 0)
      continue;
    if (e.two_one == Tri::No)
      return Tri::No;
    if (e.two_one != Tri::Yes)
      unknown = true;
  }
  return unknown ? Tri::Unknown : Tri::Yes;
}

} // namespace

std::string outcome_to_string(Verdict::Outcome o) {
  switch (o) {
  case Verdict::Outcome::StablyFinite:
    return "StablyFinite";
  case Verdict::Outcome::PurelyInfinite:
    return "PurelyInfinite";
  case Verdict::Outcome::HypothesesNotMet:
    return "HypothesesNotMet";
  case Verdict::Outcome::Inconclusive:
    return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict analyze(const ActionModel &model) {
  const LscFun &unit = model.normalize_at;
  if (unit.is_zero())
    throw ModelError("analyze: the designated unit must be nonzero");
  if (!unit.is_finite_valued())
    throw ModelError("analyze: the designated unit must be finite valued");

  Verdict v;
  v.budgets = model.budgets;
  v.validation = validate_action(model);
  v.minimal = is_minimal(model);
  v.topologically_free = is_topologically_free(model);
  v.closed_action = is_closed_action(model);
  v.paradox_probe =
      plain_paradox_probe(model, model.probe_samples, model.budgets.nmax);
  v.probe_gate = fold_probe(v.paradox_probe);

  if (!v.validation.ok) {
    v.outcome = Verdict::Outcome::HypothesesNotMet;
    for (const std::string &f : v.validation.failures)
      v.reasons.push_back("action axioms: " + f);
    v.note = "the action failed validation";
    return v;
  }

  struct NamedGate {
    const char *name;
    Tri status;
    const std::string &note;
  };
  static const std::string empty;
  const NamedGate gates[] = {
      {"minimality", v.minimal.status, v.minimal.note},
      {"topological freeness", v.topologically_free.status,
       v.topologically_free.note},
      {"closedness of the action", v.closed_action.status,
       v.closed_action.note},
      {"plain paradoxes probe", v.probe_gate, v.paradox_probe.note},
  };
  for (const NamedGate &g : gates)
    if (g.status == Tri::No)
      v.reasons.push_back(std::string(g.name) +
                          (g.note.empty() ? "" : ": " + g.note));
  if (!v.reasons.empty()) {
    v.outcome = Verdict::Outcome::HypothesesNotMet;
    v.note = "a dichotomy hypothesis fails";
    return v;
  }
  for (const NamedGate &g : gates)
    if (g.status == Tri::Unknown)
      v.reasons.push_back(std::string(g.name) + " undecided within budgets" +
                          (g.note.empty() ? "" : ": " + g.note));
  if (!v.reasons.empty()) {
    v.outcome = Verdict::Outcome::Inconclusive;
    v.note = "hypotheses not certified within " + v.budgets.to_string();
    return v;
  }

  if (model.space->is_finite()) {
    // Minimality is certified at this point, and mass is conserved by
    // every partial bijection, so no paradox is possible: go straight to
    // the state, which still gets emitted as the certificate.
    StateOutcome st = find_invariant_state(model, unit);
    if (const auto *w = std::get_if<StateWitness>(&st)) {
      if (!verify_state(model, *w))
        throw InternalCheckError(
            "analyze: the state certificate failed re-verification");
      v.state = *w;
      v.outcome = Verdict::Outcome::StablyFinite;
      v.note = "finite minimal model: mass conservation forbids paradoxes; "
               "the invariant state is the certificate";
      return v;
    }
    throw InternalCheckError(
        "analyze: a finite minimal model must carry an invariant state");
  }

  TarskiResult t = tarski_test(unit, model);
  v.tarski = t;
  switch (t.kind) {
  case TarskiResult::Kind::StateExists: {
    if (!t.state || !verify_state(model, *t.state))
      throw InternalCheckError(
          "analyze: the state certificate failed re-verification");
    v.state = t.state;
    v.outcome = Verdict::Outcome::StablyFinite;
    v.note = "normalized invariant state found; Tarski excludes every "
             "(n+1,n)-paradox on the unit";
    return v;
  }
  case TarskiResult::Kind::Paradoxical: {
    std::optional<TransportWitness> w;
    if (t.n == 1) {
      w = t.witness;
    } else {
      Decision d = is_kl_paradoxical(unit, 2, 1, model);
      if (d.outcome == Decision::Outcome::Yes)
        w = d.witness;
    }
    if (!w) {
      v.outcome = Verdict::Outcome::Inconclusive;
      v.reasons.push_back(
          "a (" + std::to_string(t.n + 1) + "," + std::to_string(t.n) +
          ")-paradox was found but the (2,1) upgrade exhausted its budget");
      v.note = "paradoxical without a (2,1) certificate within " +
               v.budgets.to_string();
      return v;
    }
    WitnessReport rep =
        apply_witness(*w, lsc_add(unit, unit), unit);
    if (!rep.ok)
      throw InternalCheckError(
          "analyze: the paradox certificate failed re-verification");
    v.witness = w;
    v.outcome = Verdict::Outcome::PurelyInfinite;
    v.note = "the unit is (2,1)-paradoxical";
    return v;
  }
  case TarskiResult::Kind::Unknown:
    break;
  }
  v.outcome = Verdict::Outcome::Inconclusive;
  v.reasons.push_back(t.note);
  v.note = "state and paradox searches both exhausted " +
           v.budgets.to_string();
  return v;
}

Json verdict_to_json(const ActionModel &model, const Verdict &v) {
  Json j = Json::object();
  j["schema"] = 1;
  j["model"] = model.name;

  Json sp = Json::object();
  if (model.space->is_finite()) {
    sp["type"] = "finite";
    sp["points"] = model.space->fin().points.size();
  } else {
    sp["type"] = "path";
    sp["vertices"] = model.space->graph().vertices.size();
    sp["edges"] = model.space->graph().edges.size();
  }
  j["space"] = std::move(sp);

  Json sg = Json::object();
  sg["elements"] = model.sgrp.size();
  sg["saturated"] = model.sgrp.saturated();
  j["semigroup"] = std::move(sg);

  j["budgets"] = budgets_to_json(v.budgets);
  j["validation"] = validation_to_json(v.validation);

  Json hyp = Json::object();
  hyp["minimal"] = gate_to_json(v.minimal);
  hyp["topologically_free"] = gate_to_json(v.topologically_free);
  Json closed = gate_to_json(v.closed_action);
  closed["interpretation"] =
      "closedness of the action is the checkable sufficient condition for "
      "the reduced and essential crossed products to coincide";
  hyp["closed_action"] = std::move(closed);
  Json probe = Json::object();
  probe["status"] = tri_label(v.probe_gate);
  probe["report"] = probe_to_json(v.paradox_probe);
  hyp["plain_paradoxes_probe"] = std::move(probe);
  j["hypotheses"] = std::move(hyp);

  j["unit"] = lsc_to_json(model.normalize_at);
  if (v.tarski)
    j["tarski"] = tarski_to_json(*v.tarski);

  j["outcome"] = outcome_to_string(v.outcome);
  j["reasons"] = v.reasons;
  if (v.state) {
    Json cert = Json::object();
    cert["type"] = "state";
    cert["state"] = state_to_json(*v.state);
    j["certificate"] = std::move(cert);
  } else if (v.witness) {
    Json cert = Json::object();
    cert["type"] = "paradox";
    cert["k"] = 2;
    cert["l"] = 1;
    cert["on"] = lsc_to_json(model.normalize_at);
    cert["witness"] = witness_to_json(*v.witness);
    j["certificate"] = std::move(cert);
  }

  Json disc = Json::array();
  if (model.space->is_path())
    disc.push_back("states are drawn from the graph-harmonic vertex-weight "
                   "family; the paradox search covers existence beyond it");
  if (!model.sgrp.saturated())
    disc.push_back("the semigroup closure was truncated at len=" +
                   std::to_string(model.budgets.len));
  j["disclosures"] = std::move(disc);
  j["note"] = v.note;
  return j;
}

std::string verdict_summary(const ActionModel &model, const Verdict &v) {
  std::string s = "model " + model.name + ": ";
  if (model.space->is_finite())
    s += "finite space with " +
         std::to_string(model.space->fin().points.size()) + " points";
  else
    s += "path space on " +
         std::to_string(model.space->graph().vertices.size()) +
         " vertices and " +
         std::to_string(model.space->graph().edges.size()) + " edges";
  s += "; semigroup of " + std::to_string(model.sgrp.size()) + " elements";
  if (!model.sgrp.saturated())
    s += " (truncated)";
  s += "\n";
  s += "hypotheses: minimal=" + tri_label(v.minimal.status) +
       " topologically_free=" + tri_label(v.topologically_free.status) +
       " closed_action=" + tri_label(v.closed_action.status) +
       " plain_paradoxes=" + tri_label(v.probe_gate) + "\n";
  s += "outcome: " + outcome_to_string(v.outcome);
  if (!v.note.empty())
    s += " (" + v.note + ")";
  s += "\n";
  for (const std::string &r : v.reasons)
    s += "  reason: " + r + "\n";
  if (v.state) {
    s += "  state:";
    for (const auto &[label, r] : v.state->weights_by_label())
      s += " " + label + "=" + rat_to_string(r);
    s += "\n";
  }
  if (v.witness)
    s += "  witness: " + std::to_string(v.witness->items.size()) +
         " transport items certify 2*unit below unit\n";
  return s;
}

} // namespace typesem

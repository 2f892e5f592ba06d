#ifndef TYPESEM_MODEL_IO_HPP
#define TYPESEM_MODEL_IO_HPP

#include <string>

#include "json.hpp"

#include "typesem/orbit.hpp"
#include "typesem/semigroup.hpp"
#include "typesem/state.hpp"
#include "typesem/subequiv.hpp"
#include "typesem/typeclass.hpp"

namespace typesem {

/// Reports keep insertion order so repeated runs serialize byte-identically.
using Json = nlohmann::ordered_json;

/// Model file schema, version 1. See docs/model_format.md for the grammar.
/// Top level: {"schema":1, "name", "space", "generators", "budgets"?,
/// "unit"?, "samples"?}. Shape problems throw SchemaError with the path of
/// the offending field; semantic problems (a non-injective map, prefix
/// endpoints that do not chain) surface as ModelError from construction.
ActionModel model_from_json(const Json &j);
ActionModel load_model_file(const std::string &path);

/// Accepts {"values":[int|"inf",...]} over a finite space,
/// {"cylinders":[{"word":...,"value":int|"inf"},...]} over a path space,
/// and the bare array shorthand for the finite form. `where` prefixes
/// error messages.
LscFun lsc_from_json(const SpacePtr &space, const Json &j,
                     const std::string &where);
/// Parses a command-line argument: JSON in one of the forms above.
LscFun lsc_from_text(const SpacePtr &space, const std::string &text);

/// Overrides the fields of `base` present in the object; unknown keys are
/// rejected.
Budgets budgets_from_json(const Json &j, Budgets base, const std::string &where);
/// Parses "depth=D,len=K,mult=M,nmax=N" with any nonempty subset of keys.
Budgets budgets_from_text(const std::string &text, Budgets base);

/// Tri rendered the way reports spell outcomes: "Yes", "No", "Unknown".
std::string tri_label(Tri t);

Json budgets_to_json(const Budgets &b);
Json lsc_to_json(const LscFun &f);
Json witness_to_json(const TransportWitness &w);
Json state_to_json(const StateWitness &w);
Json infeasibility_to_json(const InfeasibilityCert &c);
Json decision_to_json(const Decision &d);
Json gate_to_json(const GateResult &g);
Json validation_to_json(const ValidationReport &r);
Json tarski_to_json(const TarskiResult &r);
Json probe_to_json(const PlainParadoxReport &r);

/// Canonical report text: two-space indent, a trailing newline.
std::string dump_report(const Json &j);

} // namespace typesem

#endif // TYPESEM_MODEL_IO_HPP

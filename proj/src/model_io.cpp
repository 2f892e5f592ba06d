#include "typesem/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "typesem/errors.hpp"

namespace typesem {

namespace {

const Json &field(const Json &j, const char *key, const std::string &where) {
  if (!j.is_object())
    throw SchemaError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw SchemaError(where + "." + key + ": missing");
  return *it;
}

std::string str_field(const Json &j, const char *key, const std::string &where) {
  const Json &v = field(j, key, where);
  if (!v.is_string())
    throw SchemaError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

void reject_unknown(const Json &j, const std::set<std::string> &allowed,
                    const std::string &where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw SchemaError(where + "." + it.key() + ": unknown field");
}

ExtNat extnat_from_json(const Json &v, const std::string &where) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf")
      return ExtNat::infinity();
    throw SchemaError(where + ": expected a nonnegative integer or \"inf\"");
  }
  if (!v.is_number_integer() || v.is_number_float())
    throw SchemaError(where + ": expected a nonnegative integer or \"inf\"");
  if (v.is_number_unsigned())
    return ExtNat(v.get<std::uint64_t>());
  auto n = v.get<std::int64_t>();
  if (n < 0)
    throw SchemaError(where + ": expected a nonnegative integer or \"inf\"");
  return ExtNat(static_cast<std::uint64_t>(n));
}

Json extnat_to_json(const ExtNat &v) {
  if (v.is_infinite())
    return Json("inf");
  return Json(v.finite_value());
}

OpenSet openset_from_json(const SpacePtr &space, const Json &j,
                          const std::string &where) {
  if (space->is_finite()) {
    const Json &pts = field(j, "points", where);
    if (!pts.is_array())
      throw SchemaError(where + ".points: expected an array of point labels");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!pts[i].is_string())
        throw SchemaError(where + ".points[" + std::to_string(i) +
                          "]: expected a string");
      labels.push_back(pts[i].get<std::string>());
      if (space->fin().index_of(labels.back()) < 0)
        throw SchemaError(where + ".points[" + std::to_string(i) + "]: \"" +
                          labels.back() + "\" is not a point of the space");
    }
    return OpenSet::of_points(space, labels);
  }
  const Json &ws = field(j, "words", where);
  if (!ws.is_array())
    throw SchemaError(where + ".words: expected an array of words");
  std::vector<std::string> words;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (!ws[i].is_string())
      throw SchemaError(where + ".words[" + std::to_string(i) +
                        "]: expected a string");
    words.push_back(ws[i].get<std::string>());
    if (!space->graph().word_valid(words.back()))
      throw SchemaError(where + ".words[" + std::to_string(i) + "]: \"" +
                        words.back() + "\" is not a path in the graph");
  }
  return OpenSet::of_words(space, std::move(words));
}

Json openset_to_json(const OpenSet &u) {
  Json j = Json::object();
  if (u.space()->is_finite()) {
    Json pts = Json::array();
    for (int id : u.point_ids())
      pts.push_back(u.space()->fin().points[id]);
    j["points"] = std::move(pts);
  } else {
    j["words"] = u.words();
  }
  return j;
}

SpacePtr space_from_json(const Json &j) {
  const std::string where = "space";
  std::string type = str_field(j, "type", where);
  if (type == "finite") {
    reject_unknown(j, {"type", "points"}, where);
    const Json &pts = field(j, "points", where);
    if (!pts.is_array() || pts.empty())
      throw SchemaError(where + ".points: expected a nonempty array");
    std::vector<std::string> points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!pts[i].is_string() || pts[i].get<std::string>().empty())
        throw SchemaError(where + ".points[" + std::to_string(i) +
                          "]: expected a nonempty string");
      points.push_back(pts[i].get<std::string>());
    }
    return BaseSpace::make_finite(std::move(points));
  }
  if (type == "path") {
    reject_unknown(j, {"type", "vertices", "edges"}, where);
    const Json &vs = field(j, "vertices", where);
    if (!vs.is_array() || vs.empty())
      throw SchemaError(where + ".vertices: expected a nonempty array");
    std::vector<std::string> vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (!vs[i].is_string() || vs[i].get<std::string>().empty())
        throw SchemaError(where + ".vertices[" + std::to_string(i) +
                          "]: expected a nonempty string");
      vertices.push_back(vs[i].get<std::string>());
    }
    const Json &es = field(j, "edges", where);
    if (!es.is_array() || es.empty())
      throw SchemaError(where + ".edges: expected a nonempty array");
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
    for (std::size_t i = 0; i < es.size(); ++i) {
      std::string ew = where + ".edges[" + std::to_string(i) + "]";
      std::string label = str_field(es[i], "label", ew);
      if (label.size() != 1)
        throw SchemaError(ew + ".label: expected a single character");
      reject_unknown(es[i], {"label", "from", "to"}, ew);
      edges.emplace_back(label, str_field(es[i], "from", ew),
                         str_field(es[i], "to", ew));
    }
    return BaseSpace::make_path(std::move(vertices), std::move(edges));
  }
  throw SchemaError(where + ".type: expected \"finite\" or \"path\"");
}

Mover mover_from_json(const SpacePtr &space, const Json &j,
                      const std::string &where) {
  std::string type = str_field(j, "type", where);
  if (type == "partial_bijection") {
    if (!space->is_finite())
      throw SchemaError(where +
                        ": partial_bijection requires a finite space");
    reject_unknown(j, {"name", "type", "map"}, where);
    const Json &m = field(j, "map", where);
    if (!m.is_object())
      throw SchemaError(where + ".map: expected an object of point pairs");
    std::map<std::string, std::string> table;
    for (auto it = m.begin(); it != m.end(); ++it) {
      if (!it.value().is_string())
        throw SchemaError(where + ".map." + it.key() + ": expected a string");
      if (space->fin().index_of(it.key()) < 0)
        throw SchemaError(where + ".map: \"" + it.key() +
                          "\" is not a point of the space");
      std::string to = it.value().get<std::string>();
      if (space->fin().index_of(to) < 0)
        throw SchemaError(where + ".map." + it.key() + ": \"" + to +
                          "\" is not a point of the space");
      table[it.key()] = to;
    }
    return Mover::finite_map_labels(space, table);
  }
  if (type == "prefix_exchange") {
    if (!space->is_path())
      throw SchemaError(where + ": prefix_exchange requires a path space");
    reject_unknown(j, {"name", "type", "from", "to", "restrict"}, where);
    std::string from = str_field(j, "from", where);
    std::string to = str_field(j, "to", where);
    if (!space->graph().word_valid(from))
      throw SchemaError(where + ".from: \"" + from +
                        "\" is not a path in the graph");
    if (!space->graph().word_valid(to))
      throw SchemaError(where + ".to: \"" + to +
                        "\" is not a path in the graph");
    if (j.contains("restrict"))
      return Mover::prefix_exchange(
          space, from, to,
          openset_from_json(space, j["restrict"], where + ".restrict"));
    return Mover::prefix_exchange(space, from, to);
  }
  throw SchemaError(where +
                    ".type: expected \"partial_bijection\" or "
                    "\"prefix_exchange\"");
}

} // namespace

LscFun lsc_from_json(const SpacePtr &space, const Json &j,
                     const std::string &where) {
  if (j.is_array()) {
    if (!space->is_finite())
      throw SchemaError(where +
                        ": the bare array form requires a finite space");
    std::vector<ExtNat> values;
    for (std::size_t i = 0; i < j.size(); ++i)
      values.push_back(
          extnat_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    if (values.size() != space->fin().points.size())
      throw SchemaError(where + ": expected " +
                        std::to_string(space->fin().points.size()) +
                        " values, got " + std::to_string(values.size()));
    return LscFun::of_values(space, std::move(values));
  }
  if (!j.is_object())
    throw SchemaError(where + ": expected an object or an array");
  if (j.contains("values")) {
    reject_unknown(j, {"values"}, where);
    return lsc_from_json(space, j["values"], where + ".values");
  }
  if (j.contains("cylinders")) {
    reject_unknown(j, {"cylinders"}, where);
    if (!space->is_path())
      throw SchemaError(where + ".cylinders: requires a path space");
    const Json &cs = j["cylinders"];
    if (!cs.is_array())
      throw SchemaError(where + ".cylinders: expected an array");
    std::vector<std::pair<std::string, ExtNat>> entries;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      std::string ew = where + ".cylinders[" + std::to_string(i) + "]";
      std::string word = str_field(cs[i], "word", ew);
      if (!space->graph().word_valid(word))
        throw SchemaError(ew + ".word: \"" + word +
                          "\" is not a path in the graph");
      reject_unknown(cs[i], {"word", "value"}, ew);
      entries.emplace_back(word,
                           extnat_from_json(field(cs[i], "value", ew),
                                            ew + ".value"));
    }
    return LscFun::of_cylinders(space, std::move(entries));
  }
  throw SchemaError(where + ": expected \"values\" or \"cylinders\"");
}

LscFun lsc_from_text(const SpacePtr &space, const std::string &text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw SchemaError(std::string("function argument: ") + e.what());
  }
  return lsc_from_json(space, j, "function argument");
}

Budgets budgets_from_json(const Json &j, Budgets base,
                          const std::string &where) {
  if (!j.is_object())
    throw SchemaError(where + ": expected an object");
  reject_unknown(j, {"depth", "len", "mult", "nmax"}, where);
  auto get = [&](const char *key, int fallback) {
    if (!j.contains(key))
      return fallback;
    const Json &v = j[key];
    if (!v.is_number_integer())
      throw SchemaError(where + "." + key + ": expected an integer");
    return v.get<int>();
  };
  base.depth = get("depth", base.depth);
  base.len = get("len", base.len);
  base.mult = get("mult", base.mult);
  base.nmax = get("nmax", base.nmax);
  return base;
}

Budgets budgets_from_text(const std::string &text, Budgets base) {
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw SchemaError("budgets: expected key=value, got \"" + item + "\"");
    std::string key = item.substr(0, eq);
    int value = 0;
    try {
      std::size_t used = 0;
      value = std::stoi(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1)
        throw std::invalid_argument("");
    } catch (const std::exception &) {
      throw SchemaError("budgets: \"" + item.substr(eq + 1) +
                        "\" is not an integer");
    }
    if (key == "depth")
      base.depth = value;
    else if (key == "len")
      base.len = value;
    else if (key == "mult")
      base.mult = value;
    else if (key == "nmax")
      base.nmax = value;
    else
      throw SchemaError("budgets: unknown key \"" + key + "\"");
  }
  return base;
}

ActionModel model_from_json(const Json &j) {
  if (!j.is_object())
    throw SchemaError("model: expected an object");
  reject_unknown(j,
                 {"schema", "name", "space", "generators", "budgets", "unit",
                  "samples"},
                 "model");
  const Json &schema = field(j, "schema", "model");
  if (!schema.is_number_integer() || schema.get<int>() != 1)
    throw SchemaError("model.schema: expected 1");
  std::string name = str_field(j, "name", "model");
  SpacePtr space = space_from_json(field(j, "space", "model"));

  const Json &gens_j = field(j, "generators", "model");
  if (!gens_j.is_array() || gens_j.empty())
    throw SchemaError("model.generators: expected a nonempty array");
  std::vector<Mover> gens;
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < gens_j.size(); ++i) {
    std::string where = "model.generators[" + std::to_string(i) + "]";
    std::string gname = str_field(gens_j[i], "name", where);
    if (gname.empty() || !seen.insert(gname).second)
      throw SchemaError(where + ".name: generator names must be nonempty "
                        "and distinct");
    gens.push_back(mover_from_json(space, gens_j[i], where));
    names.push_back(gname);
  }

  Budgets budgets;
  if (j.contains("budgets"))
    budgets = budgets_from_json(j["budgets"], budgets, "model.budgets");

  LscFun unit = j.contains("unit")
                    ? lsc_from_json(space, j["unit"], "model.unit")
                    : LscFun::indicator(OpenSet::full_set(space));
  std::vector<LscFun> samples;
  if (j.contains("samples")) {
    const Json &ss = j["samples"];
    if (!ss.is_array())
      throw SchemaError("model.samples: expected an array");
    for (std::size_t i = 0; i < ss.size(); ++i)
      samples.push_back(lsc_from_json(
          space, ss[i], "model.samples[" + std::to_string(i) + "]"));
  } else {
    samples.push_back(unit);
  }

  auto sgrp = InverseSemigroup::closure(space, std::move(gens),
                                        std::move(names), budgets);
  return ActionModel{std::move(name), space,          std::move(sgrp),
                     budgets,         std::move(unit), std::move(samples)};
}

ActionModel load_model_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw SchemaError(path + ": cannot open");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error &e) {
    throw SchemaError(path + ": " + e.what());
  }
  return model_from_json(j);
}

std::string tri_label(Tri t) {
  switch (t) {
  case Tri::Yes:
    return "Yes";
  case Tri::No:
    return "No";
  case Tri::Unknown:
    return "Unknown";
  }
  return "Unknown";
}

Json budgets_to_json(const Budgets &b) {
  Json j = Json::object();
  j["depth"] = b.depth;
  j["len"] = b.len;
  j["mult"] = b.mult;
  j["nmax"] = b.nmax;
  return j;
}

Json lsc_to_json(const LscFun &f) {
  Json j = Json::object();
  if (f.space()->is_finite()) {
    Json values = Json::array();
    for (const ExtNat &v : f.values())
      values.push_back(extnat_to_json(v));
    j["values"] = std::move(values);
  } else {
    Json cs = Json::array();
    for (const auto &[word, value] : f.entries()) {
      Json c = Json::object();
      c["word"] = word;
      c["value"] = extnat_to_json(value);
      cs.push_back(std::move(c));
    }
    j["cylinders"] = std::move(cs);
  }
  return j;
}

Json witness_to_json(const TransportWitness &w) {
  Json items = Json::array();
  for (const WitnessItem &it : w.items) {
    Json item = Json::object();
    item["piece"] = openset_to_json(it.piece);
    item["mover"] = it.mover.display();
    item["mult"] = it.mult;
    items.push_back(std::move(item));
  }
  return items;
}

Json state_to_json(const StateWitness &w) {
  Json weights = Json::object();
  for (const auto &[label, r] : w.weights_by_label())
    weights[label] = rat_to_string(r);
  Json j = Json::object();
  j["weights"] = std::move(weights);
  j["normalized_at"] = lsc_to_json(w.normalized_at());
  j["value"] = "1";
  return j;
}

Json infeasibility_to_json(const InfeasibilityCert &c) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < c.farkas.size(); ++i) {
    if (c.farkas[i] == Rat(0))
      continue;
    Json row = Json::object();
    row["row"] = c.problem.rows[i].name;
    row["multiplier"] = rat_to_string(c.farkas[i]);
    rows.push_back(std::move(row));
  }
  Json j = Json::object();
  j["combination"] = std::move(rows);
  j["derivation"] = c.derivation;
  return j;
}

Json decision_to_json(const Decision &d) {
  Json j = Json::object();
  switch (d.outcome) {
  case Decision::Outcome::Yes:
    j["outcome"] = "Yes";
    break;
  case Decision::Outcome::No:
    j["outcome"] = "No";
    break;
  case Decision::Outcome::Unknown:
    j["outcome"] = "Unknown";
    break;
  }
  j["budgets"] = budgets_to_json(d.budgets);
  if (d.clip_level > 0)
    j["clip_level"] = d.clip_level;
  if (d.witness)
    j["witness"] = witness_to_json(*d.witness);
  if (d.mass_certificate) {
    Json mc = Json::object();
    mc["orbit_points"] = d.mass_certificate->orbit_points;
    mc["f_mass"] = extnat_to_json(d.mass_certificate->f_mass);
    mc["h_mass"] = extnat_to_json(d.mass_certificate->h_mass);
    j["mass_certificate"] = std::move(mc);
  }
  if (d.state_certificate)
    j["state_certificate"] = state_to_json(*d.state_certificate);
  if (!d.note.empty())
    j["note"] = d.note;
  return j;
}

Json gate_to_json(const GateResult &g) {
  Json j = Json::object();
  j["status"] = tri_label(g.status);
  if (!g.note.empty())
    j["note"] = g.note;
  if (g.invariant_witness)
    j["invariant_witness"] = openset_to_json(*g.invariant_witness);
  if (!g.records.empty()) {
    Json rs = Json::array();
    for (const IsotropyRecord &r : g.records) {
      Json rec = Json::object();
      rec["where"] = r.where;
      rec["mover"] = r.mover;
      rec["trivialized"] = r.trivialized;
      rs.push_back(std::move(rec));
    }
    j["records"] = std::move(rs);
  }
  return j;
}

Json validation_to_json(const ValidationReport &r) {
  Json j = Json::object();
  j["ok"] = r.ok;
  j["checks"] = r.checks;
  j["failures"] = r.failures;
  return j;
}

Json tarski_to_json(const TarskiResult &r) {
  Json j = Json::object();
  switch (r.kind) {
  case TarskiResult::Kind::StateExists:
    j["kind"] = "StateExists";
    break;
  case TarskiResult::Kind::Paradoxical:
    j["kind"] = "Paradoxical";
    break;
  case TarskiResult::Kind::Unknown:
    j["kind"] = "Unknown";
    break;
  }
  if (r.state)
    j["state"] = state_to_json(*r.state);
  if (r.kind == TarskiResult::Kind::Paradoxical) {
    j["n"] = r.n;
    if (r.witness)
      j["witness"] = witness_to_json(*r.witness);
  }
  if (r.no_state)
    j["no_state"] = infeasibility_to_json(*r.no_state);
  j["budgets"] = budgets_to_json(r.budgets);
  if (!r.note.empty())
    j["note"] = r.note;
  return j;
}

Json probe_to_json(const PlainParadoxReport &r) {
  Json entries = Json::array();
  for (const PlainParadoxEntry &e : r.entries) {
    Json je = Json::object();
    je["sample"] = lsc_to_json(e.sample);
    je["first_n"] = e.first_n;
    if (e.first_n > 0) {
      je["two_one"] = tri_label(e.two_one);
      if (e.witness)
        je["witness"] = witness_to_json(*e.witness);
    }
    je["violation"] = e.violation;
    je["status"] = e.status;
    entries.push_back(std::move(je));
  }
  Json j = Json::object();
  j["entries"] = std::move(entries);
  j["violation_found"] = r.violation_found;
  j["budgets"] = budgets_to_json(r.budgets);
  j["note"] = r.note;
  return j;
}

std::string dump_report(const Json &j) { return j.dump(2) + "\n"; }

} // namespace typesem

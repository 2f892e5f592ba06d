#include "typesem/orbit.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "typesem/errors.hpp"

namespace typesem {

std::string tri_to_string(Tri t) {
  switch (t) {
  case Tri::Yes:
    return "yes";
  case Tri::No:
    return "no";
  default:
    return "unknown";
  }
}

OrbitGraph build_orbit_graph(const ActionModel &model) {
  OrbitGraph g;
  const auto &elems = model.sgrp.elements();
  const auto &names = model.sgrp.element_names();
  std::set<std::pair<int, int>> seen;

  if (model.space->is_finite()) {
    g.depth = 0;
    g.nodes = model.space->fin().points;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      const Mover &s = elems[i];
      if (s.is_zero())
        continue;
      for (int x = 0; x < static_cast<int>(g.nodes.size()); ++x) {
        if (!s.dom().contains_point(x))
          continue;
        int y = s.apply_point(x);
        if (y == x)
          continue;
        if (seen.insert({x, y}).second)
          g.edges.push_back({x, y, names[i]});
      }
    }
    return g;
  }

  g.depth = model.budgets.depth;
  g.nodes = model.space->graph().words_of_length(g.depth);
  std::vector<OpenSet> tiles;
  tiles.reserve(g.nodes.size());
  for (const auto &w : g.nodes)
    tiles.push_back(OpenSet::of_words(model.space, {w}));
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const Mover &s = elems[i];
    if (s.is_zero())
      continue;
    for (std::size_t a = 0; a < tiles.size(); ++a) {
      OpenSet img = s.image_of(tiles[a]);
      if (img.is_empty())
        continue;
      for (std::size_t b = 0; b < tiles.size(); ++b) {
        if (a == b)
          continue;
        if (set_intersect(img, tiles[b]).is_empty())
          continue;
        auto key = std::make_pair(static_cast<int>(a), static_cast<int>(b));
        if (seen.insert(key).second)
          g.edges.push_back({key.first, key.second, names[i]});
      }
    }
  }
  return g;
}

std::string orbit_graph_dot(const OrbitGraph &g) {
  std::ostringstream out;
  out << "digraph orbits {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    std::string label = g.nodes[i].empty() ? "*" : g.nodes[i];
    out << "  n" << i << " [label=\"" << label << "\"];\n";
  }
  for (const auto &e : g.edges)
    out << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.mover
        << "\"];\n";
  out << "}\n";
  return out.str();
}

std::vector<std::vector<int>> orbit_components(const OrbitGraph &g) {
  int n = static_cast<int>(g.nodes.size());
  std::vector<std::vector<int>> adj(n);
  for (const auto &e : g.edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0)
      continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{start};
    comp[start] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (int w : adj[v])
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

namespace {

/// True iff u is carried into itself by every element of the semigroup.
bool exactly_invariant(const OpenSet &u, const InverseSemigroup &sgrp) {
  for (const Mover &s : sgrp.elements()) {
    if (s.is_zero())
      continue;
    if (!s.image_of(u).subset_of(u))
      return false;
  }
  return true;
}

} // namespace

GateResult is_minimal(const ActionModel &model) {
  GateResult r;
  OrbitGraph g = build_orbit_graph(model);
  auto comps = orbit_components(g);

  if (model.space->is_finite()) {
    if (comps.size() == 1) {
      r.status = Tri::Yes;
      r.note = "orbit graph on " + std::to_string(g.nodes.size()) +
               " points is connected";
      return r;
    }
    OpenSet w = OpenSet::of_point_indices(model.space, comps[0]);
    if (!exactly_invariant(w, model.sgrp))
      throw InternalCheckError(
          "is_minimal: orbit component is not invariant under the closure");
    r.status = Tri::No;
    r.invariant_witness = w;
    r.note = "proper invariant open set among " +
             std::to_string(comps.size()) + " orbit components";
    return r;
  }

  std::string stamp = "depth=" + std::to_string(g.depth) +
                      (model.sgrp.saturated() ? ", closure saturated"
                                              : ", closure truncated");
  if (comps.size() == 1) {
    r.status = Tri::Yes;
    r.note = "every working-depth cylinder reaches every other (" + stamp + ")";
    return r;
  }
  std::vector<std::string> words;
  for (int idx : comps[0])
    words.push_back(g.nodes[idx]);
  OpenSet w = OpenSet::of_words(model.space, words);
  if (!w.is_full() && exactly_invariant(w, model.sgrp)) {
    r.status = Tri::No;
    r.invariant_witness = w;
    r.note = "cylinder union invariant under every closure element (" + stamp +
             ")";
    return r;
  }
  r.status = Tri::Unknown;
  r.note = "cylinder graph disconnects but no exactly invariant union was "
           "certified (" +
           stamp + ")";
  return r;
}

GateResult is_topologically_free(const ActionModel &model) {
  GateResult r;
  const auto &elems = model.sgrp.elements();
  const auto &names = model.sgrp.element_names();
  std::vector<int> idem = model.sgrp.idempotent_ids();

  auto has_trivializer = [&](const Mover &s, const OpenSet &at) {
    for (int vi : idem) {
      const Mover &v = elems[vi];
      if (natural_leq(v, s) && at.subset_of(v.dom()))
        return true;
    }
    return false;
  };

  if (model.space->is_finite()) {
    const auto &points = model.space->fin().points;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      const Mover &s = elems[i];
      if (s.is_zero() || s.is_idempotent())
        continue;
      for (int x = 0; x < static_cast<int>(points.size()); ++x) {
        if (!s.dom().contains_point(x) || s.apply_point(x) != x)
          continue;
        OpenSet at = OpenSet::of_point_indices(model.space, {x});
        r.records.push_back({points[x], names[i], has_trivializer(s, at)});
      }
    }
  } else {
    for (std::size_t i = 0; i < elems.size(); ++i) {
      const Mover &s = elems[i];
      if (s.is_zero() || !s.from_word().empty() || !s.to_word().empty() ||
          s.formal_exponent() == 0)
        continue;
      for (const std::string &w : s.restriction().words()) {
        OpenSet at = OpenSet::of_words(model.space, {w});
        r.records.push_back(
            {"Z(" + w + ")", names[i], has_trivializer(s, at)});
      }
    }
  }

  for (const auto &rec : r.records) {
    if (!rec.trivialized) {
      r.status = Tri::No;
      r.note = "element " + rec.mover + " fixes " + rec.where +
               " with no trivializing idempotent below it";
      return r;
    }
  }

  bool graded = false;
  for (const Mover &s : elems)
    if (s.formal_period() > 0)
      graded = true;
  if (!model.space->is_finite() && graded && !model.sgrp.saturated()) {
    r.status = Tri::Unknown;
    r.note = "formal grading present and the closure is truncated; graded "
             "partial identities may appear past the length budget";
    return r;
  }

  r.status = Tri::Yes;
  r.note = r.records.empty()
               ? "no element fixes anything outside its trivialized part"
               : "every fixed point carries a trivializing idempotent";
  return r;
}

bool relatively_clopen_at_depth(const OpenSet &o, const OpenSet &dom,
                                int depth) {
  if (o.is_empty() || dom.is_empty())
    return true;
  int d = std::max(depth, dom.depth());
  if (o.depth() > d)
    return false;
  for (const std::string &w : dom.tiles_at_depth(d)) {
    OpenSet tile = OpenSet::of_words(o.space(), {w});
    OpenSet cut = set_intersect(o, tile);
    if (!cut.is_empty() && !(cut == tile))
      return false;
  }
  return true;
}

GateResult is_closed_action(const ActionModel &model) {
  GateResult r;
  if (model.space->is_finite()) {
    r.status = Tri::Yes;
    r.note = "finite spaces are discrete; every ideal support is clopen";
    return r;
  }
  int d = model.budgets.depth;
  const auto &elems = model.sgrp.elements();
  const auto &names = model.sgrp.element_names();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const Mover &s = elems[i];
    if (s.is_zero())
      continue;
    OpenSet o = ideal_support(s, model.sgrp);
    if (o.is_empty() || o == s.dom())
      continue;
    if (!relatively_clopen_at_depth(o, s.dom(), d)) {
      r.status = Tri::No;
      r.note = "ideal support of " + names[i] +
               " cuts a working-depth tile of its domain (depth=" +
               std::to_string(d) + ")";
      return r;
    }
  }
  r.status = Tri::Yes;
  r.note = "every ideal support is relatively clopen at depth " +
           std::to_string(d) +
           (model.sgrp.saturated() ? " (closure saturated)"
                                   : " (closure truncated)");
  return r;
}

namespace {

constexpr int kMaxCover = 16;

struct CoverCandidate {
  int elem;
  LscFun piece;
  std::vector<ExtNat> contrib; // values at the common working depth
};

bool all_zero(const std::vector<std::uint64_t> &v) {
  for (auto x : v)
    if (x)
      return false;
  return true;
}

/// Demand-driven multiset search: the first unmet cell must be served by
/// some candidate, so branching on which candidate serves it is complete.
bool cover_dfs(const std::vector<CoverCandidate> &cands,
               std::vector<std::uint64_t> &resid, int left,
               std::vector<int> &picks) {
  std::size_t cell = 0;
  while (cell < resid.size() && resid[cell] == 0)
    ++cell;
  if (cell == resid.size())
    return true;
  if (left == 0)
    return false;
  for (std::size_t ci = 0; ci < cands.size(); ++ci) {
    const auto &c = cands[ci].contrib;
    if (c[cell] == ExtNat(0))
      continue;
    std::vector<std::uint64_t> saved = resid;
    for (std::size_t j = 0; j < resid.size(); ++j) {
      if (c[j].is_infinite())
        resid[j] = 0;
      else
        resid[j] -= std::min(resid[j], c[j].finite_value());
    }
    picks.push_back(static_cast<int>(ci));
    if (cover_dfs(cands, resid, left - 1, picks))
      return true;
    picks.pop_back();
    resid = saved;
  }
  return false;
}

} // namespace

CoveringResult covering_number(const LscFun &x, const LscFun &y,
                               const ActionModel &model) {
  require_same_space(x.space(), model.space, "covering_number");
  require_same_space(y.space(), model.space, "covering_number");
  if (!x.is_finite_valued())
    throw ModelError("covering_number: x must be finite valued");
  if (y.is_zero())
    throw ModelError("covering_number: y must be nonzero");

  CoveringResult res;
  if (x.is_zero()) {
    res.status = Tri::Yes;
    res.m = 0;
    res.note = "x is zero";
    return res;
  }

  // Per element the largest usable piece is y restricted to the domain;
  // contributions are monotone in the piece, so this loses no covers.
  std::vector<CoverCandidate> cands;
  int d = x.depth();
  std::vector<LscFun> contribs;
  for (std::size_t i = 0; i < model.sgrp.elements().size(); ++i) {
    const Mover &s = model.sgrp.elements()[i];
    if (s.is_zero())
      continue;
    LscFun piece = y.restricted_to(s.dom());
    if (piece.is_zero())
      continue;
    LscFun c = s.push_forward(piece);
    if (c.is_zero())
      continue;
    d = std::max(d, c.depth());
    cands.push_back({static_cast<int>(i), piece, {}});
    contribs.push_back(c);
  }
  bool finite_space = model.space->is_finite();
  auto values_at = [&](const LscFun &f) {
    return finite_space ? f.values() : f.values_at_depth(d);
  };
  for (std::size_t i = 0; i < cands.size(); ++i)
    cands[i].contrib = values_at(contribs[i]);

  std::vector<ExtNat> want = values_at(x);
  std::vector<std::uint64_t> demand(want.size());
  for (std::size_t j = 0; j < want.size(); ++j)
    demand[j] = want[j].finite_value();

  // Cells no candidate can serve stay unmet at any multiplicity.
  for (std::size_t j = 0; j < demand.size(); ++j) {
    if (demand[j] == 0)
      continue;
    bool served = false;
    for (const auto &c : cands)
      if (!(c.contrib[j] == ExtNat(0)))
        served = true;
    if (!served) {
      res.status = Tri::No;
      res.note = "a cell of x receives no transported mass from any element";
      return res;
    }
  }

  for (int m = 1; m <= kMaxCover; ++m) {
    std::vector<std::uint64_t> resid = demand;
    std::vector<int> picks;
    if (!cover_dfs(cands, resid, m, picks))
      continue;
    if (!all_zero(resid))
      throw InternalCheckError("covering_number: search returned unmet cover");
    LscFun total = LscFun::zero(model.space);
    res.cover.clear();
    for (int ci : picks) {
      const Mover &s = model.sgrp.elements()[cands[ci].elem];
      res.cover.emplace_back(cands[ci].piece, s);
      total = lsc_add(total, s.push_forward(cands[ci].piece));
    }
    if (!lsc_leq(x, total))
      throw InternalCheckError("covering_number: cover fails re-verification");
    res.status = Tri::Yes;
    res.m = static_cast<int>(picks.size());
    res.note = "cover of size " + std::to_string(res.m) + " re-verified";
    return res;
  }

  res.status = Tri::Unknown;
  res.m = 0;
  res.note = "no cover within m <= " + std::to_string(kMaxCover) +
             " under budgets " + model.budgets.to_string();
  return res;
}

} // namespace typesem

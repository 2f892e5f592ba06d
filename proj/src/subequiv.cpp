#include "typesem/subequiv.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "typesem/errors.hpp"
#include "typesem/lp.hpp"
#include "typesem/orbit.hpp"

namespace typesem {

namespace {

std::string ext_str(const ExtNat &v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

/// First cell where a <= b fails, rendered for a failure message.
std::string first_gap(const LscFun &a, const LscFun &b) {
  const SpacePtr &sp = a.space();
  if (sp->is_finite()) {
    const auto &pts = sp->fin().points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      ExtNat av = a.value_at_point(static_cast<int>(i));
      ExtNat bv = b.value_at_point(static_cast<int>(i));
      if (!(av <= bv))
        return pts[i] + ": " + ext_str(av) + " > " + ext_str(bv);
    }
  } else {
    int d = std::max(a.depth(), b.depth());
    auto tiles = sp->graph().words_of_length(d);
    auto av = a.values_at_depth(d);
    auto bv = b.values_at_depth(d);
    for (std::size_t i = 0; i < tiles.size(); ++i)
      if (!(av[i] <= bv[i]))
        return "Z(" + tiles[i] + "): " + ext_str(av[i]) + " > " +
               ext_str(bv[i]);
  }
  return "(no violating cell found)";
}

/// Dense max-flow by shortest augmenting paths. The networks here have a
/// handful of nodes, so adjacency matrices are fine.
struct FlowNet {
  int n;
  std::vector<std::vector<std::uint64_t>> cap;

  explicit FlowNet(int nodes)
      : n(nodes), cap(nodes, std::vector<std::uint64_t>(nodes, 0)) {}

  std::uint64_t max_flow(int s, int t) {
    std::uint64_t total = 0;
    for (;;) {
      std::vector<int> prev(n, -1);
      prev[s] = s;
      std::deque<int> queue{s};
      while (!queue.empty() && prev[t] < 0) {
        int u = queue.front();
        queue.pop_front();
        for (int v = 0; v < n; ++v)
          if (prev[v] < 0 && cap[u][v] > 0) {
            prev[v] = u;
            queue.push_back(v);
          }
      }
      if (prev[t] < 0)
        return total;
      std::uint64_t push = UINT64_MAX;
      for (int v = t; v != s; v = prev[v])
        push = std::min(push, cap[prev[v]][v]);
      for (int v = t; v != s; v = prev[v]) {
        cap[prev[v]][v] -= push;
        cap[v][prev[v]] += push;
      }
      total += push;
    }
  }
};

Decision decide_finite(const LscFun &F, const LscFun &H,
                       const ActionModel &model, const Budgets &budgets) {
  Decision d;
  d.budgets = budgets;
  const auto &points = model.space->fin().points;
  int n = static_cast<int>(points.size());
  auto comps = orbit_components(build_orbit_graph(model));
  std::vector<int> comp_of(n, -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int x : comps[c])
      comp_of[x] = static_cast<int>(c);

  // Route one: conservation of mass, orbit by orbit, exact in ExtNat.
  std::vector<ExtNat> f_mass(comps.size()), h_mass(comps.size());
  for (int x = 0; x < n; ++x) {
    f_mass[comp_of[x]] += F.value_at_point(x);
    h_mass[comp_of[x]] += H.value_at_point(x);
  }
  int bad = -1;
  for (std::size_t c = 0; c < comps.size() && bad < 0; ++c)
    if (!(f_mass[c] <= h_mass[c]))
      bad = static_cast<int>(c);

  // Route two: transport as max-flow on the finite part. Infinite supply
  // is feasible exactly when its orbit contains infinite capacity.
  std::uint64_t total = 0;
  std::vector<std::uint64_t> supply(n, 0);
  bool inf_routable = true;
  for (int x = 0; x < n; ++x) {
    ExtNat v = F.value_at_point(x);
    if (v.is_infinite()) {
      bool served = false;
      for (int y : comps[comp_of[x]])
        if (H.value_at_point(y).is_infinite())
          served = true;
      inf_routable = inf_routable && served;
    } else {
      supply[x] = v.finite_value();
      total += supply[x];
    }
  }
  int src = 2 * n, snk = 2 * n + 1;
  FlowNet net(2 * n + 2);
  for (int x = 0; x < n; ++x) {
    net.cap[src][x] = supply[x];
    ExtNat hv = H.value_at_point(x);
    net.cap[n + x][snk] =
        hv.is_infinite() ? total : std::min(hv.finite_value(), total);
    for (int y = 0; y < n; ++y)
      if (comp_of[x] == comp_of[y])
        net.cap[x][n + y] = total;
  }
  bool flow_ok = (net.max_flow(src, snk) == total) && inf_routable;

  if ((bad < 0) != flow_ok)
    throw InternalCheckError(
        "decide_subequiv: the mass route and the flow route disagree");

  if (bad >= 0) {
    MassCertificate cert;
    for (int x : comps[bad]) {
      cert.orbit_points.push_back(points[x]);
      cert.f_mass += F.value_at_point(x);
      cert.h_mass += H.value_at_point(x);
    }
    if (cert.f_mass <= cert.h_mass)
      throw InternalCheckError(
          "decide_subequiv: mass certificate failed re-verification");
    d.outcome = Decision::Outcome::No;
    d.mass_certificate = cert;
    d.note = "the orbit through " + points[comps[bad][0]] +
             " carries F-mass " + ext_str(cert.f_mass) + " but only H-mass " +
             ext_str(cert.h_mass);
    return d;
  }

  // Pointwise dominance needs no transport at all; the identity witness is
  // the canonical certificate for it.
  if (lsc_leq(F, H)) {
    TransportWitness w;
    int clip = 0;
    if (!F.is_finite_valued())
      clip = static_cast<int>(F.max_finite_value()) + 1;
    for (int x = 0; x < n; ++x) {
      ExtNat v = F.value_at_point(x);
      if (v == ExtNat(0))
        continue;
      int mult = v.is_infinite() ? clip : static_cast<int>(v.finite_value());
      w.items.push_back({OpenSet::of_point_indices(model.space, {x}),
                         model.sgrp.unit(), mult});
    }
    LscFun covered =
        clip > 0 ? F.clipped(static_cast<std::uint64_t>(clip)) : F;
    WitnessReport rep = apply_witness(w, covered, H);
    if (!rep.ok)
      throw InternalCheckError(
          "decide_subequiv: identity witness failed re-verification: " +
          rep.failures.front());
    d.outcome = Decision::Outcome::Yes;
    d.witness = std::move(w);
    d.clip_level = clip;
    d.note = "pointwise dominance witnessed by the identity";
    return d;
  }

  // Assemble a witness from the flow decomposition. Transport inside an
  // orbit is realized by a closure element; the first one in element order
  // keeps the output deterministic.
  const auto &elems = model.sgrp.elements();
  auto mover_sending = [&](int x, int y) -> const Mover & {
    for (const Mover &s : elems)
      if (!s.is_zero() && s.dom().contains_point(x) && s.apply_point(x) == y)
        return s;
    throw InternalCheckError(
        "decide_subequiv: no closure element realizes an orbit edge");
  };
  TransportWitness w;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (comp_of[x] != comp_of[y])
        continue;
      std::uint64_t routed = net.cap[n + y][x];
      if (routed == 0)
        continue;
      w.items.push_back({OpenSet::of_point_indices(model.space, {x}),
                         mover_sending(x, y), static_cast<int>(routed)});
    }
  int clip = 0;
  if (!F.is_finite_valued()) {
    clip = static_cast<int>(F.max_finite_value()) + 1;
    for (int x = 0; x < n; ++x) {
      if (!F.value_at_point(x).is_infinite())
        continue;
      int target = -1;
      for (int y : comps[comp_of[x]])
        if (target < 0 && H.value_at_point(y).is_infinite())
          target = y;
      if (target < 0)
        throw InternalCheckError(
            "decide_subequiv: infinite supply lost its infinite sink");
      w.items.push_back({OpenSet::of_point_indices(model.space, {x}),
                         mover_sending(x, target), clip});
    }
  }
  LscFun covered = clip > 0 ? F.clipped(static_cast<std::uint64_t>(clip)) : F;
  WitnessReport rep = apply_witness(w, covered, H);
  if (!rep.ok)
    throw InternalCheckError(
        "decide_subequiv: assembled witness failed re-verification: " +
        rep.failures.front());
  d.outcome = Decision::Outcome::Yes;
  d.witness = std::move(w);
  d.clip_level = clip;
  d.note = clip > 0 ? "transport witness for F clipped at " +
                          std::to_string(clip)
                    : "exact transport witness";
  return d;
}

/// A piece cylinder paired with a closure element defined on it, with the
/// footprint of piece and image at the working depth precomputed.
struct Cand {
  std::string word;
  int elem = -1;
  OpenSet piece;
  OpenSet image;
  std::vector<int> piece_tiles;
  std::vector<int> image_tiles;
};

/// Depth-first cover search over candidate multiset solutions: always
/// branch on the first tile with unmet demand, cap per-candidate use by the
/// mult budget, and memoize usage vectors that already failed. Residual
/// demand and used capacity are functions of the usage vector, so the memo
/// is sound; branching on a single unmet tile is complete because any
/// extension of the current usage must cover that tile.
struct CoverSearch {
  const std::vector<Cand> &cands;
  const std::vector<std::vector<int>> &by_tile;
  const std::vector<ExtNat> &cap;
  int mult_budget;
  std::vector<std::uint64_t> demand;
  std::vector<std::uint64_t> used;
  std::vector<int> usage;
  std::set<std::vector<int>> failed;

  bool run() {
    int j = -1;
    for (std::size_t k = 0; k < demand.size(); ++k)
      if (demand[k] > 0) {
        j = static_cast<int>(k);
        break;
      }
    if (j < 0)
      return true;
    for (int ci : by_tile[j]) {
      if (usage[ci] >= mult_budget)
        continue;
      const Cand &c = cands[ci];
      bool fits = true;
      for (int k : c.image_tiles)
        if (cap[k].is_finite() && used[k] + 1 > cap[k].finite_value()) {
          fits = false;
          break;
        }
      if (!fits)
        continue;
      ++usage[ci];
      for (int k : c.image_tiles)
        ++used[k];
      std::vector<int> dec;
      for (int k : c.piece_tiles)
        if (demand[k] > 0) {
          --demand[k];
          dec.push_back(k);
        }
      if (failed.find(usage) == failed.end()) {
        if (run())
          return true; // usage is left holding the solution
        failed.insert(usage);
      }
      for (int k : dec)
        ++demand[k];
      for (int k : c.image_tiles)
        --used[k];
      --usage[ci];
    }
    return false;
  }
};

// A harmonic state with nu(F) = 1 > nu(H) rules out every transport
// witness at every budget, so the No it certifies is unconditional. It is
// checked before the cover search: on models carrying invariant states the
// search would otherwise exhaust its whole usage space just to learn
// nothing. Requires finite-valued F. H's infinite cells are forced to be
// null, since a state separates only if it keeps nu(H) finite below 1.
std::optional<std::pair<StateWitness, Rat>>
separating_state(const LscFun &F, const LscFun &H, const ActionModel &model) {
  const auto &g = model.space->graph();
  int nv = static_cast<int>(g.vertices.size());
  LpProblem lp;
  lp.nvars = nv;
  for (int v = 0; v < nv; ++v) {
    LinRow row;
    row.coef.assign(nv, 0);
    row.coef[v] += 1;
    for (int ei : g.out_edges(v))
      row.coef[g.edges[ei].dst] -= 1;
    bool zero = true;
    for (const Rat &c : row.coef)
      if (c != 0)
        zero = false;
    if (zero)
      continue;
    row.sense = Sense::EQ;
    row.rhs = 0;
    row.name = "harmonic at " + g.vertices[v];
    lp.rows.push_back(std::move(row));
  }
  OpenSet inf_h = H.inf_region();
  for (const std::string &word : inf_h.words()) {
    LinRow row;
    row.coef = measure_coefficients(model.space,
                                    OpenSet::of_words(model.space, {word}));
    row.sense = Sense::EQ;
    row.rhs = 0;
    row.name = "null at Z(" + word + ")";
    lp.rows.push_back(std::move(row));
  }
  std::vector<Rat> cf(nv, 0), ch(nv, 0);
  for (const auto &[word, val] : F.entries()) {
    auto c = measure_coefficients(model.space,
                                  OpenSet::of_words(model.space, {word}));
    for (int v = 0; v < nv; ++v)
      cf[v] += Rat(val.finite_value()) * c[v];
  }
  for (const auto &[word, val] : H.entries()) {
    if (val.is_infinite())
      continue;
    auto c = measure_coefficients(model.space,
                                  OpenSet::of_words(model.space, {word}));
    for (int v = 0; v < nv; ++v)
      ch[v] += Rat(val.finite_value()) * c[v];
  }
  LinRow bound;
  bound.coef = cf;
  bound.sense = Sense::LE;
  bound.rhs = 1;
  bound.name = "nu(F) bounded";
  lp.rows.push_back(std::move(bound));
  lp.objective.assign(nv, 0);
  for (int v = 0; v < nv; ++v)
    lp.objective[v] = cf[v] - ch[v];
  LpResult r = solve_lp(lp);
  if (r.status != LpStatus::Optimal || !(r.objective_value > 0))
    return std::nullopt;
  Rat vf = 0;
  for (int v = 0; v < nv; ++v)
    vf += cf[v] * r.solution[v];
  std::vector<Rat> weights(nv);
  for (int v = 0; v < nv; ++v)
    weights[v] = r.solution[v] / vf;
  StateWitness sw(model.space, std::move(weights), F);
  if (!verify_state(model, sw))
    throw InternalCheckError(
        "decide_subequiv: separating state failed re-verification");
  ExtRat ef = sw.eval(F);
  ExtRat eh = sw.eval(H);
  if (ef.inf || ef.v != 1 || eh.inf || !(eh.v < 1))
    throw InternalCheckError(
        "decide_subequiv: separating state does not separate");
  return std::make_pair(std::move(sw), eh.v);
}

Decision decide_path(const LscFun &F, const LscFun &H,
                     const ActionModel &model, const Budgets &budgets) {
  Decision d;
  d.budgets = budgets;
  const auto &g = model.space->graph();
  const auto &elems = model.sgrp.elements();
  const auto &names = model.sgrp.element_names();

  // Pointwise dominance short-circuits to the identity witness; this also
  // settles reflexivity without any search.
  if (lsc_leq(F, H)) {
    TransportWitness w;
    int clip = 0;
    if (!F.is_finite_valued())
      clip = static_cast<int>(F.max_finite_value()) + 1;
    for (const auto &[word, val] : F.entries()) {
      int mult =
          val.is_infinite() ? clip : static_cast<int>(val.finite_value());
      if (mult == 0)
        continue;
      w.items.push_back({OpenSet::of_words(model.space, {word}),
                         model.sgrp.unit(), mult});
    }
    LscFun covered =
        clip > 0 ? F.clipped(static_cast<std::uint64_t>(clip)) : F;
    WitnessReport rep = apply_witness(w, covered, H);
    if (!rep.ok)
      throw InternalCheckError(
          "decide_subequiv: identity witness failed re-verification: " +
          rep.failures.front());
    d.outcome = Decision::Outcome::Yes;
    d.witness = std::move(w);
    d.clip_level = clip;
    d.note = "pointwise dominance witnessed by the identity";
    return d;
  }

  if (F.is_finite_valued()) {
    if (auto sep = separating_state(F, H, model)) {
      d.outcome = Decision::Outcome::No;
      d.note =
          "harmonic state with nu(F) = 1 > nu(H) = " + rat_to_string(sep->second);
      d.state_certificate = std::move(sep->first);
      return d;
    }
  }

  // Two candidates with the same piece and the same image are
  // interchangeable for the cover arithmetic; keep the one whose element
  // name is smallest. Inside its domain a prefix exchange sends the
  // cylinder of w to the cylinder of p + (w minus q), so duplicates are
  // recognized on words alone and only the survivors get their image sets
  // materialized.
  std::vector<Cand> cands;
  for (int len = 0; len <= budgets.depth; ++len)
    for (const std::string &word : g.words_of_length(len)) {
      OpenSet piece = OpenSet::of_words(model.space, {word});
      std::map<std::string, std::size_t> best;
      for (std::size_t e = 0; e < elems.size(); ++e) {
        const Mover &m = elems[e];
        if (m.is_zero() || !word.starts_with(m.from_word()))
          continue;
        if (!piece.subset_of(m.restriction()))
          continue;
        std::string img = m.to_word() + word.substr(m.from_word().size());
        auto it = best.find(img);
        if (it == best.end() || names[e] < names[it->second])
          best[img] = e;
      }
      for (auto &[img, e] : best)
        cands.push_back(Cand{word, static_cast<int>(e), piece,
                             elems[e].image_of(piece), {}, {}});
    }
  // Candidates are tried in (piece word, mover name) order, which makes
  // the first witness found the lexicographically smallest one.
  std::sort(cands.begin(), cands.end(), [&](const Cand &a, const Cand &b) {
    if (a.word != b.word)
      return shortlex_less(a.word, b.word);
    return names[a.elem] < names[b.elem];
  });

  // Everything is compared on the common refinement level.
  int W = std::max(budgets.depth, std::max(F.depth(), H.depth()));
  for (const Cand &c : cands)
    W = std::max(W, c.image.depth());
  std::vector<std::string> tiles = g.words_of_length(W);
  int T = static_cast<int>(tiles.size());
  // Fixed-length tiles sort lexicographically, so the tiles below a word
  // occupy one contiguous index range; assembling index lists from ranges
  // avoids expanding every cylinder into strings.
  auto append_range = [&tiles](const std::string &u, std::vector<int> &out) {
    auto cmp = [n = u.size()](const std::string &a, const std::string &b) {
      return a.compare(0, n, b, 0, n) < 0;
    };
    auto lo = std::lower_bound(tiles.begin(), tiles.end(), u, cmp);
    auto hi = std::upper_bound(tiles.begin(), tiles.end(), u, cmp);
    for (auto it = lo; it != hi; ++it)
      out.push_back(static_cast<int>(it - tiles.begin()));
  };
  for (Cand &c : cands) {
    for (const std::string &u : c.piece.words())
      append_range(u, c.piece_tiles);
    for (const std::string &u : c.image.words())
      append_range(u, c.image_tiles);
    std::sort(c.piece_tiles.begin(), c.piece_tiles.end());
    std::sort(c.image_tiles.begin(), c.image_tiles.end());
  }
  std::vector<ExtNat> fw = F.values_at_depth(W);
  std::vector<ExtNat> hw = H.values_at_depth(W);

  // Tiles where F is infinite are routed into the infinite region of H up
  // front, at the clip level; the finite search never has to meet them.
  int clip = 0;
  std::vector<WitnessItem> inf_items;
  if (!F.is_finite_valued()) {
    clip = static_cast<int>(F.max_finite_value()) + 1;
    OpenSet inf_h = H.inf_region();
    for (int k = 0; k < T; ++k) {
      if (!fw[k].is_infinite())
        continue;
      OpenSet tile = OpenSet::of_words(model.space, {tiles[k]});
      bool served = false;
      for (const Cand &c : cands) {
        if (!tile.subset_of(c.piece))
          continue;
        OpenSet timg = elems[c.elem].image_of(tile);
        if (!timg.subset_of(inf_h))
          continue;
        inf_items.push_back({tile, elems[c.elem], clip});
        served = true;
        break;
      }
      if (!served) {
        d.outcome = Decision::Outcome::Unknown;
        d.note = "no witness within budgets (" + budgets.to_string() +
                 "): the infinite cell Z(" + tiles[k] +
                 ") found no transport into the infinite region of H";
        return d;
      }
    }
  }

  std::vector<std::uint64_t> demand(T, 0);
  for (int k = 0; k < T; ++k)
    if (!fw[k].is_infinite())
      demand[k] = fw[k].finite_value();
  std::vector<std::vector<int>> by_tile(T);
  for (int i = 0; i < static_cast<int>(cands.size()); ++i)
    for (int k : cands[i].piece_tiles)
      by_tile[k].push_back(i);

  CoverSearch search{cands,
                     by_tile,
                     hw,
                     budgets.mult,
                     demand,
                     std::vector<std::uint64_t>(T, 0),
                     std::vector<int>(cands.size(), 0),
                     {}};
  if (search.run()) {
    TransportWitness w;
    for (int i = 0; i < static_cast<int>(cands.size()); ++i)
      if (search.usage[i] > 0)
        w.items.push_back(
            {cands[i].piece, elems[cands[i].elem], search.usage[i]});
    for (const WitnessItem &it : inf_items)
      w.items.push_back(it);
    LscFun covered =
        clip > 0 ? F.clipped(static_cast<std::uint64_t>(clip)) : F;
    WitnessReport rep = apply_witness(w, covered, H);
    if (!rep.ok)
      throw InternalCheckError(
          "decide_subequiv: assembled witness failed re-verification: " +
          rep.failures.front());
    d.outcome = Decision::Outcome::Yes;
    d.witness = std::move(w);
    d.clip_level = clip;
    d.note = clip > 0 ? "transport witness for F clipped at " +
                            std::to_string(clip)
                      : "transport witness at depth " + std::to_string(W);
    return d;
  }

  // No separating state (that was ruled out before the search), so the
  // budget-limited exhaustion proves nothing.
  d.outcome = Decision::Outcome::Unknown;
  d.note = "no witness within budgets (" + budgets.to_string() + ")";
  return d;
}

} // namespace

WitnessReport apply_witness(const TransportWitness &w, const LscFun &F,
                            const LscFun &H) {
  require_same_space(F.space(), H.space(), "apply_witness");
  WitnessReport rep;
  LscFun cover = LscFun::zero(F.space());
  LscFun image = LscFun::zero(F.space());
  for (std::size_t i = 0; i < w.items.size(); ++i) {
    const WitnessItem &it = w.items[i];
    require_same_space(it.piece.space(), F.space(), "apply_witness");
    require_same_space(it.mover.space(), F.space(), "apply_witness");
    if (it.mult < 1) {
      rep.failures.push_back("item " + std::to_string(i) +
                             ": multiplicity must be at least 1");
      continue;
    }
    if (!it.piece.subset_of(it.mover.dom())) {
      rep.failures.push_back("item " + std::to_string(i) + ": piece " +
                             it.piece.to_string() + " is not contained in dom(" +
                             it.mover.display() + ")");
      continue;
    }
    ExtNat m(static_cast<std::uint64_t>(it.mult));
    cover = lsc_add(cover, LscFun::indicator(it.piece).scaled(m));
    image =
        lsc_add(image, LscFun::indicator(it.mover.image_of(it.piece)).scaled(m));
  }
  if (!lsc_leq(F, cover))
    rep.failures.push_back("coverage misses F at " + first_gap(F, cover));
  if (!lsc_leq(image, H))
    rep.failures.push_back("images overfill H at " + first_gap(image, H));
  rep.ok = rep.failures.empty();
  return rep;
}

Decision decide_subequiv(const LscFun &F, const LscFun &H,
                         const ActionModel &model, const Budgets &budgets) {
  require_same_space(F.space(), model.space, "decide_subequiv");
  require_same_space(H.space(), model.space, "decide_subequiv");
  if (budgets.depth < 0 || budgets.mult < 1)
    throw ModelError("decide_subequiv: budgets must be positive");
  if (model.space->is_finite())
    return decide_finite(F, H, model, budgets);
  return decide_path(F, H, model, budgets);
}

Decision brute_force_subequiv(const LscFun &F, const LscFun &H,
                              const ActionModel &model, const Budgets &bounds) {
  require_same_space(F.space(), model.space, "brute_force_subequiv");
  require_same_space(H.space(), model.space, "brute_force_subequiv");
  if (bounds.mult < 1 || bounds.mult > 4)
    throw ModelError("brute_force_subequiv: the mult bound must be 1..4");
  Decision d;
  d.budgets = bounds;
  const auto &elems = model.sgrp.elements();

  if (model.space->is_finite()) {
    const auto &points = model.space->fin().points;
    int n = static_cast<int>(points.size());
    if (n > 6)
      throw ModelError(
          "brute_force_subequiv: refuses finite spaces with more than 6 points");
    if (!F.is_finite_valued() ||
        F.max_finite_value() > static_cast<std::uint64_t>(bounds.mult))
      throw ModelError(
          "brute_force_subequiv: refuses left sides above the mult bound");
    // Candidates are single points paired with every element defined
    // there, in reversed element order. Any witness splits into such unit
    // moves with per-candidate multiplicity at most F's maximum, so within
    // the accepted bounds an exhausted search is a genuine No.
    struct PointMove {
      int x;
      int e;
      int y;
    };
    std::vector<PointMove> moves;
    for (int x = 0; x < n; ++x)
      for (int e = static_cast<int>(elems.size()) - 1; e >= 0; --e) {
        if (elems[e].is_zero() || !elems[e].dom().contains_point(x))
          continue;
        moves.push_back({x, e, elems[e].apply_point(x)});
      }
    std::vector<std::uint64_t> demand(n, 0), used(n, 0);
    for (int x = 0; x < n; ++x)
      demand[x] = F.value_at_point(x).finite_value();
    std::vector<int> usage(moves.size(), 0);
    std::function<bool()> rec = [&]() -> bool {
      int j = -1;
      for (int x = 0; x < n; ++x)
        if (demand[x] > 0) {
          j = x;
          break;
        }
      if (j < 0)
        return true;
      for (std::size_t i = 0; i < moves.size(); ++i) {
        if (moves[i].x != j || usage[i] >= bounds.mult)
          continue;
        ExtNat hv = H.value_at_point(moves[i].y);
        if (hv.is_finite() && used[moves[i].y] + 1 > hv.finite_value())
          continue;
        ++usage[i];
        ++used[moves[i].y];
        --demand[j];
        if (rec())
          return true;
        ++demand[j];
        --used[moves[i].y];
        --usage[i];
      }
      return false;
    };
    if (rec()) {
      TransportWitness w;
      for (std::size_t i = 0; i < moves.size(); ++i)
        if (usage[i] > 0)
          w.items.push_back(
              {OpenSet::of_point_indices(model.space, {moves[i].x}),
               elems[moves[i].e], usage[i]});
      WitnessReport rep = apply_witness(w, F, H);
      if (!rep.ok)
        throw InternalCheckError(
            "brute_force_subequiv: witness failed re-verification: " +
            rep.failures.front());
      d.outcome = Decision::Outcome::Yes;
      d.witness = std::move(w);
      d.note = "exhaustive enumeration found a witness";
    } else {
      d.outcome = Decision::Outcome::No;
      d.note = "exhaustive enumeration found no witness";
    }
    return d;
  }

  if (bounds.depth > 2)
    throw ModelError("brute_force_subequiv: refuses path depth above 2");
  if (!F.is_finite_valued())
    throw ModelError(
        "brute_force_subequiv: refuses infinite left sides on path spaces");
  const auto &g = model.space->graph();
  // Same cover arithmetic as the engine, but with no deduplication, no
  // memoization, shallowest pieces first, and elements in reversed order.
  std::vector<Cand> cands;
  for (int len = 0; len <= bounds.depth; ++len)
    for (const std::string &word : g.words_of_length(len)) {
      OpenSet piece = OpenSet::of_words(model.space, {word});
      for (int e = static_cast<int>(elems.size()) - 1; e >= 0; --e) {
        if (elems[e].is_zero() || !piece.subset_of(elems[e].dom()))
          continue;
        cands.push_back(
            Cand{word, e, piece, elems[e].image_of(piece), {}, {}});
      }
    }
  int W = std::max(bounds.depth, std::max(F.depth(), H.depth()));
  for (const Cand &c : cands)
    W = std::max(W, c.image.depth());
  std::vector<std::string> tiles = g.words_of_length(W);
  int T = static_cast<int>(tiles.size());
  std::map<std::string, int> tile_index;
  for (int i = 0; i < T; ++i)
    tile_index[tiles[i]] = i;
  for (Cand &c : cands) {
    for (const std::string &t : c.piece.tiles_at_depth(W))
      c.piece_tiles.push_back(tile_index.at(t));
    for (const std::string &t : c.image.tiles_at_depth(W))
      c.image_tiles.push_back(tile_index.at(t));
  }
  std::vector<ExtNat> fw = F.values_at_depth(W);
  std::vector<ExtNat> hw = H.values_at_depth(W);
  std::vector<std::uint64_t> demand(T, 0), used(T, 0);
  for (int k = 0; k < T; ++k)
    demand[k] = fw[k].finite_value();
  std::vector<int> usage(cands.size(), 0);
  std::function<bool()> rec = [&]() -> bool {
    int j = -1;
    for (int k = 0; k < T; ++k)
      if (demand[k] > 0) {
        j = k;
        break;
      }
    if (j < 0)
      return true;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const Cand &c = cands[i];
      if (usage[i] >= bounds.mult)
        continue;
      if (std::find(c.piece_tiles.begin(), c.piece_tiles.end(), j) ==
          c.piece_tiles.end())
        continue;
      bool fits = true;
      for (int k : c.image_tiles)
        if (hw[k].is_finite() && used[k] + 1 > hw[k].finite_value()) {
          fits = false;
          break;
        }
      if (!fits)
        continue;
      ++usage[i];
      for (int k : c.image_tiles)
        ++used[k];
      std::vector<int> dec;
      for (int k : c.piece_tiles)
        if (demand[k] > 0) {
          --demand[k];
          dec.push_back(k);
        }
      if (rec())
        return true;
      for (int k : dec)
        ++demand[k];
      for (int k : c.image_tiles)
        --used[k];
      --usage[i];
    }
    return false;
  };
  if (rec()) {
    TransportWitness w;
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (usage[i] > 0)
        w.items.push_back({cands[i].piece, elems[cands[i].elem], usage[i]});
    WitnessReport rep = apply_witness(w, F, H);
    if (!rep.ok)
      throw InternalCheckError(
          "brute_force_subequiv: witness failed re-verification: " +
          rep.failures.front());
    d.outcome = Decision::Outcome::Yes;
    d.witness = std::move(w);
    d.note = "exhaustive enumeration found a witness";
  } else {
    d.outcome = Decision::Outcome::Unknown;
    d.note = "exhaustive enumeration within the oracle bounds found nothing";
  }
  return d;
}

TransportWitness compose_witnesses(const TransportWitness &w1,
                                   const TransportWitness &w2, const LscFun &F,
                                   const LscFun &G, const LscFun &H) {
  WitnessReport r1 = apply_witness(w1, F, G);
  if (!r1.ok)
    throw ModelError(
        "compose_witnesses: the first witness does not certify F below G: " +
        r1.failures.front());
  WitnessReport r2 = apply_witness(w2, G, H);
  if (!r2.ok)
    throw ModelError(
        "compose_witnesses: the second witness does not certify G below H: " +
        r2.failures.front());

  std::vector<WitnessItem> u1, u2;
  for (const WitnessItem &it : w1.items)
    for (int c = 0; c < it.mult; ++c)
      u1.push_back({it.piece, it.mover, 1});
  for (const WitnessItem &it : w2.items)
    for (int c = 0; c < it.mult; ++c)
      u2.push_back({it.piece, it.mover, 1});

  // Split the images of the first witness along the pieces of the second.
  // With indicator rows pinned from both sides the refinement matrix is
  // zero/one, so each cell is an honest subset to transport onward.
  std::vector<LscFun> f, x, y;
  for (const WitnessItem &it : u1) {
    LscFun ind = LscFun::indicator(it.mover.image_of(it.piece));
    f.push_back(ind);
    x.push_back(ind);
  }
  for (const WitnessItem &it : u2)
    y.push_back(LscFun::indicator(it.piece));
  auto parts = almost_refinement(f, x, y);

  TransportWitness out;
  std::map<std::string, int> slot;
  for (std::size_t i = 0; i < u1.size(); ++i) {
    Mover si = u1[i].mover.restricted_to(u1[i].piece);
    for (std::size_t j = 0; j < u2.size(); ++j) {
      if (parts[i][j].is_zero())
        continue;
      OpenSet part = parts[i][j].support();
      OpenSet piece = si.preimage_of(part);
      Mover step = compose(u2[j].mover, si);
      std::string key = piece.to_string() + " | " + step.display();
      auto it = slot.find(key);
      if (it == slot.end()) {
        slot.emplace(key, static_cast<int>(out.items.size()));
        out.items.push_back({piece, step, 1});
      } else {
        out.items[it->second].mult += 1;
      }
    }
  }
  WitnessReport rc = apply_witness(out, F, H);
  if (!rc.ok)
    throw InternalCheckError(
        "compose_witnesses: the composite witness failed re-verification: " +
        rc.failures.front());
  return out;
}

} // namespace typesem

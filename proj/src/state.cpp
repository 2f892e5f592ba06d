#include "typesem/state.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "typesem/errors.hpp"

namespace typesem {

StateWitness::StateWitness(SpacePtr space, std::vector<Rat> weights,
                           LscFun normalized_at)
    : space_(std::move(space)), weights_(std::move(weights)),
      normalized_at_(std::move(normalized_at)) {
  require_same_space(space_, normalized_at_.space(), "StateWitness");
  std::size_t need = space_->is_finite() ? space_->fin().points.size()
                                         : space_->graph().vertices.size();
  if (weights_.size() != need)
    throw ModelError("StateWitness: weight count does not match the space");
  for (const Rat &w : weights_)
    if (w < 0)
      throw ModelError("StateWitness: negative weight");
}

std::map<std::string, Rat> StateWitness::weights_by_label() const {
  std::map<std::string, Rat> out;
  const auto &labels = space_->is_finite() ? space_->fin().points
                                           : space_->graph().vertices;
  for (std::size_t i = 0; i < labels.size(); ++i)
    out[labels[i]] = weights_[i];
  return out;
}

Rat StateWitness::measure(const OpenSet &u) const {
  require_same_space(space_, u.space(), "StateWitness::measure");
  Rat acc = 0;
  if (space_->is_finite()) {
    for (int id : u.point_ids())
      acc += weights_[id];
    return acc;
  }
  for (const std::string &w : u.words()) {
    if (w.empty()) {
      for (const Rat &t : weights_)
        acc += t;
    } else {
      acc += weights_[space_->graph().word_dst(w)];
    }
  }
  return acc;
}

ExtRat StateWitness::eval(const LscFun &f) const {
  require_same_space(space_, f.space(), "StateWitness::eval");
  ExtRat acc;
  if (space_->is_finite()) {
    for (std::size_t x = 0; x < weights_.size(); ++x) {
      ExtNat v = f.value_at_point(static_cast<int>(x));
      if (v.is_infinite()) {
        if (weights_[x] > 0)
          return ExtRat::infinity();
      } else {
        acc.v += Rat(v.finite_value()) * weights_[x];
      }
    }
    return acc;
  }
  for (const auto &[word, v] : f.entries()) {
    Rat mu = measure(OpenSet::of_words(space_, {word}));
    if (v.is_infinite()) {
      if (mu > 0)
        return ExtRat::infinity();
    } else {
      acc.v += Rat(v.finite_value()) * mu;
    }
  }
  return acc;
}

std::vector<Rat> measure_coefficients(const SpacePtr &space, const OpenSet &u) {
  const auto &g = space->graph();
  std::vector<Rat> c(g.vertices.size(), 0);
  for (const std::string &w : u.words()) {
    if (w.empty()) {
      for (auto &v : c)
        v += 1;
    } else {
      c[g.word_dst(w)] += 1;
    }
  }
  return c;
}

namespace {

bool all_zero(const std::vector<Rat> &v) {
  for (const Rat &x : v)
    if (x != 0)
      return false;
  return true;
}

} // namespace

LpProblem build_state_lp(const ActionModel &model, const LscFun &normalize_at) {
  require_same_space(model.space, normalize_at.space(), "build_state_lp");
  if (!normalize_at.is_finite_valued() || normalize_at.is_zero())
    throw ModelError("build_state_lp: normalization target must be finite "
                     "valued and nonzero");

  LpProblem lp;
  if (model.space->is_finite()) {
    const auto &points = model.space->fin().points;
    int n = static_cast<int>(points.size());
    lp.nvars = n;
    std::set<std::pair<int, int>> seen;
    const auto &elems = model.sgrp.elements();
    const auto &names = model.sgrp.element_names();
    for (std::size_t i = 0; i < elems.size(); ++i) {
      const Mover &s = elems[i];
      if (s.is_zero())
        continue;
      for (int x = 0; x < n; ++x) {
        if (!s.dom().contains_point(x))
          continue;
        int y = s.apply_point(x);
        if (y == x)
          continue;
        auto key = std::minmax(x, y);
        if (!seen.insert(key).second)
          continue;
        LinRow row;
        row.coef.assign(n, 0);
        row.coef[x] = 1;
        row.coef[y] = -1;
        row.name = "invariant(" + points[x] + "~" + points[y] + " by " +
                   names[i] + ")";
        lp.rows.push_back(std::move(row));
      }
    }
    LinRow norm;
    norm.coef.assign(n, 0);
    for (int x = 0; x < n; ++x)
      norm.coef[x] = Rat(normalize_at.value_at_point(x).finite_value());
    norm.rhs = 1;
    norm.name = "normalization";
    lp.rows.push_back(std::move(norm));
    return lp;
  }

  const auto &g = model.space->graph();
  int n = static_cast<int>(g.vertices.size());
  lp.nvars = n;
  for (int v = 0; v < n; ++v) {
    LinRow row;
    row.coef.assign(n, 0);
    row.coef[v] += 1;
    for (int ei : g.out_edges(v))
      row.coef[g.edges[ei].dst] -= 1;
    if (all_zero(row.coef))
      continue;
    row.name = "harmonic(" + g.vertices[v] + ")";
    lp.rows.push_back(std::move(row));
  }
  const auto &gens = model.sgrp.generators();
  const auto &gnames = model.sgrp.generator_names();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero())
      continue;
    std::vector<Rat> d = measure_coefficients(model.space, gens[i].dom());
    std::vector<Rat> r = measure_coefficients(model.space, gens[i].ran());
    LinRow row;
    row.coef.assign(n, 0);
    for (int v = 0; v < n; ++v)
      row.coef[v] = d[v] - r[v];
    if (all_zero(row.coef))
      continue;
    row.name = "invariance(" + gnames[i] + ")";
    lp.rows.push_back(std::move(row));
  }
  LinRow norm;
  norm.coef.assign(n, 0);
  for (const auto &[word, val] : normalize_at.entries()) {
    std::vector<Rat> c =
        measure_coefficients(model.space, OpenSet::of_words(model.space, {word}));
    for (int v = 0; v < n; ++v)
      norm.coef[v] += Rat(val.finite_value()) * c[v];
  }
  norm.rhs = 1;
  norm.name = "normalization";
  lp.rows.push_back(std::move(norm));
  return lp;
}

StateOutcome find_invariant_state(const ActionModel &model,
                                  const LscFun &normalize_at) {
  LpProblem lp = build_state_lp(model, normalize_at);
  LpResult r = solve_lp(lp);
  if (r.status == LpStatus::Optimal) {
    StateWitness w(model.space, r.solution, normalize_at);
    if (!verify_state(model, w))
      throw InternalCheckError(
          "find_invariant_state: witness failed re-verification");
    return w;
  }
  if (r.status != LpStatus::Infeasible)
    throw InternalCheckError("find_invariant_state: feasibility LP reported "
                             "unbounded");
  InfeasibilityCert cert;
  cert.problem = lp;
  cert.farkas = r.farkas;
  std::ostringstream d;
  d << "no nonnegative weights satisfy the system; the combination";
  for (std::size_t i = 0; i < lp.rows.size(); ++i)
    if (r.farkas[i] != 0)
      d << " + (" << rat_to_string(r.farkas[i]) << ")*[" << lp.rows[i].name
        << "]";
  d << " has every weight coefficient <= 0 but right-hand side > 0";
  cert.derivation = d.str();
  if (!verify_farkas(lp, cert.farkas))
    throw InternalCheckError(
        "find_invariant_state: certificate failed re-verification");
  return cert;
}

bool verify_state(const ActionModel &model, const StateWitness &w) {
  LpProblem lp = build_state_lp(model, w.normalized_at());
  if (!verify_feasible(lp, w.weights()))
    return false;
  ExtRat norm = w.eval(w.normalized_at());
  if (norm.inf || norm.v != 1)
    return false;
  if (model.space->is_finite())
    return true;
  // Sampled cylinder invariance per generator: mu(Z(q w)) = mu(Z(p w)) for
  // every continuation w up to the depth budget.
  for (const Mover &s : model.sgrp.generators()) {
    if (s.is_zero())
      continue;
    OpenSet dom = s.dom();
    int d = std::max(model.budgets.depth, dom.depth());
    for (const std::string &tile : dom.tiles_at_depth(d)) {
      OpenSet before = OpenSet::of_words(model.space, {tile});
      if (w.measure(before) != w.measure(s.image_of(before)))
        return false;
    }
  }
  return true;
}

ExtRat lift_state_to_functional(const StateWitness &nu, const LscFun &f) {
  // The sup over finite-valued z way below f is the weighted finite part,
  // plus infinity exactly when the infinite region has positive measure.
  return nu.eval(f);
}

DiagonalElement DiagonalElement::make(SpacePtr space,
                                      std::vector<std::vector<Rat>> eigs) {
  if (!space->is_finite())
    throw ModelError("DiagonalElement: finite base spaces only");
  if (eigs.size() != space->fin().points.size())
    throw ModelError("DiagonalElement: one eigenvalue list per point");
  DiagonalElement a(std::move(space));
  for (auto &list : eigs) {
    for (const Rat &v : list)
      if (v <= 0)
        throw ModelError("DiagonalElement: eigenvalues must be positive");
    std::sort(list.begin(), list.end(), std::greater<Rat>());
  }
  a.eigs_ = std::move(eigs);
  return a;
}

DiagonalElement DiagonalElement::zero(SpacePtr space) {
  if (!space->is_finite())
    throw ModelError("DiagonalElement: finite base spaces only");
  std::size_t n = space->fin().points.size();
  return make(std::move(space), std::vector<std::vector<Rat>>(n));
}

bool DiagonalElement::is_zero() const {
  for (const auto &list : eigs_)
    if (!list.empty())
      return false;
  return true;
}

LscFun DiagonalElement::rank_vector() const {
  std::vector<ExtNat> v;
  v.reserve(eigs_.size());
  for (const auto &list : eigs_)
    v.emplace_back(static_cast<std::uint64_t>(list.size()));
  return LscFun::of_values(space_, std::move(v));
}

DiagonalElement DiagonalElement::cut_down(const Rat &t) const {
  if (t < 0)
    throw ModelError("DiagonalElement::cut_down: negative cut level");
  std::vector<std::vector<Rat>> out(eigs_.size());
  for (std::size_t x = 0; x < eigs_.size(); ++x)
    for (const Rat &v : eigs_[x])
      if (v > t)
        out[x].push_back(v - t);
  return make(space_, std::move(out));
}

DiagonalElement direct_sum(const DiagonalElement &a, const DiagonalElement &b) {
  require_same_space(a.space_, b.space_, "direct_sum");
  std::vector<std::vector<Rat>> out = a.eigs_;
  for (std::size_t x = 0; x < out.size(); ++x)
    out[x].insert(out[x].end(), b.eigs_[x].begin(), b.eigs_[x].end());
  return DiagonalElement::make(a.space_, std::move(out));
}

bool operator==(const DiagonalElement &a, const DiagonalElement &b) {
  return a.space_->same_as(*b.space_) && a.eigs_ == b.eigs_;
}

DiagonalElement rho_embed(const LscFun &f) {
  if (!f.space()->is_finite())
    throw ModelError("rho_embed: finite base spaces only");
  if (!f.is_finite_valued())
    throw ModelError("rho_embed: function must be finite valued");
  std::vector<std::vector<Rat>> eigs(f.space()->fin().points.size());
  for (std::size_t x = 0; x < eigs.size(); ++x) {
    std::uint64_t k = f.value_at_point(static_cast<int>(x)).finite_value();
    eigs[x].assign(static_cast<std::size_t>(k), Rat(1));
  }
  return DiagonalElement::make(f.space(), std::move(eigs));
}

DiagonalElement transport_diagonal(const Mover &s, const DiagonalElement &a) {
  require_same_space(s.space(), a.space(), "transport_diagonal");
  if (!s.space()->is_finite())
    throw ModelError("transport_diagonal: finite base spaces only");
  const auto &eigs = a.eigenvalues();
  std::vector<std::vector<Rat>> out(eigs.size());
  for (std::size_t x = 0; x < eigs.size(); ++x) {
    if (eigs[x].empty())
      continue;
    if (!s.dom().contains_point(static_cast<int>(x)))
      throw ModelError("transport_diagonal: support not contained in dom(s)");
    out[s.apply_point(static_cast<int>(x))] = eigs[x];
  }
  return DiagonalElement::make(a.space(), std::move(out));
}

Rat quasitrace(const DiagonalElement &a, const StateWitness &beta) {
  require_same_space(a.space(), beta.space(), "quasitrace");
  std::set<Rat> breaks;
  for (const auto &list : a.eigenvalues())
    for (const Rat &v : list)
      breaks.insert(v);
  Rat acc = 0;
  Rat prev = 0;
  for (const Rat &b : breaks) {
    // On (prev, b) the rank at x is the number of eigenvalues >= b.
    std::vector<ExtNat> counts;
    for (const auto &list : a.eigenvalues()) {
      std::uint64_t c = 0;
      for (const Rat &v : list)
        if (v >= b)
          ++c;
      counts.emplace_back(c);
    }
    ExtRat step = beta.eval(LscFun::of_values(a.space(), std::move(counts)));
    if (step.inf)
      throw InternalCheckError("quasitrace: infinite step value");
    acc += (b - prev) * step.v;
    prev = b;
  }
  return acc;
}

} // namespace typesem

#include "typesem/lsc.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "typesem/errors.hpp"

namespace typesem {

namespace {

bool is_prefix(const std::string &p, const std::string &w) {
  return p.size() <= w.size() && w.compare(0, p.size(), p) == 0;
}

ExtNat mult(const ExtNat &a, const ExtNat &b) {
  if (a == ExtNat(0) || b == ExtNat(0))
    return ExtNat(0);
  if (a.is_infinite() || b.is_infinite())
    return ExtNat::infinity();
  return ExtNat(a.finite_value() * b.finite_value());
}

} // namespace

LscFun LscFun::zero(SpacePtr space) {
  LscFun f(std::move(space));
  if (f.space_->is_finite())
    f.vals_.assign(f.space_->fin().points.size(), ExtNat(0));
  return f;
}

LscFun LscFun::indicator(const OpenSet &u) {
  LscFun f(u.space());
  if (f.space_->is_finite()) {
    f.vals_.assign(f.space_->fin().points.size(), ExtNat(0));
    for (int id : u.point_ids())
      f.vals_[id] = ExtNat(1);
  } else {
    for (const std::string &w : u.words())
      f.entries_.emplace_back(w, ExtNat(1));
    f.canonicalize_entries();
  }
  return f;
}

LscFun LscFun::of_values(SpacePtr space, std::vector<ExtNat> values) {
  LscFun f(std::move(space));
  if (!f.space_->is_finite())
    throw ModelError("of_values: not a finite space");
  if (values.size() != f.space_->fin().points.size())
    throw ModelError("of_values: value count does not match point count");
  f.vals_ = std::move(values);
  return f;
}

LscFun LscFun::of_cylinders(SpacePtr space,
                            std::vector<std::pair<std::string, ExtNat>> entries) {
  LscFun f(std::move(space));
  const PathGraph &g = f.space_->graph();
  for (const auto &[w, v] : entries)
    if (!g.word_valid(w))
      throw ModelError("of_cylinders: invalid word '" + w + "'");
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size(); ++j)
      if (is_prefix(entries[i].first, entries[j].first) ||
          is_prefix(entries[j].first, entries[i].first))
        throw ModelError("of_cylinders: words '" + entries[i].first + "' and '" +
                         entries[j].first + "' are not prefix-incomparable");
  f.entries_ = std::move(entries);
  f.canonicalize_entries();
  return f;
}

void LscFun::canonicalize_entries() {
  entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                [](const auto &e) { return e.second == ExtNat(0); }),
                 entries_.end());
  const PathGraph &g = space_->graph();
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::string, ExtNat> present;
    for (const auto &[w, v] : entries_)
      present.emplace(w, v);
    std::set<std::string> parents;
    for (const auto &[w, v] : entries_)
      if (!w.empty())
        parents.insert(w.substr(0, w.size() - 1));
    for (const std::string &p : parents) {
      if (!p.empty() && !g.word_valid(p))
        continue;
      std::vector<std::string> kids = g.children(p);
      bool all = !kids.empty();
      ExtNat v;
      bool first = true;
      for (const std::string &k : kids) {
        auto it = present.find(k);
        if (it == present.end()) {
          all = false;
          break;
        }
        if (first) {
          v = it->second;
          first = false;
        } else if (it->second != v) {
          all = false;
          break;
        }
      }
      if (all) {
        for (const std::string &k : kids)
          present.erase(k);
        present.emplace(p, v);
        changed = true;
      }
    }
    if (changed)
      entries_.assign(present.begin(), present.end());
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const auto &a, const auto &b) { return shortlex_less(a.first, b.first); });
}

const std::vector<ExtNat> &LscFun::values() const {
  if (!space_->is_finite())
    throw ModelError("values: not a finite space");
  return vals_;
}

const std::vector<std::pair<std::string, ExtNat>> &LscFun::entries() const {
  if (!space_->is_path())
    throw ModelError("entries: not a path space");
  return entries_;
}

bool LscFun::is_zero() const {
  if (space_->is_finite()) {
    for (const ExtNat &v : vals_)
      if (v != ExtNat(0))
        return false;
    return true;
  }
  return entries_.empty();
}

ExtNat LscFun::max_value() const {
  ExtNat m(0);
  if (space_->is_finite()) {
    for (const ExtNat &v : vals_)
      m = max(m, v);
  } else {
    for (const auto &[w, v] : entries_)
      m = max(m, v);
  }
  return m;
}

std::uint64_t LscFun::max_finite_value() const {
  std::uint64_t m = 0;
  auto consider = [&m](const ExtNat &v) {
    if (v.is_finite())
      m = std::max(m, v.finite_value());
  };
  if (space_->is_finite())
    for (const ExtNat &v : vals_)
      consider(v);
  else
    for (const auto &[w, v] : entries_)
      consider(v);
  return m;
}

ExtNat LscFun::value_at_point(int id) const {
  if (!space_->is_finite())
    throw ModelError("value_at_point: not a finite space");
  if (id < 0 || id >= static_cast<int>(vals_.size()))
    throw ModelError("value_at_point: index out of range");
  return vals_[id];
}

ExtNat LscFun::value_on_cylinder(const std::string &word) const {
  if (!space_->is_path())
    throw ModelError("value_on_cylinder: not a path space");
  if (!space_->graph().word_valid(word))
    throw ModelError("value_on_cylinder: invalid word '" + word + "'");
  for (const auto &[w, v] : entries_) {
    if (is_prefix(w, word))
      return v;
    if (is_prefix(word, w))
      throw ModelError("value_on_cylinder: function is not constant on Z(" + word + ")");
  }
  return ExtNat(0);
}

int LscFun::depth() const {
  int d = 0;
  for (const auto &[w, v] : entries_)
    d = std::max<int>(d, static_cast<int>(w.size()));
  return d;
}

std::vector<ExtNat> LscFun::values_at_depth(int d) const {
  if (!space_->is_path())
    throw ModelError("values_at_depth: not a path space");
  if (d < depth())
    throw ModelError("values_at_depth: requested depth below the function's depth");
  std::vector<ExtNat> out;
  for (const std::string &w : space_->graph().words_of_length(d))
    out.push_back(value_on_cylinder(w));
  return out;
}

OpenSet LscFun::support() const {
  if (space_->is_finite()) {
    std::vector<int> ids;
    for (std::size_t i = 0; i < vals_.size(); ++i)
      if (vals_[i] != ExtNat(0))
        ids.push_back(static_cast<int>(i));
    return OpenSet::of_point_indices(space_, std::move(ids));
  }
  std::vector<std::string> words;
  for (const auto &[w, v] : entries_)
    words.push_back(w);
  return OpenSet::of_words(space_, std::move(words));
}

OpenSet LscFun::inf_region() const {
  if (space_->is_finite()) {
    std::vector<int> ids;
    for (std::size_t i = 0; i < vals_.size(); ++i)
      if (vals_[i].is_infinite())
        ids.push_back(static_cast<int>(i));
    return OpenSet::of_point_indices(space_, std::move(ids));
  }
  std::vector<std::string> words;
  for (const auto &[w, v] : entries_)
    if (v.is_infinite())
      words.push_back(w);
  return OpenSet::of_words(space_, std::move(words));
}

LscFun LscFun::clipped(std::uint64_t bound) const {
  LscFun f(space_);
  if (space_->is_finite()) {
    for (const ExtNat &v : vals_)
      f.vals_.push_back(min(v, ExtNat(bound)));
  } else {
    for (const auto &[w, v] : entries_)
      f.entries_.emplace_back(w, min(v, ExtNat(bound)));
    f.canonicalize_entries();
  }
  return f;
}

LscFun LscFun::scaled(const ExtNat &k) const {
  LscFun f(space_);
  if (space_->is_finite()) {
    for (const ExtNat &v : vals_)
      f.vals_.push_back(mult(k, v));
  } else {
    for (const auto &[w, v] : entries_)
      f.entries_.emplace_back(w, mult(k, v));
    f.canonicalize_entries();
  }
  return f;
}

LscFun LscFun::restricted_to(const OpenSet &u) const {
  require_same_space(space_, u.space(), "restricted_to");
  if (space_->is_finite()) {
    LscFun f(space_);
    for (std::size_t i = 0; i < vals_.size(); ++i)
      f.vals_.push_back(u.contains_point(static_cast<int>(i)) ? vals_[i] : ExtNat(0));
    return f;
  }
  int w_depth = std::max(depth(), u.depth());
  LscFun f(space_);
  for (const std::string &w : space_->graph().words_of_length(w_depth))
    if (u.contains_cylinder(w))
      f.entries_.emplace_back(w, value_on_cylinder(w));
  f.canonicalize_entries();
  return f;
}

LscFun lsc_add(const LscFun &f, const LscFun &h) {
  require_same_space(f.space_, h.space_, "lsc_add");
  LscFun out(f.space_);
  if (f.space_->is_finite()) {
    for (std::size_t i = 0; i < f.vals_.size(); ++i)
      out.vals_.push_back(f.vals_[i] + h.vals_[i]);
    return out;
  }
  int d = std::max(f.depth(), h.depth());
  for (const std::string &w : f.space_->graph().words_of_length(d)) {
    ExtNat v = f.value_on_cylinder(w) + h.value_on_cylinder(w);
    out.entries_.emplace_back(w, v);
  }
  out.canonicalize_entries();
  return out;
}

bool lsc_leq(const LscFun &f, const LscFun &h) {
  require_same_space(f.space_, h.space_, "lsc_leq");
  if (f.space_->is_finite()) {
    for (std::size_t i = 0; i < f.vals_.size(); ++i)
      if (!(f.vals_[i] <= h.vals_[i]))
        return false;
    return true;
  }
  int d = std::max(f.depth(), h.depth());
  for (const std::string &w : f.space_->graph().words_of_length(d))
    if (!(f.value_on_cylinder(w) <= h.value_on_cylinder(w)))
      return false;
  return true;
}

bool way_below(const LscFun &f, const LscFun &h) {
  return f.is_finite_valued() && lsc_leq(f, h);
}

bool operator==(const LscFun &a, const LscFun &b) {
  require_same_space(a.space_, b.space_, "LscFun equality");
  return a.space_->is_finite() ? a.vals_ == b.vals_ : a.entries_ == b.entries_;
}

bool lex_less(const LscFun &a, const LscFun &b) {
  if (a.space_->is_finite()) {
    for (std::size_t i = 0; i < a.vals_.size() && i < b.vals_.size(); ++i) {
      if (a.vals_[i] != b.vals_[i])
        return a.vals_[i] < b.vals_[i];
    }
    return a.vals_.size() < b.vals_.size();
  }
  std::size_t n = std::min(a.entries_.size(), b.entries_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.entries_[i].first != b.entries_[i].first)
      return shortlex_less(a.entries_[i].first, b.entries_[i].first);
    if (a.entries_[i].second != b.entries_[i].second)
      return a.entries_[i].second < b.entries_[i].second;
  }
  return a.entries_.size() < b.entries_.size();
}

std::string LscFun::to_string() const {
  std::string s = "(";
  bool first = true;
  if (space_->is_finite()) {
    for (const ExtNat &v : vals_) {
      if (!first)
        s += ",";
      s += v.to_string();
      first = false;
    }
  } else {
    for (const auto &[w, v] : entries_) {
      if (!first)
        s += ",";
      s += "Z(" + w + "):" + v.to_string();
      first = false;
    }
  }
  return s + ")";
}

LscFun NormalForm::reconstruct(const SpacePtr &space) const {
  LscFun f = LscFun::zero(space);
  for (const OpenSet &u : levels)
    f = lsc_add(f, LscFun::indicator(u));
  f = lsc_add(f, LscFun::indicator(inf_tail).scaled(ExtNat::infinity()));
  return f;
}

NormalForm normal_form(const LscFun &f) {
  const SpacePtr &space = f.space();
  NormalForm nf{{}, f.inf_region()};
  std::uint64_t n = f.max_finite_value();
  if (space->is_finite()) {
    for (std::uint64_t i = 1; i <= n; ++i) {
      std::vector<int> ids;
      for (std::size_t p = 0; p < f.values().size(); ++p)
        if (f.values()[p] >= ExtNat(i))
          ids.push_back(static_cast<int>(p));
      nf.levels.push_back(OpenSet::of_point_indices(space, std::move(ids)));
    }
    return nf;
  }
  int d = f.depth();
  std::vector<std::string> tiles = space->graph().words_of_length(d);
  for (std::uint64_t i = 1; i <= n; ++i) {
    std::vector<std::string> words;
    for (const std::string &w : tiles)
      if (f.value_on_cylinder(w) >= ExtNat(i))
        words.push_back(w);
    nf.levels.push_back(OpenSet::of_words(space, std::move(words)));
  }
  return nf;
}

LscFun sup_chain(const std::vector<LscFun> &chain, const OpenSet &unbounded) {
  if (chain.empty())
    throw ModelError("sup_chain: empty chain");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!lsc_leq(chain[i], chain[i + 1]))
      throw ModelError("sup_chain: list is not increasing at index " + std::to_string(i));
  require_same_space(chain.front().space(), unbounded.space(), "sup_chain");
  return lsc_add(chain.back(), LscFun::indicator(unbounded).scaled(ExtNat::infinity()));
}

std::vector<std::vector<LscFun>> almost_refinement(const std::vector<LscFun> &f,
                                                   const std::vector<LscFun> &x,
                                                   const std::vector<LscFun> &y) {
  if (f.size() != x.size())
    throw ModelError("almost_refinement: f and x have different lengths");
  if (x.empty() || y.empty())
    throw ModelError("almost_refinement: empty operand list");
  const SpacePtr &space = x.front().space();
  for (std::size_t i = 0; i < x.size(); ++i) {
    require_same_space(space, x[i].space(), "almost_refinement");
    require_same_space(space, f[i].space(), "almost_refinement");
    if (!way_below(f[i], x[i]))
      throw ModelError("almost_refinement: f[" + std::to_string(i) +
                       "] is not way below x[" + std::to_string(i) + "]");
  }
  for (const LscFun &yj : y)
    require_same_space(space, yj.space(), "almost_refinement");

  // Common refinement: points of a finite space, or depth-W tiles.
  std::vector<std::string> tiles;
  std::size_t ncells;
  if (space->is_finite()) {
    ncells = space->fin().points.size();
  } else {
    int d = 0;
    for (const LscFun &g : f)
      d = std::max(d, g.depth());
    for (const LscFun &g : x)
      d = std::max(d, g.depth());
    for (const LscFun &g : y)
      d = std::max(d, g.depth());
    tiles = space->graph().words_of_length(d);
    ncells = tiles.size();
  }
  auto cell_value = [&](const LscFun &g, std::size_t c) {
    return space->is_finite() ? g.value_at_point(static_cast<int>(c))
                              : g.value_on_cylinder(tiles[c]);
  };
  auto cell_name = [&](std::size_t c) {
    return space->is_finite() ? space->fin().points[c] : "Z(" + tiles[c] + ")";
  };

  // Capacity precondition, per cell. Where x_i is infinite only the finite
  // demand f_i needs to fit (f_i is finite-valued since f_i is way below
  // x_i), so sum x_i <= sum y_j may fail at such points without harm.
  for (std::size_t c = 0; c < ncells; ++c) {
    ExtNat demand(0), cap(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      ExtNat s = cell_value(x[i], c);
      demand += s.is_infinite() ? cell_value(f[i], c) : s;
    }
    for (const LscFun &yj : y)
      cap += cell_value(yj, c);
    if (!(demand <= cap))
      throw ModelError("almost_refinement: capacity shortfall at " + cell_name(c));
  }

  std::vector<std::vector<std::vector<ExtNat>>> u(
      x.size(), std::vector<std::vector<ExtNat>>(y.size(),
                                                 std::vector<ExtNat>(ncells, ExtNat(0))));
  for (std::size_t c = 0; c < ncells; ++c) {
    std::vector<ExtNat> cap;
    for (const LscFun &yj : y)
      cap.push_back(cell_value(yj, c));
    for (std::size_t i = 0; i < x.size(); ++i) {
      ExtNat supply = cell_value(x[i], c);
      // Pour only the finite demand f_i where x_i is infinite; this is the
      // shrink that keeps each row sum finite-valued.
      ExtNat need = supply.is_infinite() ? cell_value(f[i], c) : supply;
      for (std::size_t j = 0; j < y.size() && need > ExtNat(0); ++j) {
        ExtNat take = min(need, cap[j]);
        if (take == ExtNat(0))
          continue;
        u[i][j][c] += take;
        cap[j] = saturating_sub(cap[j], take);
        need = saturating_sub(need, take);
      }
      if (need > ExtNat(0))
        throw InternalCheckError("almost_refinement: allocation ran out of capacity");
    }
  }

  std::vector<std::vector<LscFun>> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<LscFun> row;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (space->is_finite()) {
        row.push_back(LscFun::of_values(space, u[i][j]));
      } else {
        std::vector<std::pair<std::string, ExtNat>> entries;
        for (std::size_t c = 0; c < ncells; ++c)
          entries.emplace_back(tiles[c], u[i][j][c]);
        row.push_back(LscFun::of_cylinders(space, std::move(entries)));
      }
    }
    out.push_back(std::move(row));
  }

  // The three defining inequalities are cheap; failing any is a bug.
  for (std::size_t i = 0; i < x.size(); ++i) {
    LscFun rowsum = LscFun::zero(space);
    for (std::size_t j = 0; j < y.size(); ++j)
      rowsum = lsc_add(rowsum, out[i][j]);
    if (!lsc_leq(f[i], rowsum) || !way_below(rowsum, x[i]))
      throw InternalCheckError("almost_refinement: row bound violated");
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    LscFun colsum = LscFun::zero(space);
    for (std::size_t i = 0; i < x.size(); ++i)
      colsum = lsc_add(colsum, out[i][j]);
    if (!lsc_leq(colsum, y[j]))
      throw InternalCheckError("almost_refinement: column bound violated");
  }
  return out;
}

} // namespace typesem

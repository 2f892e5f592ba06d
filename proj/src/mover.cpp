#include "typesem/mover.hpp"

#include <algorithm>

#include "typesem/errors.hpp"

namespace typesem {

namespace {

bool is_prefix(const std::string &p, const std::string &w) {
  return p.size() <= w.size() && w.compare(0, p.size(), p) == 0;
}

int combine_periods(int a, int b) {
  if (a == 0)
    return b;
  if (b == 0)
    return a;
  if (a != b)
    throw ModelError("movers with different formal periods cannot be combined");
  return a;
}

int mod_exp(int e, int per) {
  if (per == 0)
    return 0;
  int r = e % per;
  return r < 0 ? r + per : r;
}

/// One-letter cylinders starting at the given vertex.
OpenSet starts_at(const SpacePtr &space, int vertex) {
  std::vector<std::string> words;
  for (int e : space->graph().out_edges(vertex))
    words.push_back(std::string(1, space->graph().edges[e].label));
  return OpenSet::of_words(space, std::move(words));
}

/// Entries of the set, each expanded until its length is at least d.
std::vector<std::string> entries_at_least(const OpenSet &u, int d) {
  std::vector<std::string> out;
  for (const std::string &w : u.words()) {
    if (static_cast<int>(w.size()) >= d) {
      out.push_back(w);
    } else {
      for (const std::string &x : u.space()->graph().extensions_to_length(w, d))
        out.push_back(x);
    }
  }
  return out;
}

} // namespace

Mover::Mover(SpacePtr space)
    : space_(std::move(space)), restr_(OpenSet::empty_set(space_)) {}

Mover Mover::finite_map(SpacePtr space, std::vector<int> table) {
  Mover m(std::move(space));
  const auto &pts = m.space_->fin().points;
  if (table.size() != pts.size())
    throw ModelError("finite_map: table size does not match point count");
  std::vector<bool> hit(pts.size(), false);
  for (int y : table) {
    if (y == -1)
      continue;
    if (y < 0 || y >= static_cast<int>(pts.size()))
      throw ModelError("finite_map: image index out of range");
    if (hit[y])
      throw ModelError("finite_map: not injective (two points map to '" + pts[y] + "')");
    hit[y] = true;
  }
  m.table_ = std::move(table);
  return m;
}

Mover Mover::finite_map_labels(SpacePtr space,
                               const std::map<std::string, std::string> &table) {
  const FiniteSpace &fin = space->fin();
  std::vector<int> t(fin.points.size(), -1);
  for (const auto &[from, to] : table) {
    int x = fin.index_of(from);
    int y = fin.index_of(to);
    if (x < 0)
      throw ModelError("finite_map: unknown point '" + from + "'");
    if (y < 0)
      throw ModelError("finite_map: unknown point '" + to + "'");
    t[x] = y;
  }
  return finite_map(std::move(space), std::move(t));
}

Mover Mover::prefix_exchange(SpacePtr space, const std::string &from,
                             const std::string &to) {
  OpenSet full = OpenSet::full_set(space);
  return prefix_exchange(std::move(space), from, to, full);
}

Mover Mover::prefix_exchange(SpacePtr space, const std::string &from,
                             const std::string &to, const OpenSet &restriction) {
  Mover m(std::move(space));
  const PathGraph &g = m.space_->graph();
  if (!g.word_valid(from))
    throw ModelError("prefix_exchange: invalid word '" + from + "'");
  if (!g.word_valid(to))
    throw ModelError("prefix_exchange: invalid word '" + to + "'");
  if (!from.empty() && !to.empty() && g.word_dst(from) != g.word_dst(to))
    throw ModelError("prefix_exchange: '" + from + "' and '" + to +
                     "' end at different vertices");
  require_same_space(m.space_, restriction.space(), "prefix_exchange");
  m.q_ = from;
  m.p_ = to;
  m.restr_ = restriction;
  m.normalize_path();
  return m;
}

Mover Mover::identity(SpacePtr space) {
  if (space->is_finite()) {
    std::vector<int> t(space->fin().points.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = static_cast<int>(i);
    return finite_map(std::move(space), std::move(t));
  }
  return prefix_exchange(std::move(space), "", "");
}

Mover Mover::zero_map(SpacePtr space) {
  if (space->is_finite())
    return finite_map(std::move(space), std::vector<int>(space->fin().points.size(), -1));
  OpenSet none = OpenSet::empty_set(space);
  return prefix_exchange(std::move(space), "", "", none);
}

void Mover::normalize_path() {
  // The map q.w -> p.w only makes sense on continuations that chain after
  // both endpoints; when q is empty that is a real constraint on the domain.
  restr_ = set_intersect(restr_, OpenSet::of_words(space_, {q_}));
  if (q_.empty() && !p_.empty())
    restr_ = set_intersect(restr_, starts_at(space_, space_->graph().word_dst(p_)));
  while (!q_.empty() && !p_.empty() && q_.back() == p_.back()) {
    q_.pop_back();
    p_.pop_back();
  }
  if (q_.empty() && !p_.empty())
    restr_ = set_intersect(restr_, starts_at(space_, space_->graph().word_dst(p_)));
  if (restr_.is_empty()) {
    q_.clear();
    p_.clear();
    fper_ = 0;
    fexp_ = 0;
  }
}

Mover Mover::with_formal(int period, int exponent) const {
  if (period < 1)
    throw ModelError("with_formal: period must be at least 1");
  Mover m = *this;
  if (m.is_zero())
    return m;
  int e = mod_exp(exponent, period);
  if (e == 0) {
    m.fper_ = 0;
    m.fexp_ = 0;
  } else {
    m.fper_ = period;
    m.fexp_ = e;
  }
  return m;
}

bool Mover::is_zero() const {
  if (space_->is_finite()) {
    for (int y : table_)
      if (y != -1)
        return false;
    return true;
  }
  return restr_.is_empty();
}

bool Mover::is_idempotent() const {
  if (fexp_ != 0)
    return false;
  if (space_->is_finite()) {
    for (std::size_t x = 0; x < table_.size(); ++x)
      if (table_[x] != -1 && table_[x] != static_cast<int>(x))
        return false;
    return true;
  }
  return q_.empty() && p_.empty();
}

OpenSet Mover::dom() const {
  if (space_->is_finite()) {
    std::vector<int> ids;
    for (std::size_t x = 0; x < table_.size(); ++x)
      if (table_[x] != -1)
        ids.push_back(static_cast<int>(x));
    return OpenSet::of_point_indices(space_, std::move(ids));
  }
  return restr_;
}

OpenSet Mover::ran() const { return image_of(dom()); }

OpenSet Mover::image_of(const OpenSet &u) const {
  require_same_space(space_, u.space(), "image_of");
  if (space_->is_finite()) {
    std::vector<int> ids;
    for (int x : u.point_ids())
      if (table_[x] != -1)
        ids.push_back(table_[x]);
    return OpenSet::of_point_indices(space_, std::move(ids));
  }
  OpenSet v = set_intersect(u, restr_);
  std::vector<std::string> out;
  for (const std::string &w : entries_at_least(v, static_cast<int>(q_.size()))) {
    if (!is_prefix(q_, w))
      throw InternalCheckError("image_of: domain entry does not extend the source word");
    out.push_back(p_ + w.substr(q_.size()));
  }
  return OpenSet::of_words(space_, std::move(out));
}

OpenSet Mover::preimage_of(const OpenSet &u) const { return inverse().image_of(u); }

LscFun Mover::push_forward(const LscFun &f) const {
  require_same_space(space_, f.space(), "push_forward");
  if (space_->is_finite()) {
    std::vector<ExtNat> vals(space_->fin().points.size(), ExtNat(0));
    for (std::size_t x = 0; x < table_.size(); ++x)
      if (table_[x] != -1)
        vals[table_[x]] = f.value_at_point(static_cast<int>(x));
    return LscFun::of_values(space_, std::move(vals));
  }
  int d = std::max({f.depth(), restr_.depth(), static_cast<int>(q_.size())});
  std::vector<std::pair<std::string, ExtNat>> entries;
  for (const std::string &w : entries_at_least(restr_, d)) {
    ExtNat v = f.value_on_cylinder(w);
    entries.emplace_back(p_ + w.substr(q_.size()), v);
  }
  return LscFun::of_cylinders(space_, std::move(entries));
}

Mover Mover::inverse() const {
  Mover m(space_);
  m.fper_ = fper_;
  m.fexp_ = mod_exp(-fexp_, fper_);
  if (space_->is_finite()) {
    m.table_.assign(table_.size(), -1);
    for (std::size_t x = 0; x < table_.size(); ++x)
      if (table_[x] != -1)
        m.table_[table_[x]] = static_cast<int>(x);
    return m;
  }
  m.q_ = p_;
  m.p_ = q_;
  m.restr_ = ran();
  m.normalize_path();
  return m;
}

Mover Mover::restricted_to(const OpenSet &u) const {
  require_same_space(space_, u.space(), "restricted_to");
  Mover m = *this;
  if (space_->is_finite()) {
    for (std::size_t x = 0; x < m.table_.size(); ++x)
      if (!u.contains_point(static_cast<int>(x)))
        m.table_[x] = -1;
    if (m.is_zero()) {
      m.fper_ = 0;
      m.fexp_ = 0;
    }
    return m;
  }
  m.restr_ = set_intersect(m.restr_, u);
  m.normalize_path();
  return m;
}

Mover compose(const Mover &after, const Mover &before) {
  require_same_space(after.space_, before.space_, "compose");
  const SpacePtr &space = after.space_;
  int per = combine_periods(after.fper_, before.fper_);
  int exp = mod_exp(after.fexp_ + before.fexp_, per);
  if (space->is_finite()) {
    std::vector<int> t(before.table_.size(), -1);
    for (std::size_t x = 0; x < before.table_.size(); ++x) {
      int y = before.table_[x];
      if (y != -1 && after.table_[y] != -1)
        t[x] = after.table_[y];
    }
    return Mover::finite_map(space, std::move(t)).with_formal(per == 0 ? 1 : per, exp);
  }
  const std::string &q1 = before.q_, &p1 = before.p_;
  const std::string &q2 = after.q_, &p2 = after.p_;
  std::string q, p;
  if (is_prefix(q2, p1)) {
    q = q1;
    p = p2 + p1.substr(q2.size());
  } else if (is_prefix(p1, q2)) {
    q = q1 + q2.substr(p1.size());
    p = p2;
  } else {
    // Distinct prefixes mean disjoint cylinders, so the domains miss.
    return Mover::zero_map(space);
  }
  const PathGraph &g = space->graph();
  if (!g.word_valid(q) || !g.word_valid(p))
    return Mover::zero_map(space);
  if (!q.empty() && !p.empty() && g.word_dst(q) != g.word_dst(p))
    return Mover::zero_map(space);
  OpenSet d = before.preimage_of(after.dom());
  return Mover::prefix_exchange(space, q, p, d).with_formal(per == 0 ? 1 : per, exp);
}

bool natural_leq(const Mover &s, const Mover &t) {
  require_same_space(s.space_, t.space_, "natural_leq");
  return s == t.restricted_to(s.dom());
}

bool operator==(const Mover &a, const Mover &b) {
  require_same_space(a.space_, b.space_, "Mover equality");
  if (a.fper_ != b.fper_ || a.fexp_ != b.fexp_)
    return false;
  if (a.space_->is_finite())
    return a.table_ == b.table_;
  return a.q_ == b.q_ && a.p_ == b.p_ && a.restr_ == b.restr_;
}

std::string Mover::display() const {
  std::string s;
  if (is_zero())
    return "zero";
  if (space_->is_finite()) {
    s = "pm[";
    bool first = true;
    for (std::size_t x = 0; x < table_.size(); ++x) {
      if (table_[x] == -1)
        continue;
      if (!first)
        s += ",";
      s += space_->fin().points[x] + ">" + space_->fin().points[table_[x]];
      first = false;
    }
    s += "]";
  } else {
    s = "px[" + q_ + ">" + p_ + "|" + restr_.to_string() + "]";
  }
  if (fper_ != 0)
    s += "@" + std::to_string(fexp_) + "/" + std::to_string(fper_);
  return s;
}

const std::vector<int> &Mover::table() const {
  if (!space_->is_finite())
    throw ModelError("table: not a finite space");
  return table_;
}

int Mover::apply_point(int id) const {
  if (!space_->is_finite())
    throw ModelError("apply_point: not a finite space");
  if (id < 0 || id >= static_cast<int>(table_.size()))
    throw ModelError("apply_point: index out of range");
  return table_[id];
}

const std::string &Mover::from_word() const {
  if (!space_->is_path())
    throw ModelError("from_word: not a path space");
  return q_;
}

const std::string &Mover::to_word() const {
  if (!space_->is_path())
    throw ModelError("to_word: not a path space");
  return p_;
}

const OpenSet &Mover::restriction() const {
  if (!space_->is_path())
    throw ModelError("restriction: not a path space");
  return restr_;
}

} // namespace typesem

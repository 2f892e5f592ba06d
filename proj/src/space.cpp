#include "typesem/space.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

#include "typesem/errors.hpp"

namespace typesem {

bool shortlex_less(const std::string &a, const std::string &b) {
  if (a.size() != b.size())
    return a.size() < b.size();
  return a < b;
}

int FiniteSpace::index_of(const std::string &label) const {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i] == label)
      return static_cast<int>(i);
  return -1;
}

int PathGraph::vertex_index(const std::string &name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name)
      return static_cast<int>(i);
  return -1;
}

int PathGraph::edge_by_label(char label) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].label == label)
      return static_cast<int>(i);
  return -1;
}

std::vector<int> PathGraph::out_edges(int vertex) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].src == vertex)
      out.push_back(static_cast<int>(i));
  std::sort(out.begin(), out.end(),
            [this](int a, int b) { return edges[a].label < edges[b].label; });
  return out;
}

bool PathGraph::word_valid(const std::string &word) const {
  int at = -1;
  for (char c : word) {
    int e = edge_by_label(c);
    if (e < 0)
      return false;
    if (at >= 0 && edges[e].src != at)
      return false;
    at = edges[e].dst;
  }
  return true;
}

int PathGraph::word_src(const std::string &word) const {
  if (word.empty())
    return -1;
  int e = edge_by_label(word.front());
  return e < 0 ? -1 : edges[e].src;
}

int PathGraph::word_dst(const std::string &word) const {
  if (word.empty())
    return -1;
  int e = edge_by_label(word.back());
  return e < 0 ? -1 : edges[e].dst;
}

std::vector<std::string> PathGraph::children(const std::string &word) const {
  std::vector<std::string> out;
  if (word.empty()) {
    for (const Edge &e : edges)
      out.push_back(std::string(1, e.label));
    std::sort(out.begin(), out.end());
    return out;
  }
  int v = word_dst(word);
  for (int e : out_edges(v))
    out.push_back(word + edges[e].label);
  return out;
}

std::vector<std::string> PathGraph::words_of_length(int len) const {
  std::vector<std::string> cur{""};
  for (int i = 0; i < len; ++i) {
    std::vector<std::string> next;
    for (const std::string &w : cur)
      for (const std::string &c : children(w))
        next.push_back(c);
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

std::vector<std::string> PathGraph::extensions_to_length(const std::string &word,
                                                         int len) const {
  if (len < static_cast<int>(word.size()))
    throw ModelError("extensions_to_length: target length below word length");
  std::vector<std::string> cur{word};
  for (int i = static_cast<int>(word.size()); i < len; ++i) {
    std::vector<std::string> next;
    for (const std::string &w : cur)
      for (const std::string &c : children(w))
        next.push_back(c);
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

std::shared_ptr<const BaseSpace> BaseSpace::make_finite(std::vector<std::string> points) {
  if (points.empty())
    throw ModelError("finite space needs at least one point");
  std::set<std::string> seen;
  for (const std::string &p : points) {
    if (p.empty())
      throw ModelError("finite space: empty point label");
    if (!seen.insert(p).second)
      throw ModelError("finite space: duplicate point label '" + p + "'");
  }
  auto sp = std::shared_ptr<BaseSpace>(new BaseSpace());
  sp->kind_ = Kind::Finite;
  sp->fin_.points = std::move(points);
  return sp;
}

std::shared_ptr<const BaseSpace>
BaseSpace::make_path(std::vector<std::string> vertices,
                     std::vector<std::tuple<std::string, std::string, std::string>> edges) {
  if (vertices.empty())
    throw ModelError("path space needs at least one vertex");
  PathGraph g;
  std::set<std::string> vseen;
  for (const std::string &v : vertices) {
    if (v.empty())
      throw ModelError("path space: empty vertex name");
    if (!vseen.insert(v).second)
      throw ModelError("path space: duplicate vertex '" + v + "'");
  }
  g.vertices = std::move(vertices);
  std::set<char> lseen;
  for (const auto &[label, from, to] : edges) {
    if (label.size() != 1 || !std::isalnum(static_cast<unsigned char>(label[0])))
      throw ModelError("path space: edge label must be one character of [0-9a-zA-Z], got '" +
                       label + "'");
    char c = label[0];
    if (!lseen.insert(c).second)
      throw ModelError(std::string("path space: duplicate edge label '") + c + "'");
    int s = g.vertex_index(from);
    int d = g.vertex_index(to);
    if (s < 0 || d < 0)
      throw ModelError("path space: edge '" + label + "' references unknown vertex");
    g.edges.push_back(PathGraph::Edge{c, s, d});
  }
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    if (g.out_edges(static_cast<int>(v)).empty())
      throw ModelError("path space: vertex '" + g.vertices[v] + "' emits no edge");
  auto sp = std::shared_ptr<BaseSpace>(new BaseSpace());
  sp->kind_ = Kind::Path;
  sp->graph_ = std::move(g);
  return sp;
}

const FiniteSpace &BaseSpace::fin() const {
  if (kind_ != Kind::Finite)
    throw ModelError("expected a finite space");
  return fin_;
}

const PathGraph &BaseSpace::graph() const {
  if (kind_ != Kind::Path)
    throw ModelError("expected a path space");
  return graph_;
}

bool BaseSpace::same_as(const BaseSpace &other) const {
  if (kind_ != other.kind_)
    return false;
  if (kind_ == Kind::Finite)
    return fin_.points == other.fin_.points;
  if (graph_.vertices != other.graph_.vertices)
    return false;
  if (graph_.edges.size() != other.graph_.edges.size())
    return false;
  for (std::size_t i = 0; i < graph_.edges.size(); ++i) {
    const auto &a = graph_.edges[i];
    const auto &b = other.graph_.edges[i];
    if (a.label != b.label || a.src != b.src || a.dst != b.dst)
      return false;
  }
  return true;
}

void require_same_space(const SpacePtr &a, const SpacePtr &b, const char *where) {
  if (!a || !b)
    throw ModelError(std::string(where) + ": missing base space");
  if (a.get() == b.get())
    return;
  if (!a->same_as(*b))
    throw ModelError(std::string(where) + ": mismatched base spaces");
}

OpenSet OpenSet::empty_set(SpacePtr space) { return OpenSet(std::move(space)); }

OpenSet OpenSet::full_set(SpacePtr space) {
  OpenSet o(std::move(space));
  if (o.space_->is_finite()) {
    for (std::size_t i = 0; i < o.space_->fin().points.size(); ++i)
      o.pts_.push_back(static_cast<int>(i));
  } else {
    o.words_.push_back("");
  }
  return o;
}

OpenSet OpenSet::of_point_indices(SpacePtr space, std::vector<int> ids) {
  OpenSet o(std::move(space));
  const auto &pts = o.space_->fin().points;
  for (int id : ids)
    if (id < 0 || id >= static_cast<int>(pts.size()))
      throw ModelError("open set: point index out of range");
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  o.pts_ = std::move(ids);
  return o;
}

OpenSet OpenSet::of_points(SpacePtr space, const std::vector<std::string> &labels) {
  std::vector<int> ids;
  for (const std::string &l : labels) {
    int id = space->fin().index_of(l);
    if (id < 0)
      throw ModelError("open set: unknown point '" + l + "'");
    ids.push_back(id);
  }
  return of_point_indices(std::move(space), std::move(ids));
}

OpenSet OpenSet::of_words(SpacePtr space, std::vector<std::string> words) {
  OpenSet o(std::move(space));
  const PathGraph &g = o.space_->graph();
  for (const std::string &w : words)
    if (!g.word_valid(w))
      throw ModelError("open set: invalid word '" + w + "'");
  o.words_ = std::move(words);
  o.canonicalize_words();
  return o;
}

const std::vector<int> &OpenSet::point_ids() const {
  if (!space_->is_finite())
    throw ModelError("point_ids: not a finite space");
  return pts_;
}

const std::vector<std::string> &OpenSet::words() const {
  if (!space_->is_path())
    throw ModelError("words: not a path space");
  return words_;
}

bool OpenSet::is_empty() const {
  return space_->is_finite() ? pts_.empty() : words_.empty();
}

bool OpenSet::is_full() const {
  if (space_->is_finite())
    return pts_.size() == space_->fin().points.size();
  return words_.size() == 1 && words_[0].empty();
}

int OpenSet::depth() const {
  int d = 0;
  for (const std::string &w : words_)
    d = std::max<int>(d, static_cast<int>(w.size()));
  return d;
}

void OpenSet::canonicalize_words() {
  std::sort(words_.begin(), words_.end(), shortlex_less);
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  // Drop entries dominated by a proper prefix already in the set.
  {
    std::vector<std::string> kept;
    for (const std::string &w : words_) {
      bool dominated = false;
      for (const std::string &k : kept) {
        if (k.size() < w.size() && w.compare(0, k.size(), k) == 0) {
          dominated = true;
          break;
        }
      }
      if (!dominated)
        kept.push_back(w);
    }
    words_ = std::move(kept);
  }
  // Collapse complete sibling families to their parent until stable. The
  // children of the empty word are all one-letter words.
  const PathGraph &g = space_->graph();
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<std::string> present(words_.begin(), words_.end());
    std::set<std::string> parents;
    for (const std::string &w : words_)
      if (!w.empty())
        parents.insert(w.substr(0, w.size() - 1));
    for (const std::string &p : parents) {
      if (!p.empty() && !g.word_valid(p))
        continue;
      std::vector<std::string> kids = g.children(p);
      bool all = !kids.empty();
      for (const std::string &k : kids)
        if (!present.count(k)) {
          all = false;
          break;
        }
      if (all) {
        for (const std::string &k : kids)
          present.erase(k);
        present.insert(p);
        changed = true;
      }
    }
    if (changed)
      words_.assign(present.begin(), present.end());
  }
  std::sort(words_.begin(), words_.end(), shortlex_less);
}

namespace {

bool is_prefix(const std::string &p, const std::string &w) {
  return p.size() <= w.size() && w.compare(0, p.size(), p) == 0;
}

// Appends the cylinder tiles of Z(w) \ B to out, recursing below w only as
// far as entries of B extend it.
void diff_word(const PathGraph &g, const std::string &w,
               const std::vector<std::string> &b, std::vector<std::string> &out) {
  bool covered = false;
  bool touched = false;
  for (const std::string &x : b) {
    if (is_prefix(x, w)) {
      covered = true;
      break;
    }
    if (is_prefix(w, x))
      touched = true;
  }
  if (covered)
    return;
  if (!touched) {
    out.push_back(w);
    return;
  }
  for (const std::string &c : g.children(w))
    diff_word(g, c, b, out);
}

} // namespace

OpenSet set_union(const OpenSet &a, const OpenSet &b) {
  require_same_space(a.space_, b.space_, "set_union");
  if (a.space_->is_finite()) {
    std::vector<int> ids;
    std::set_union(a.pts_.begin(), a.pts_.end(), b.pts_.begin(), b.pts_.end(),
                   std::back_inserter(ids));
    return OpenSet::of_point_indices(a.space_, std::move(ids));
  }
  std::vector<std::string> words = a.words_;
  words.insert(words.end(), b.words_.begin(), b.words_.end());
  return OpenSet::of_words(a.space_, std::move(words));
}

OpenSet set_intersect(const OpenSet &a, const OpenSet &b) {
  require_same_space(a.space_, b.space_, "set_intersect");
  if (a.space_->is_finite()) {
    std::vector<int> ids;
    std::set_intersection(a.pts_.begin(), a.pts_.end(), b.pts_.begin(), b.pts_.end(),
                          std::back_inserter(ids));
    return OpenSet::of_point_indices(a.space_, std::move(ids));
  }
  // Z(u) and Z(w) meet iff one word is a prefix of the other, and then the
  // intersection is the cylinder of the longer word.
  std::vector<std::string> words;
  for (const std::string &u : a.words_)
    for (const std::string &w : b.words_) {
      if (is_prefix(u, w))
        words.push_back(w);
      else if (is_prefix(w, u))
        words.push_back(u);
    }
  return OpenSet::of_words(a.space_, std::move(words));
}

OpenSet set_difference(const OpenSet &a, const OpenSet &b) {
  require_same_space(a.space_, b.space_, "set_difference");
  if (a.space_->is_finite()) {
    std::vector<int> ids;
    std::set_difference(a.pts_.begin(), a.pts_.end(), b.pts_.begin(), b.pts_.end(),
                        std::back_inserter(ids));
    return OpenSet::of_point_indices(a.space_, std::move(ids));
  }
  std::vector<std::string> words;
  for (const std::string &w : a.words_)
    diff_word(a.space_->graph(), w, b.words_, words);
  return OpenSet::of_words(a.space_, std::move(words));
}

bool OpenSet::subset_of(const OpenSet &other) const {
  require_same_space(space_, other.space_, "subset_of");
  return set_difference(*this, other).is_empty();
}

bool OpenSet::contains_cylinder(const std::string &word) const {
  if (!space_->is_path())
    throw ModelError("contains_cylinder: not a path space");
  if (!space_->graph().word_valid(word))
    throw ModelError("contains_cylinder: invalid word '" + word + "'");
  std::vector<std::string> rest;
  diff_word(space_->graph(), word, words_, rest);
  return rest.empty();
}

bool OpenSet::contains_point(int id) const {
  return std::binary_search(pts_.begin(), pts_.end(), id);
}

std::vector<std::string> OpenSet::tiles_at_depth(int d) const {
  if (!space_->is_path())
    throw ModelError("tiles_at_depth: not a path space");
  if (d < depth())
    throw ModelError("tiles_at_depth: requested depth below the set's depth");
  std::vector<std::string> out;
  for (const std::string &w : words_)
    for (const std::string &x : space_->graph().extensions_to_length(w, d))
      out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const OpenSet &a, const OpenSet &b) {
  require_same_space(a.space_, b.space_, "OpenSet equality");
  return a.space_->is_finite() ? a.pts_ == b.pts_ : a.words_ == b.words_;
}

bool lex_less(const OpenSet &a, const OpenSet &b) {
  if (a.space_->is_finite())
    return a.pts_ < b.pts_;
  return std::lexicographical_compare(a.words_.begin(), a.words_.end(),
                                      b.words_.begin(), b.words_.end(),
                                      shortlex_less);
}

std::string OpenSet::to_string() const {
  std::string s = "{";
  bool first = true;
  if (space_->is_finite()) {
    for (int id : pts_) {
      if (!first)
        s += ",";
      s += space_->fin().points[id];
      first = false;
    }
  } else {
    for (const std::string &w : words_) {
      if (!first)
        s += ",";
      s += "Z(" + w + ")";
      first = false;
    }
  }
  return s + "}";
}

} // namespace typesem

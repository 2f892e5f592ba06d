#ifndef TYPESEM_SPACE_HPP
#define TYPESEM_SPACE_HPP

#include <memory>
#include <string>
#include <vector>

namespace typesem {

/// A finite discrete space, given by its point labels.
struct FiniteSpace {
  std::vector<std::string> points;

  /// Index of a label, or -1 if absent.
  int index_of(const std::string &label) const;
};

/// A finite directed graph with every vertex emitting at least one edge.
/// The associated space is the set of one-sided infinite edge paths; a
/// finite path is named by its word of edge labels. Labels are single
/// characters from [0-9a-zA-Z] and are globally unique, so a word
/// determines its edge sequence without reference to vertices.
struct PathGraph {
  struct Edge {
    char label;
    int src;
    int dst;
  };

  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  int vertex_index(const std::string &name) const;
  /// Edge index by label, or -1.
  int edge_by_label(char label) const;
  /// Outgoing edge indices of a vertex, sorted by label.
  std::vector<int> out_edges(int vertex) const;

  /// True iff the labels chain into a path. The empty word is valid.
  bool word_valid(const std::string &word) const;
  /// Source vertex of the first edge, or -1 for the empty word.
  int word_src(const std::string &word) const;
  /// Target vertex of the last edge, or -1 for the empty word.
  int word_dst(const std::string &word) const;
  /// All one-edge extensions w.e of a valid word, in label order. For the
  /// empty word these are all one-letter words.
  std::vector<std::string> children(const std::string &word) const;
  /// All valid words of the given length, in lexicographic order.
  std::vector<std::string> words_of_length(int len) const;
  /// All valid extensions of a word to total length exactly len >= |word|.
  std::vector<std::string> extensions_to_length(const std::string &word, int len) const;
};

/// The base space of a model: either a finite discrete space or the path
/// space of a finite graph. Shared immutably by every object built over it.
class BaseSpace {
public:
  enum class Kind { Finite, Path };

  static std::shared_ptr<const BaseSpace> make_finite(std::vector<std::string> points);
  /// Edges are (label, from, to) with single-character alphanumeric labels,
  /// globally unique. Every vertex must emit at least one edge.
  static std::shared_ptr<const BaseSpace>
  make_path(std::vector<std::string> vertices,
            std::vector<std::tuple<std::string, std::string, std::string>> edges);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_path() const { return kind_ == Kind::Path; }

  const FiniteSpace &fin() const;
  const PathGraph &graph() const;

  /// Structural equality of the presentations.
  bool same_as(const BaseSpace &other) const;

private:
  BaseSpace() = default;
  Kind kind_ = Kind::Finite;
  FiniteSpace fin_;
  PathGraph graph_;
};

using SpacePtr = std::shared_ptr<const BaseSpace>;

/// Throws ModelError unless both objects live over structurally equal spaces.
void require_same_space(const SpacePtr &a, const SpacePtr &b, const char *where);

/// An open subset of a base space. For a finite space this is any subset,
/// held as a sorted list of point indices. For a path space it is a finite
/// union of cylinders Z(w), held as the unique canonical antichain: no
/// entry is a prefix of another, and no family of all siblings
/// (all one-edge extensions of a common parent) is present, such a family
/// being collapsed to the parent. The full space is the antichain {empty
/// word}. Two unions of cylinders are equal as sets iff their canonical
/// antichains coincide.
class OpenSet {
public:
  static OpenSet empty_set(SpacePtr space);
  static OpenSet full_set(SpacePtr space);
  static OpenSet of_point_indices(SpacePtr space, std::vector<int> ids);
  static OpenSet of_points(SpacePtr space, const std::vector<std::string> &labels);
  static OpenSet of_words(SpacePtr space, std::vector<std::string> words);

  const SpacePtr &space() const { return space_; }
  /// Sorted point indices; finite spaces only.
  const std::vector<int> &point_ids() const;
  /// Canonical antichain in shortlex order; path spaces only.
  const std::vector<std::string> &words() const;

  bool is_empty() const;
  bool is_full() const;
  /// Longest entry length (path), or 0.
  int depth() const;

  friend OpenSet set_union(const OpenSet &a, const OpenSet &b);
  friend OpenSet set_intersect(const OpenSet &a, const OpenSet &b);
  /// Exact set difference a \ b. Cylinder unions are clopen, so this is
  /// again a finite union of cylinders.
  friend OpenSet set_difference(const OpenSet &a, const OpenSet &b);
  bool subset_of(const OpenSet &other) const;
  /// Path spaces: true iff the whole cylinder Z(word) lies in the set.
  bool contains_cylinder(const std::string &word) const;
  /// Finite spaces: membership of a point index.
  bool contains_point(int id) const;

  /// Path spaces: the depth-d words whose cylinders tile this set.
  /// Requires d >= depth().
  std::vector<std::string> tiles_at_depth(int d) const;

  friend bool operator==(const OpenSet &a, const OpenSet &b);
  friend bool operator!=(const OpenSet &a, const OpenSet &b) { return !(a == b); }
  /// Shortlex order on the canonical presentation; used for deterministic
  /// sorting of containers of open sets.
  friend bool lex_less(const OpenSet &a, const OpenSet &b);

  std::string to_string() const;

private:
  explicit OpenSet(SpacePtr space) : space_(std::move(space)) {}
  void canonicalize_words();

  SpacePtr space_;
  std::vector<int> pts_;
  std::vector<std::string> words_;
};

/// Shortlex comparison of words (by length, then lexicographically).
bool shortlex_less(const std::string &a, const std::string &b);

} // namespace typesem

#endif // TYPESEM_SPACE_HPP

#ifndef TYPESEM_ORBIT_HPP
#define TYPESEM_ORBIT_HPP

#include <optional>
#include <string>
#include <vector>

#include "typesem/semigroup.hpp"

namespace typesem {

/// Three-valued analysis outcome. Unknown is first-class: a budgeted search
/// that exhausts without evidence must not report No, and hypotheses are
/// never reported verified from an unsaturated search.
enum class Tri { Yes, No, Unknown };

std::string tri_to_string(Tri t);

/// A fixed point (or fixed cylinder) of a semigroup element, together with
/// whether some idempotent of S below the element covers it, which makes
/// the isotropy trivial there.
struct IsotropyRecord {
  std::string where;
  std::string mover;
  bool trivialized = false;
};

struct GateResult {
  Tri status = Tri::Unknown;
  std::string note;
  /// Proper invariant open set witnessing a failed minimality check.
  std::optional<OpenSet> invariant_witness;
  /// Isotropy evidence from the topological freeness check.
  std::vector<IsotropyRecord> records;
};

/// Reachability structure of the action: points of a finite space, or
/// cylinders at the budget working depth, with edges labeled by the name of
/// a semigroup element moving source into target.
struct OrbitGraph {
  struct Edge {
    int from;
    int to;
    std::string mover;
  };
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
  int depth = 0;
};

OrbitGraph build_orbit_graph(const ActionModel &model);
std::string orbit_graph_dot(const OrbitGraph &g);
/// Connected components of the symmetrized orbit graph, each sorted, in
/// order of their smallest node.
std::vector<std::vector<int>> orbit_components(const OrbitGraph &g);

/// Minimality of the action: no proper invariant open subset. Finite
/// spaces are decided exactly from the orbit graph. Path spaces are probed
/// at the working depth: full cylinder reachability gives Yes; a
/// disconnection gives No only when the disconnected cylinder union is
/// verified exactly invariant, otherwise Unknown.
GateResult is_minimal(const ActionModel &model);

/// Topological freeness: every fixed point of an element carries a
/// trivializing idempotent below the element. Fixed cylinders on a path
/// space arise only from formally graded partial identities; proper prefix
/// exchanges displace every cylinder at the syntactic level.
GateResult is_topologically_free(const ActionModel &model);

/// Closedness of the action: the trivialized part ideal_support(s) is
/// relatively clopen in dom(s) at the working depth for every element.
GateResult is_closed_action(const ActionModel &model);

/// True iff every working-depth tile of `dom` is contained in or disjoint
/// from `o`. A cylinder union that properly cuts a tile refines below the
/// working depth, the budget-level symptom of accumulation.
bool relatively_clopen_at_depth(const OpenSet &o, const OpenSet &dom, int depth);

struct CoveringResult {
  Tri status = Tri::Unknown;
  int m = 0;
  /// Pieces z_i below y and the movers transporting them.
  std::vector<std::pair<LscFun, Mover>> cover;
  std::string note;
};

/// Least m found within budget with x <= sum of m transported pieces of y.
/// The returned cover re-verifies by direct evaluation.
CoveringResult covering_number(const LscFun &x, const LscFun &y, const ActionModel &model);

} // namespace typesem

#endif // TYPESEM_ORBIT_HPP

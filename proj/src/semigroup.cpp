#include "typesem/semigroup.hpp"

#include <algorithm>
#include <unordered_map>

#include "typesem/errors.hpp"

namespace typesem {

namespace {

// Hard cap on closure size, defending against accidentally huge finite
// spaces. Hitting it marks the closure unsaturated instead of failing.
constexpr std::size_t kMaxElements = 200000;

struct Work {
  Mover m;
  std::string name;
  int len;
};

} // namespace

InverseSemigroup InverseSemigroup::closure(SpacePtr space, std::vector<Mover> generators,
                                           std::vector<std::string> generator_names,
                                           const Budgets &budgets) {
  if (generator_names.empty())
    for (std::size_t i = 0; i < generators.size(); ++i)
      generator_names.push_back("g" + std::to_string(i));
  if (generator_names.size() != generators.size())
    throw ModelError("closure: generator name count mismatch");
  for (const Mover &g : generators)
    require_same_space(space, g.space(), "closure");

  InverseSemigroup s;
  s.space_ = space;
  s.gens_ = generators;
  s.gen_names_ = generator_names;

  std::unordered_map<std::string, std::size_t> index;
  std::vector<Work> all;
  auto add = [&](Mover m, std::string name, int len) -> bool {
    std::string key = m.display();
    if (index.count(key))
      return false;
    index.emplace(std::move(key), all.size());
    all.push_back(Work{std::move(m), std::move(name), len});
    return true;
  };

  add(Mover::identity(space), "1", 0);
  std::vector<std::size_t> frontier;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (add(generators[i], generator_names[i], 1))
      frontier.push_back(all.size() - 1);
    if (add(generators[i].inverse(), generator_names[i] + "*", 1))
      frontier.push_back(all.size() - 1);
  }

  // Breadth-first products: every element of length L+1 is a product of an
  // existing element with a length-<=L element, so composing the frontier
  // with everything seen so far (both orders) reaches the whole closure.
  bool exact = space->is_finite();
  bool truncated = false;
  while (!frontier.empty()) {
    int next_len = all[frontier.front()].len + 1;
    if (!exact && next_len > budgets.len) {
      // One probe round decides saturation without keeping the results.
      for (std::size_t fi : frontier) {
        for (std::size_t ai = 0; ai < all.size() && !truncated; ++ai) {
          if (!index.count(compose(all[fi].m, all[ai].m).display()) ||
              !index.count(compose(all[ai].m, all[fi].m).display()))
            truncated = true;
        }
        if (truncated)
          break;
      }
      break;
    }
    std::vector<std::size_t> next;
    std::size_t seen = all.size();
    for (std::size_t f : frontier) {
      for (std::size_t a = 0; a < seen; ++a) {
        if (all.size() >= kMaxElements) {
          truncated = true;
          break;
        }
        Mover left = compose(all[f].m, all[a].m);
        if (add(left, all[f].name + "." + all[a].name, next_len))
          next.push_back(all.size() - 1);
        Mover right = compose(all[a].m, all[f].m);
        if (add(right, all[a].name + "." + all[f].name, next_len))
          next.push_back(all.size() - 1);
      }
      if (truncated)
        break;
    }
    frontier = std::move(next);
    if (truncated)
      break;
  }
  s.saturated_ = !truncated;

  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return all[a].m.display() < all[b].m.display();
  });
  for (std::size_t i : order) {
    s.elements_.push_back(std::move(all[i].m));
    s.names_.push_back(std::move(all[i].name));
  }
  return s;
}

int InverseSemigroup::index_of(const Mover &m) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == m)
      return static_cast<int>(i);
  return -1;
}

const Mover &InverseSemigroup::unit() const {
  for (const Mover &m : elements_)
    if (m.is_idempotent() && m.dom().is_full())
      return m;
  throw InternalCheckError("closure lost the unit");
}

std::vector<int> InverseSemigroup::idempotent_ids() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i].is_idempotent())
      out.push_back(static_cast<int>(i));
  return out;
}

OpenSet ideal_support(const Mover &s, const InverseSemigroup &sgrp) {
  OpenSet acc = OpenSet::empty_set(sgrp.space());
  for (int e : sgrp.idempotent_ids()) {
    const Mover &v = sgrp.elements()[e];
    if (natural_leq(v, s))
      acc = set_union(acc, v.dom());
  }
  return acc;
}

namespace {

void check(ValidationReport &rep, const std::string &name, bool ok,
           const std::string &detail) {
  rep.checks.push_back(name);
  if (!ok) {
    rep.ok = false;
    rep.failures.push_back(name + ": " + detail);
  }
}

} // namespace

ValidationReport validate_action(const ActionModel &model) {
  ValidationReport rep;
  const InverseSemigroup &s = model.sgrp;
  const std::vector<Mover> &el = s.elements();
  const int n = static_cast<int>(el.size());

  {
    bool ok = true;
    std::string detail;
    for (const Mover &m : el) {
      Mover mi = m.inverse();
      if (compose(compose(m, mi), m) != m || compose(compose(mi, m), mi) != mi) {
        ok = false;
        detail = m.display();
        break;
      }
    }
    check(rep, "inverse law s.s*.s = s", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    std::vector<int> idem = s.idempotent_ids();
    for (std::size_t i = 0; i < idem.size() && ok; ++i)
      for (std::size_t j = i + 1; j < idem.size(); ++j) {
        const Mover &e = el[idem[i]];
        const Mover &f = el[idem[j]];
        if (compose(e, f) != compose(f, e)) {
          ok = false;
          detail = e.display() + " vs " + f.display();
          break;
        }
      }
    check(rep, "idempotents commute", ok, detail);
  }
  {
    // Associativity on sampled triples; exhaustive when the closure is
    // small enough for that to be cheap.
    bool ok = true;
    std::string detail;
    int stride = n <= 12 ? 1 : std::max(1, n / 12);
    for (int a = 0; a < n && ok; a += stride)
      for (int b = 0; b < n && ok; b += stride)
        for (int c = 0; c < n; c += stride) {
          if (compose(compose(el[a], el[b]), el[c]) !=
              compose(el[a], compose(el[b], el[c]))) {
            ok = false;
            detail = el[a].display() + ", " + el[b].display() + ", " + el[c].display();
            break;
          }
        }
    check(rep, "composition associative on sampled triples", ok, detail);
  }
  {
    bool has_unit = false;
    for (const Mover &m : el)
      if (m.is_idempotent() && m.dom().is_full())
        has_unit = true;
    check(rep, "unit acts as the identity on X", has_unit, "no unit element");
  }
  {
    OpenSet cover = OpenSet::empty_set(model.space);
    for (const Mover &m : el)
      cover = set_union(cover, m.dom());
    check(rep, "domains cover X", cover.is_full(), "union of domains " + cover.to_string());
  }
  {
    bool ok = true;
    std::string detail;
    for (int e : s.idempotent_ids()) {
      const Mover &v = el[e];
      if (v != Mover::identity(model.space).restricted_to(v.dom())) {
        ok = false;
        detail = v.display();
        break;
      }
    }
    check(rep, "idempotents act as partial identities", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    int stride = n <= 24 ? 1 : std::max(1, n / 24);
    for (int a = 0; a < n && ok; a += stride)
      for (int b = 0; b < n; b += stride) {
        if (!natural_leq(el[a], el[b]))
          continue;
        if (!el[a].dom().subset_of(el[b].dom()) || !el[a].ran().subset_of(el[b].ran())) {
          ok = false;
          detail = el[a].display() + " <= " + el[b].display();
          break;
        }
      }
    check(rep, "natural order is monotone on dom and ran", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    int stride = n <= 24 ? 1 : std::max(1, n / 24);
    for (int a = 0; a < n && ok; a += stride)
      for (int b = 0; b < n; b += stride) {
        if (natural_leq(el[a], el[b]) && natural_leq(el[b], el[a]) && el[a] != el[b]) {
          ok = false;
          detail = el[a].display() + " vs " + el[b].display();
          break;
        }
      }
    check(rep, "natural order antisymmetric", ok, detail);
  }
  return rep;
}

} // namespace typesem

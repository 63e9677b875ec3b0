#include "grpd/fingerprint.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace grpd {

bool ComponentInvariant::operator<(const ComponentInvariant& o) const {
  if (abelian.free_rank != o.abelian.free_rank)
    return abelian.free_rank < o.abelian.free_rank;
  if (abelian.torsion != o.abelian.torsion) return abelian.torsion < o.abelian.torsion;
  std::uint64_t a = order.value_or(0), b = o.order.value_or(0);
  if (order.has_value() != o.order.has_value()) return order.has_value() < o.order.has_value();
  return a < b;
}

std::string to_string(const EquivalenceInvariant& f) {
  std::string s = "components=" + std::to_string(f.component_count) + " [";
  for (std::size_t i = 0; i < f.per_component.size(); ++i) {
    if (i) s += ", ";
    const auto& c = f.per_component[i];
    s += "free=" + std::to_string(c.abelian.free_rank);
    if (!c.abelian.torsion.empty()) {
      s += " torsion=";
      for (std::size_t t = 0; t < c.abelian.torsion.size(); ++t)
        s += (t ? "x" : "") + std::to_string(c.abelian.torsion[t]);
    }
    s += c.order ? " order=" + std::to_string(*c.order) : " order=?";
  }
  return s + "]";
}

EquivalenceInvariant fingerprint(const PresentedGroupoid& p, std::uint64_t budget) {
  EquivalenceInvariant out;
  auto comps = components(p);
  out.component_count = comps.size();
  for (const auto& comp : comps) {
    ComponentRestriction rc = restrict_component(p, comp);
    VertexGroupPresentation vgp = tree_collapse(rc.sub, 0);
    ComponentInvariant ci;
    ci.abelian = abelian_invariants(vgp);
    if (auto t = enumerate_group(vgp, budget)) ci.order = t->order;
    out.per_component.push_back(std::move(ci));
  }
  std::sort(out.per_component.begin(), out.per_component.end());
  return out;
}

EquivalenceInvariant fingerprint(const ConcreteGroupoid& g) {
  EquivalenceInvariant out;
  PresentedGroupoid p = present(g);
  auto comps = components(p);
  out.component_count = comps.size();
  for (const auto& comp : comps) {
    ComponentRestriction rc = restrict_component(p, comp);
    VertexGroupPresentation vgp = tree_collapse(rc.sub, 0);
    ComponentInvariant ci;
    ci.abelian = abelian_invariants(vgp);
    // The vertex group is already enumerated: it is hom(b, b).
    Index base = comp[0];
    ci.order = g.hom(base, base).size();
    out.per_component.push_back(std::move(ci));
  }
  std::sort(out.per_component.begin(), out.per_component.end());
  return out;
}

bool certifies_difference(const EquivalenceInvariant& a, const EquivalenceInvariant& b) {
  if (a.component_count != b.component_count) return true;
  // abelian invariants are always computed and genuinely invariant
  auto abelians = [](const EquivalenceInvariant& f) {
    std::vector<AbelianInvariant> out;
    for (const auto& c : f.per_component) out.push_back(c.abelian);
    std::sort(out.begin(), out.end(), [](const AbelianInvariant& x, const AbelianInvariant& y) {
      return std::tie(x.free_rank, x.torsion) < std::tie(y.free_rank, y.torsion);
    });
    return out;
  };
  if (abelians(a) != abelians(b)) return true;
  // orders certify a difference only if no matching with known == known and
  // unknown-as-wildcard exists (checked per abelian class)
  std::map<std::pair<long long, std::vector<long long>>,
           std::pair<std::vector<std::optional<std::uint64_t>>,
                     std::vector<std::optional<std::uint64_t>>>>
      classes;
  for (const auto& c : a.per_component)
    classes[{c.abelian.free_rank, c.abelian.torsion}].first.push_back(c.order);
  for (const auto& c : b.per_component)
    classes[{c.abelian.free_rank, c.abelian.torsion}].second.push_back(c.order);
  for (auto& [key, lists] : classes) {
    auto& [xs, ys] = lists;
    std::vector<bool> used(ys.size(), false);
    std::function<bool(std::size_t)> match = [&](std::size_t k) -> bool {
      if (k == xs.size()) return true;
      for (std::size_t j = 0; j < ys.size(); ++j) {
        if (used[j]) continue;
        if (xs[k] && ys[j] && *xs[k] != *ys[j]) continue;
        used[j] = true;
        if (match(k + 1)) return true;
        used[j] = false;
      }
      return false;
    };
    if (!match(0)) return true;
  }
  return false;
}

namespace {

unsigned element_order(const GroupTable& t, Index x) {
  unsigned n = 1;
  Index acc = x;
  while (acc != 0) {
    acc = t.mult[acc][x];
    ++n;
  }
  return n;
}

/// Greedy generating set; each generator paired with its element order.
std::vector<Index> generating_set(const GroupTable& t) {
  std::vector<bool> in_closure(t.order, false);
  in_closure[0] = true;
  std::size_t closed = 1;
  std::vector<Index> gens;
  while (closed < t.order) {
    Index next = kNoIndex;
    for (Index x = 0; x < t.order; ++x)
      if (!in_closure[x]) {
        next = x;
        break;
      }
    gens.push_back(next);
    // close under multiplication by the new generator set
    std::deque<Index> frontier;
    for (Index x = 0; x < t.order; ++x)
      if (in_closure[x]) frontier.push_back(x);
    while (!frontier.empty()) {
      Index x = frontier.front();
      frontier.pop_front();
      for (Index gidx : gens) {
        Index y = t.mult[x][gidx];
        if (!in_closure[y]) {
          in_closure[y] = true;
          ++closed;
          frontier.push_back(y);
        }
      }
    }
  }
  return gens;
}

/// Extend generator images to a full map by closure; empty on conflict.
std::vector<Index> extend_hom(const GroupTable& a, const GroupTable& b,
                              const std::vector<Index>& gens,
                              const std::vector<Index>& images) {
  std::vector<Index> map(a.order, kNoIndex);
  map[0] = 0;
  std::deque<Index> q{0};
  while (!q.empty()) {
    Index x = q.front();
    q.pop_front();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Index y = a.mult[x][gens[k]];
      Index im = b.mult[map[x]][images[k]];
      if (map[y] == kNoIndex) {
        map[y] = im;
        q.push_back(y);
      } else if (map[y] != im) {
        return {};
      }
    }
  }
  for (Index x = 0; x < a.order; ++x)
    if (map[x] == kNoIndex) return {};  // gens did not generate (cannot happen)
  return map;
}

}  // namespace

bool groups_isomorphic(const GroupTable& a, const GroupTable& b) {
  if (a.order != b.order) return false;
  if (a.order <= 1) return true;
  std::vector<Index> gens = generating_set(a);
  std::vector<std::vector<Index>> candidates;
  for (Index g : gens) {
    unsigned ord = element_order(a, g);
    std::vector<Index> c;
    for (Index x = 0; x < b.order; ++x)
      if (element_order(b, x) == ord) c.push_back(x);
    if (c.empty()) return false;
    candidates.push_back(std::move(c));
  }
  std::vector<Index> images(gens.size());
  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == gens.size()) {
      std::vector<Index> map = extend_hom(a, b, gens, images);
      if (map.empty()) return false;
      std::vector<bool> hit(b.order, false);
      for (Index x : map) {
        if (hit[x]) return false;
        hit[x] = true;
      }
      for (Index x = 0; x < a.order; ++x)
        for (Index y = 0; y < a.order; ++y)
          if (map[a.mult[x][y]] != b.mult[map[x]][map[y]]) return false;
      return true;
    }
    for (Index c : candidates[k]) {
      images[k] = c;
      if (search(k + 1)) return true;
    }
    return false;
  };
  return search(0);
}

namespace {

struct ComponentDescriptor {
  ComponentInvariant invariant;
  std::optional<GroupTable> finite;  // vertex group when enumerable
  bool visibly_free = false;         // all relators freely trivial
  long long free_rank = 0;
};

std::vector<int> reduce_relator(std::vector<int> r) {
  std::vector<int> out;
  for (int s : r) {
    if (!out.empty() && out.back() == -s)
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

std::vector<ComponentDescriptor> describe(const PresentedGroupoid& p, std::uint64_t budget) {
  std::vector<ComponentDescriptor> out;
  for (const auto& comp : components(p)) {
    ComponentRestriction rc = restrict_component(p, comp);
    VertexGroupPresentation vgp = tree_collapse(rc.sub, 0);
    ComponentDescriptor d;
    d.invariant.abelian = abelian_invariants(vgp);
    d.finite = enumerate_group(vgp, budget);
    if (d.finite) d.invariant.order = d.finite->order;
    d.visibly_free = true;
    for (const auto& r : vgp.relators)
      if (!reduce_relator(r).empty()) d.visibly_free = false;
    d.free_rank = static_cast<long long>(vgp.generators.size());
    out.push_back(std::move(d));
  }
  return out;
}

bool certified_isomorphic(const ComponentDescriptor& x, const ComponentDescriptor& y) {
  if (x.finite && y.finite) return groups_isomorphic(*x.finite, *y.finite);
  if (x.visibly_free && y.visibly_free) return x.free_rank == y.free_rank;
  // free of rank 0 is the trivial group
  if (x.visibly_free && x.free_rank == 0 && y.finite) return y.finite->order == 1;
  if (y.visibly_free && y.free_rank == 0 && x.finite) return x.finite->order == 1;
  return false;
}

bool match_components(const std::vector<ComponentDescriptor>& xs,
                      const std::vector<ComponentDescriptor>& ys, std::size_t k,
                      std::vector<bool>& used) {
  if (k == xs.size()) return true;
  for (std::size_t j = 0; j < ys.size(); ++j) {
    if (used[j] || !certified_isomorphic(xs[k], ys[j])) continue;
    used[j] = true;
    if (match_components(xs, ys, k + 1, used)) return true;
    used[j] = false;
  }
  return false;
}

bool structurally_equal(const PresentedGroupoid& a, const PresentedGroupoid& b) {
  if (!(a.graph.vertices == b.graph.vertices)) return false;
  if (a.graph.edges.size() != b.graph.edges.size()) return false;
  for (std::size_t e = 0; e < a.graph.edges.size(); ++e) {
    const auto& x = a.graph.edges[e];
    const auto& y = b.graph.edges[e];
    if (x.name != y.name || x.src != y.src || x.tgt != y.tgt) return false;
  }
  if (a.relations.size() != b.relations.size()) return false;
  for (std::size_t r = 0; r < a.relations.size(); ++r)
    if (!(a.relations[r].lhs == b.relations[r].lhs) ||
        !(a.relations[r].rhs == b.relations[r].rhs))
      return false;
  return true;
}

}  // namespace

Verdict are_equivalent(const PresentedGroupoid& a, const PresentedGroupoid& b,
                       std::uint64_t budget) {
  if (structurally_equal(a, b)) return Verdict::Yes;
  if (certifies_difference(fingerprint(a, budget), fingerprint(b, budget)))
    return Verdict::No;
  auto xs = describe(a, budget);
  auto ys = describe(b, budget);
  if (xs.size() != ys.size()) return Verdict::No;
  std::vector<bool> used(ys.size(), false);
  if (match_components(xs, ys, 0, used)) return Verdict::Yes;
  return Verdict::Unknown;
}

Verdict are_equivalent(const ConcreteGroupoid& a, const ConcreteGroupoid& b,
                       std::uint64_t budget) {
  return are_equivalent(present(a), present(b), budget);
}

Verdict are_equivalent(const ConcreteGroupoid& a, const PresentedGroupoid& b,
                       std::uint64_t budget) {
  return are_equivalent(present(a), b, budget);
}

Verdict are_equivalent(const PresentedGroupoid& a, const ConcreteGroupoid& b,
                       std::uint64_t budget) {
  return are_equivalent(a, present(b), budget);
}

}  // namespace grpd

#include "grpd/hom.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace grpd {

Index HomCategory::find(const std::vector<Index>& vertex_map,
                        const std::vector<Index>& edge_map) const {
  std::vector<Index> key = vertex_map;
  key.insert(key.end(), edge_map.begin(), edge_map.end());
  auto it = index_.find(key);
  return it == index_.end() ? kNoIndex : it->second;
}

std::vector<std::vector<Index>> HomCategory::homs(Index a, Index b) const {
  const auto& graph = dom->graph;
  const auto& g = *cod;
  const auto& F = objects[a];
  const auto& G = objects[b];
  const std::size_t nv = graph.vertices.size();

  std::vector<std::vector<Index>> out;
  // Per graph component: candidate components at the root, propagated along
  // the spanning tree, then verified on every edge of the component.
  std::vector<std::vector<std::vector<Index>>> per_comp;
  for (std::size_t c = 0; c < graph_components.size(); ++c) {
    Index root = graph_components[c][0];
    std::vector<std::vector<Index>> solutions;
    for (Index m : g.hom(F.vertex_map[root], G.vertex_map[root])) {
      std::vector<Index> comp(nv, kNoIndex);
      comp[root] = m;
      for (const auto& step : tree[c]) {
        Index fe = F.edge_map[step.edge];
        Index ge = G.edge_map[step.edge];
        const auto& e = graph.edges[step.edge];
        if (step.forward) {
          // compose(comp[src], G(e)) == compose(F(e), comp[tgt])
          comp[e.tgt] = g.compose(g.compose(g.inverse[fe], comp[e.src]), ge);
        } else {
          comp[e.src] = g.compose(g.compose(fe, comp[e.tgt]), g.inverse[ge]);
        }
      }
      bool natural = true;
      for (Index v : graph_components[c]) {
        // components must have the right endpoints even on edge-free vertices
        if (g.src[comp[v]] != F.vertex_map[v] || g.tgt[comp[v]] != G.vertex_map[v]) {
          natural = false;
          break;
        }
      }
      if (natural) {
        for (std::size_t ei = 0; ei < graph.edges.size() && natural; ++ei) {
          const auto& e = graph.edges[ei];
          if (comp[e.src] == kNoIndex) continue;  // other component
          natural = g.compose(comp[e.src], G.edge_map[ei]) ==
                    g.compose(F.edge_map[ei], comp[e.tgt]);
        }
      }
      if (natural) solutions.push_back(std::move(comp));
    }
    if (solutions.empty()) return {};
    per_comp.push_back(std::move(solutions));
  }

  // Cartesian product across graph components.
  std::vector<std::size_t> pick(per_comp.size(), 0);
  for (;;) {
    std::vector<Index> comp(nv, kNoIndex);
    for (std::size_t c = 0; c < per_comp.size(); ++c)
      for (Index v : graph_components[c]) comp[v] = per_comp[c][pick[c]][v];
    out.push_back(std::move(comp));
    std::size_t c = per_comp.size();
    while (c > 0) {
      --c;
      if (++pick[c] < per_comp[c].size()) break;
      pick[c] = 0;
      if (c == 0) return out;
    }
    if (per_comp.empty()) return out;  // empty domain: single empty natiso
  }
}

bool HomCategory::isomorphic_objects(Index a, Index b) const {
  // Existence only: per graph component, each candidate component at the
  // root propagates along the spanning tree; succeed as soon as one
  // candidate verifies on every edge of the component.
  const auto& graph = dom->graph;
  const auto& g = *cod;
  const auto& F = objects[a];
  const auto& G = objects[b];
  std::vector<Index> comp(graph.vertices.size(), kNoIndex);
  for (std::size_t c = 0; c < graph_components.size(); ++c) {
    Index root = graph_components[c][0];
    bool found = false;
    for (Index m : g.hom(F.vertex_map[root], G.vertex_map[root])) {
      for (Index v : graph_components[c]) comp[v] = kNoIndex;
      comp[root] = m;
      for (const auto& step : tree[c]) {
        const auto& e = graph.edges[step.edge];
        if (step.forward)
          comp[e.tgt] =
              g.compose(g.compose(g.inverse[F.edge_map[step.edge]], comp[e.src]),
                        G.edge_map[step.edge]);
        else
          comp[e.src] = g.compose(g.compose(F.edge_map[step.edge], comp[e.tgt]),
                                  g.inverse[G.edge_map[step.edge]]);
      }
      bool ok = true;
      for (Index v : graph_components[c])
        if (g.src[comp[v]] != F.vertex_map[v] || g.tgt[comp[v]] != G.vertex_map[v]) {
          ok = false;
          break;
        }
      for (std::size_t ei = 0; ei < graph.edges.size() && ok; ++ei) {
        const auto& e = graph.edges[ei];
        if (comp[e.src] == kNoIndex) continue;
        ok = g.compose(comp[e.src], G.edge_map[ei]) == g.compose(F.edge_map[ei], comp[e.tgt]);
      }
      if (ok) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::vector<std::vector<Index>> HomCategory::object_components() const {
  // Classify against class representatives; the class count stays small even
  // when the object count is large.
  std::vector<std::vector<Index>> blocks;
  for (Index o = 0; o < objects.size(); ++o) {
    bool placed = false;
    for (auto& block : blocks)
      if (isomorphic_objects(block[0], o)) {
        block.push_back(o);
        placed = true;
        break;
      }
    if (!placed) blocks.push_back({o});
  }
  return blocks;
}

HomCategory hom_category(PresentedPtr p, GroupoidPtr g, std::uint64_t object_cap) {
  HomCategory cat;
  cat.dom = p;
  cat.cod = g;
  const auto& graph = p->graph;
  const std::size_t nv = graph.vertices.size();
  const std::size_t ne = graph.edges.size();

  // Spanning forest, breadth-first per component in declaration order.
  {
    std::vector<bool> visited(nv, false);
    for (Index start = 0; start < nv; ++start) {
      if (visited[start]) continue;
      visited[start] = true;
      cat.graph_components.push_back({start});
      cat.tree.push_back({});
      std::deque<Index> q{start};
      while (!q.empty()) {
        Index u = q.front();
        q.pop_front();
        for (Index e = 0; e < ne; ++e) {
          const auto& ed = graph.edges[e];
          if (ed.src == u && !visited[ed.tgt]) {
            visited[ed.tgt] = true;
            cat.graph_components.back().push_back(ed.tgt);
            cat.tree.back().push_back({ed.tgt, e, true});
            q.push_back(ed.tgt);
          } else if (ed.tgt == u && !visited[ed.src]) {
            visited[ed.src] = true;
            cat.graph_components.back().push_back(ed.src);
            cat.tree.back().push_back({ed.src, e, false});
            q.push_back(ed.src);
          }
        }
      }
      std::sort(cat.graph_components.back().begin(), cat.graph_components.back().end());
    }
  }

  // A relation is checkable once its highest-indexed edge is assigned.
  std::vector<std::vector<std::size_t>> rel_at_edge(ne);
  for (std::size_t r = 0; r < p->relations.size(); ++r) {
    Index last = kNoIndex;
    for (Letter l : p->relations[r].lhs.letters)
      last = (last == kNoIndex) ? l.edge : std::max(last, l.edge);
    for (Letter l : p->relations[r].rhs.letters)
      last = (last == kNoIndex) ? l.edge : std::max(last, l.edge);
    if (last != kNoIndex) rel_at_edge[last].push_back(r);
    // letter-free relations are parallel empty words and hold trivially
  }

  PresToConcFunctor cand;
  cand.dom = p;
  cand.cod = g;
  cand.vertex_map.assign(nv, 0);
  cand.edge_map.assign(ne, kNoIndex);

  auto record = [&] {
    std::vector<Index> key = cand.vertex_map;
    key.insert(key.end(), cand.edge_map.begin(), cand.edge_map.end());
    cat.index_.emplace(std::move(key), static_cast<Index>(cat.objects.size()));
    cat.objects.push_back(cand);
    if (cat.objects.size() > object_cap)
      throw ResourceLimitError("hom_category: more than " + std::to_string(object_cap) +
                               " functors");
  };

  std::function<void(std::size_t)> assign_edges = [&](std::size_t e) {
    if (e == ne) {
      record();
      return;
    }
    const auto& ed = graph.edges[e];
    for (Index m : g->hom(cand.vertex_map[ed.src], cand.vertex_map[ed.tgt])) {
      cand.edge_map[e] = m;
      bool ok = true;
      for (std::size_t r : rel_at_edge[e])
        if (evaluate(cand, p->relations[r].lhs) != evaluate(cand, p->relations[r].rhs)) {
          ok = false;
          break;
        }
      if (ok) assign_edges(e + 1);
    }
    cand.edge_map[e] = kNoIndex;
  };

  if (nv == 0) {
    record();  // exactly one functor from the empty groupoid
    return cat;
  }
  const std::size_t nobj = g->object_count();
  if (nobj == 0) return cat;  // no functors into the empty groupoid

  for (;;) {
    assign_edges(0);
    std::size_t v = nv;
    bool done = true;
    while (v > 0) {
      --v;
      if (++cand.vertex_map[v] < nobj) {
        done = false;
        break;
      }
      cand.vertex_map[v] = 0;
    }
    if (done) break;
  }
  return cat;
}

Index restrict_object(const HomCategory& sub, const HomCategory& super,
                      const PresFunctor& incl, Index object) {
  const auto& chi = super.objects[object];
  std::vector<Index> vmap, emap;
  vmap.reserve(incl.vertex_map.size());
  for (Index v : incl.vertex_map) vmap.push_back(chi.vertex_map[v]);
  emap.reserve(incl.edge_map.size());
  for (const Word& w : incl.edge_map) emap.push_back(evaluate(chi, w));
  Index idx = sub.find(vmap, emap);
  if (idx == kNoIndex) throw std::logic_error("restrict_object: image not enumerated");
  return idx;
}

std::vector<Index> restrict_components(const HomCategory& sub, const PresFunctor& incl,
                                       const std::vector<Index>& components) {
  std::vector<Index> out;
  out.reserve(sub.dom->graph.vertices.size());
  for (Index v : incl.vertex_map) out.push_back(components[v]);
  return out;
}

FunctorGroupoid functor_groupoid(PresentedPtr p, GroupoidPtr g, std::uint64_t morphism_cap) {
  FunctorGroupoid fg;
  fg.category = hom_category(p, g, morphism_cap);
  const auto& cat = fg.category;
  const std::size_t n = cat.objects.size();

  // Count and collect all natural isomorphisms before materializing.
  std::vector<std::vector<std::vector<std::vector<Index>>>> all(n);
  std::uint64_t total = 0;
  for (Index a = 0; a < n; ++a) {
    all[a].resize(n);
    for (Index b = 0; b < n; ++b) {
      all[a][b] = cat.homs(a, b);
      total += all[a][b].size();
      if (total > morphism_cap)
        throw ResourceLimitError("functor_groupoid: more than " +
                                 std::to_string(morphism_cap) + " morphisms");
    }
  }

  ConcreteGroupoid gg;
  for (Index a = 0; a < n; ++a) gg.add_object("F" + std::to_string(a));
  std::map<std::pair<std::pair<Index, Index>, std::vector<Index>>, Index> morph_index;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (std::size_t k = 0; k < all[a][b].size(); ++k) {
        std::string name = "n" + std::to_string(a) + ">" + std::to_string(b) + "#" +
                           std::to_string(k);
        Index m = gg.add_morphism(name, a, b);
        fg.nat_ends.push_back({a, b});
        fg.nat_components.push_back(all[a][b][k]);
        morph_index[{{a, b}, all[a][b][k]}] = m;
      }

  const auto& cod = *cat.cod;
  auto pointwise = [&](const std::vector<Index>& x, const std::vector<Index>& y) {
    std::vector<Index> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = cod.compose(x[i], y[i]);
    return z;
  };
  for (Index a = 0; a < n; ++a) {
    std::vector<Index> id_comp;
    for (Index v : cat.objects[a].vertex_map) id_comp.push_back(cod.identity[v]);
    gg.set_identity(a, morph_index.at({{a, a}, id_comp}));
  }
  for (Index m = 0; m < gg.morphism_count(); ++m) {
    auto [a, b] = fg.nat_ends[m];
    std::vector<Index> inv_comp;
    for (Index c : fg.nat_components[m]) inv_comp.push_back(cod.inverse[c]);
    gg.set_inverse(m, morph_index.at({{b, a}, inv_comp}));
    for (Index m2 = 0; m2 < gg.morphism_count(); ++m2) {
      auto [b2, c2] = fg.nat_ends[m2];
      if (b2 != b) continue;
      gg.set_compose(m, m2,
                     morph_index.at({{a, c2},
                                     pointwise(fg.nat_components[m], fg.nat_components[m2])}));
    }
  }
  fg.groupoid = share(std::move(gg));
  return fg;
}

}  // namespace grpd

#include "grpd/presented.hpp"

#include <algorithm>

namespace grpd {

Index letter_source(const GenGraph& g, Letter l) {
  const auto& e = g.edges.at(l.edge);
  return l.inv ? e.tgt : e.src;
}

Index letter_target(const GenGraph& g, Letter l) {
  const auto& e = g.edges.at(l.edge);
  return l.inv ? e.src : e.tgt;
}

Index word_target(const GenGraph& g, const Word& w) {
  return w.letters.empty() ? w.base : letter_target(g, w.letters.back());
}

bool word_chained(const GenGraph& g, const Word& w) {
  if (w.base == kNoIndex || w.base >= g.vertices.size()) return false;
  Index at = w.base;
  for (Letter l : w.letters) {
    if (l.edge >= g.edges.size()) return false;
    if (letter_source(g, l) != at) return false;
    at = letter_target(g, l);
  }
  return true;
}

Word word_concat(const GenGraph& g, const Word& a, const Word& b) {
  if (word_target(g, a) != b.base)
    throw std::invalid_argument("word_concat: words do not chain");
  Word w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

Word word_inverse(const GenGraph& g, const Word& w) {
  Word out;
  out.base = word_target(g, w);
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back({it->edge, !it->inv});
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.base = w.base;
  for (Letter l : w.letters) {
    if (!out.letters.empty() && out.letters.back().edge == l.edge &&
        out.letters.back().inv != l.inv) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

std::string word_to_string(const GenGraph& g, const Word& w) {
  if (w.letters.empty()) return "1@" + g.vertices.name(w.base);
  std::string s;
  for (Letter l : w.letters) {
    if (!s.empty()) s += ".";
    s += g.edges[l.edge].name;
    s += l.inv ? "-" : "+";
  }
  return s;
}

ValidationReport validate(const PresentedGroupoid& p) {
  ValidationReport rep;
  for (const auto& e : p.graph.edges)
    if (e.src >= p.graph.vertices.size() || e.tgt >= p.graph.vertices.size())
      rep.fail("edge " + e.name + " has undeclared endpoints");
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const auto& r = p.relations[i];
    if (!word_chained(p.graph, r.lhs) || !word_chained(p.graph, r.rhs)) {
      rep.fail("relation " + std::to_string(i) + " has an unchained word");
      continue;
    }
    if (r.lhs.base != r.rhs.base || word_target(p.graph, r.lhs) != word_target(p.graph, r.rhs))
      rep.fail("relation " + std::to_string(i) + " is not between parallel words");
  }
  return rep;
}

std::vector<std::vector<Index>> components(const PresentedGroupoid& p) {
  UnionFind uf(p.graph.vertices.size());
  for (const auto& e : p.graph.edges) uf.unite(e.src, e.tgt);
  std::vector<std::vector<Index>> blocks;
  std::unordered_map<Index, std::size_t> block_of;
  for (Index v = 0; v < p.graph.vertices.size(); ++v) {
    Index r = uf.find(v);
    auto it = block_of.find(r);
    if (it == block_of.end()) {
      block_of.emplace(r, blocks.size());
      blocks.push_back({v});
    } else {
      blocks[it->second].push_back(v);
    }
  }
  return blocks;
}

ComponentRestriction restrict_component(const PresentedGroupoid& p,
                                        const std::vector<Index>& comp) {
  ComponentRestriction r;
  r.local_vertex.assign(p.graph.vertices.size(), kNoIndex);
  r.local_edge.assign(p.graph.edges.size(), kNoIndex);
  for (Index v : comp) {
    r.local_vertex[v] = static_cast<Index>(r.sub.graph.vertices.size());
    r.vertex_of.push_back(v);
    r.sub.graph.add_vertex(p.graph.vertices.name(v));
  }
  for (Index e = 0; e < p.graph.edges.size(); ++e) {
    const auto& ed = p.graph.edges[e];
    if (r.local_vertex[ed.src] == kNoIndex) continue;
    r.local_edge[e] = static_cast<Index>(r.sub.graph.edges.size());
    r.edge_of.push_back(e);
    r.sub.graph.add_edge(ed.name, r.local_vertex[ed.src], r.local_vertex[ed.tgt]);
  }
  auto localize = [&](const Word& w) {
    Word out;
    out.base = r.local_vertex[w.base];
    for (Letter l : w.letters) out.letters.push_back({r.local_edge[l.edge], l.inv});
    return out;
  };
  for (const auto& rel : p.relations)
    if (r.local_vertex[rel.lhs.base] != kNoIndex)
      r.sub.relations.push_back({localize(rel.lhs), localize(rel.rhs)});
  return r;
}

ValidationReport validate_endpoints(const PresFunctor& f) {
  ValidationReport rep;
  const auto& d = f.dom->graph;
  const auto& c = f.cod->graph;
  if (f.vertex_map.size() != d.vertices.size() || f.edge_map.size() != d.edges.size()) {
    rep.fail("functor maps have wrong arity");
    return rep;
  }
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    const Word& w = f.edge_map[e];
    if (!word_chained(c, w)) {
      rep.fail("image of edge " + d.edges[e].name + " is not chained");
      continue;
    }
    if (w.base != f.vertex_map[d.edges[e].src] ||
        word_target(c, w) != f.vertex_map[d.edges[e].tgt])
      rep.fail("image of edge " + d.edges[e].name + " has wrong endpoints");
  }
  return rep;
}

Word apply(const PresFunctor& f, const Word& w) {
  Word out;
  out.base = f.vertex_map.at(w.base);
  for (Letter l : w.letters) {
    const Word& img = f.edge_map.at(l.edge);
    if (!l.inv) {
      out.letters.insert(out.letters.end(), img.letters.begin(), img.letters.end());
    } else {
      for (auto it = img.letters.rbegin(); it != img.letters.rend(); ++it)
        out.letters.push_back({it->edge, !it->inv});
    }
  }
  return out;
}

PresFunctor compose(const PresFunctor& f, const PresFunctor& g) {
  PresFunctor h;
  h.dom = f.dom;
  h.cod = g.cod;
  h.vertex_map.reserve(f.vertex_map.size());
  for (Index v : f.vertex_map) h.vertex_map.push_back(g.vertex_map.at(v));
  h.edge_map.reserve(f.edge_map.size());
  for (const Word& w : f.edge_map) h.edge_map.push_back(apply(g, w));
  return h;
}

PresFunctor identity_pres_functor(PresentedPtr p) {
  PresFunctor f;
  f.dom = p;
  f.cod = p;
  for (Index v = 0; v < p->graph.vertices.size(); ++v) f.vertex_map.push_back(v);
  for (Index e = 0; e < p->graph.edges.size(); ++e)
    f.edge_map.push_back(Word{p->graph.edges[e].src, {{e, false}}});
  return f;
}

Index evaluate(const PresToConcFunctor& f, const Word& w) {
  const auto& g = *f.cod;
  Index acc = g.identity.at(f.vertex_map.at(w.base));
  for (Letter l : w.letters) {
    Index m = f.edge_map.at(l.edge);
    if (l.inv) m = g.inverse[m];
    acc = g.compose(acc, m);
  }
  return acc;
}

ValidationReport validate(const PresToConcFunctor& f) {
  ValidationReport rep;
  const auto& d = f.dom->graph;
  const auto& g = *f.cod;
  if (f.vertex_map.size() != d.vertices.size() || f.edge_map.size() != d.edges.size()) {
    rep.fail("functor maps have wrong arity");
    return rep;
  }
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    Index m = f.edge_map[e];
    if (g.src[m] != f.vertex_map[d.edges[e].src] || g.tgt[m] != f.vertex_map[d.edges[e].tgt])
      rep.fail("image of edge " + d.edges[e].name + " has wrong endpoints");
  }
  if (!rep.ok()) return rep;
  for (std::size_t i = 0; i < f.dom->relations.size(); ++i) {
    const auto& r = f.dom->relations[i];
    if (evaluate(f, r.lhs) != evaluate(f, r.rhs))
      rep.fail("relation " + std::to_string(i) + " is not preserved");
  }
  return rep;
}

PresentedGroupoid present(const ConcreteGroupoid& g) {
  PresentedGroupoid p;
  for (Index x = 0; x < g.object_count(); ++x) p.graph.add_vertex(g.objects.name(x));
  std::vector<bool> is_identity(g.morphism_count(), false);
  for (Index x = 0; x < g.object_count(); ++x) is_identity[g.identity[x]] = true;
  std::vector<Index> edge_of(g.morphism_count(), kNoIndex);
  for (Index m = 0; m < g.morphism_count(); ++m)
    if (!is_identity[m]) edge_of[m] = p.graph.add_edge(g.morphisms.name(m), g.src[m], g.tgt[m]);

  auto as_word = [&](Index m, Index base) -> Word {
    if (is_identity[m]) return Word{base, {}};
    return Word{g.src[m], {{edge_of[m], false}}};
  };
  for (Index a = 0; a < g.morphism_count(); ++a) {
    if (is_identity[a]) continue;
    for (Index b = 0; b < g.morphism_count(); ++b) {
      if (is_identity[b] || g.tgt[a] != g.src[b]) continue;
      Word lhs{g.src[a], {{edge_of[a], false}, {edge_of[b], false}}};
      p.relations.push_back({lhs, as_word(g.compose(a, b), g.src[a])});
    }
  }
  return p;
}

PresentedGroupoid trivial_presentation(const std::string& vertex) {
  PresentedGroupoid p;
  p.graph.add_vertex(vertex);
  return p;
}

PresentedGroupoid free_loop_presentation(const std::string& vertex, const std::string& loop) {
  PresentedGroupoid p;
  Index v = p.graph.add_vertex(vertex);
  p.graph.add_edge(loop, v, v);
  return p;
}

PresentedGroupoid cyclic_presentation(unsigned n, const std::string& vertex,
                                      const std::string& loop) {
  PresentedGroupoid p;
  Index v = p.graph.add_vertex(vertex);
  Index a = p.graph.add_edge(loop, v, v);
  Word w{v, {}};
  for (unsigned i = 0; i < n; ++i) w.letters.push_back({a, false});
  p.relations.push_back({w, Word{v, {}}});
  return p;
}

PresentedGroupoid discrete_presentation(unsigned n, const std::string& prefix) {
  PresentedGroupoid p;
  for (unsigned i = 0; i < n; ++i) p.graph.add_vertex(prefix + std::to_string(i));
  return p;
}

}  // namespace grpd

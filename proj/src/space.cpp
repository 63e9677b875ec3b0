#include "grpd/space.hpp"

#include <algorithm>

namespace grpd {

Index Complex2::add_cell(const std::string& n, Word boundary) {
  Index i = cell_names.add(n);
  cells.push_back({n, std::move(boundary)});
  return i;
}

ValidationReport validate(const Complex2& c) {
  ValidationReport rep;
  for (const auto& e : c.skeleton.edges)
    if (e.src >= c.skeleton.vertices.size() || e.tgt >= c.skeleton.vertices.size())
      rep.fail("edge " + e.name + " has undeclared endpoints");
  for (const auto& cell : c.cells) {
    if (!word_chained(c.skeleton, cell.boundary)) {
      rep.fail("cell " + cell.name + " has an unchained boundary");
      continue;
    }
    if (word_target(c.skeleton, cell.boundary) != cell.boundary.base)
      rep.fail("cell " + cell.name + " has a non-closed boundary");
  }
  return rep;
}

bool Subcomplex::empty() const {
  return std::none_of(vertices.begin(), vertices.end(), [](bool b) { return b; });
}

Subcomplex full_subcomplex(ComplexPtr c) {
  Subcomplex s;
  s.parent = c;
  s.vertices.assign(c->skeleton.vertices.size(), true);
  s.edges.assign(c->skeleton.edges.size(), true);
  s.cells.assign(c->cells.size(), true);
  return s;
}

Subcomplex make_subcomplex(ComplexPtr c, const std::vector<std::string>& vertex_ids,
                           const std::vector<std::string>& edge_ids,
                           const std::vector<std::string>& cell_ids) {
  Subcomplex s;
  s.parent = c;
  s.vertices.assign(c->skeleton.vertices.size(), false);
  s.edges.assign(c->skeleton.edges.size(), false);
  s.cells.assign(c->cells.size(), false);
  for (const auto& v : vertex_ids) s.vertices[c->skeleton.vertices.at(v)] = true;
  for (const auto& e : edge_ids) s.edges[c->skeleton.edge_names.at(e)] = true;
  for (const auto& cl : cell_ids) s.cells[c->cell_names.at(cl)] = true;
  auto rep = validate(s);
  if (!rep.ok()) throw std::invalid_argument("subcomplex not incidence-closed: " +
                                             rep.violations.front());
  return s;
}

ValidationReport validate(const Subcomplex& s) {
  ValidationReport rep;
  const auto& c = *s.parent;
  if (s.vertices.size() != c.skeleton.vertices.size() ||
      s.edges.size() != c.skeleton.edges.size() || s.cells.size() != c.cells.size()) {
    rep.fail("mask sizes do not match the parent");
    return rep;
  }
  for (Index e = 0; e < c.skeleton.edges.size(); ++e)
    if (s.edges[e] && (!s.vertices[c.skeleton.edges[e].src] ||
                       !s.vertices[c.skeleton.edges[e].tgt]))
      rep.fail("edge " + c.skeleton.edges[e].name + " lacks an endpoint");
  for (Index cl = 0; cl < c.cells.size(); ++cl) {
    if (!s.cells[cl]) continue;
    if (!s.vertices[c.cells[cl].boundary.base])
      rep.fail("cell " + c.cells[cl].name + " lacks its base vertex");
    for (Letter l : c.cells[cl].boundary.letters)
      if (!s.edges[l.edge]) {
        rep.fail("cell " + c.cells[cl].name + " lacks a boundary edge");
        break;
      }
  }
  return rep;
}

namespace {

void require_same_parent(const Subcomplex& a, const Subcomplex& b, const char* who) {
  if (a.parent != b.parent)
    throw std::invalid_argument(std::string(who) + ": subcomplexes of different parents");
}

}  // namespace

Subcomplex intersect(const Subcomplex& a, const Subcomplex& b) {
  require_same_parent(a, b, "intersect");
  Subcomplex s;
  s.parent = a.parent;
  s.vertices.resize(a.vertices.size());
  s.edges.resize(a.edges.size());
  s.cells.resize(a.cells.size());
  for (std::size_t i = 0; i < a.vertices.size(); ++i) s.vertices[i] = a.vertices[i] && b.vertices[i];
  for (std::size_t i = 0; i < a.edges.size(); ++i) s.edges[i] = a.edges[i] && b.edges[i];
  for (std::size_t i = 0; i < a.cells.size(); ++i) s.cells[i] = a.cells[i] && b.cells[i];
  return s;
}

Subcomplex unite(const Subcomplex& a, const Subcomplex& b) {
  require_same_parent(a, b, "unite");
  Subcomplex s;
  s.parent = a.parent;
  s.vertices.resize(a.vertices.size());
  s.edges.resize(a.edges.size());
  s.cells.resize(a.cells.size());
  for (std::size_t i = 0; i < a.vertices.size(); ++i) s.vertices[i] = a.vertices[i] || b.vertices[i];
  for (std::size_t i = 0; i < a.edges.size(); ++i) s.edges[i] = a.edges[i] || b.edges[i];
  for (std::size_t i = 0; i < a.cells.size(); ++i) s.cells[i] = a.cells[i] || b.cells[i];
  return s;
}

bool subcomplex_equal(const Subcomplex& a, const Subcomplex& b) {
  return a.parent == b.parent && a.vertices == b.vertices && a.edges == b.edges &&
         a.cells == b.cells;
}

Complex2 extract(const Subcomplex& s) {
  const auto& c = *s.parent;
  Complex2 out;
  std::vector<Index> vmap(c.skeleton.vertices.size(), kNoIndex);
  std::vector<Index> emap(c.skeleton.edges.size(), kNoIndex);
  for (Index v = 0; v < c.skeleton.vertices.size(); ++v)
    if (s.vertices[v]) vmap[v] = out.add_vertex(c.skeleton.vertices.name(v));
  for (Index e = 0; e < c.skeleton.edges.size(); ++e)
    if (s.edges[e])
      emap[e] = out.add_edge(c.skeleton.edges[e].name, vmap[c.skeleton.edges[e].src],
                             vmap[c.skeleton.edges[e].tgt]);
  for (Index cl = 0; cl < c.cells.size(); ++cl) {
    if (!s.cells[cl]) continue;
    Word w;
    w.base = vmap[c.cells[cl].boundary.base];
    for (Letter l : c.cells[cl].boundary.letters) w.letters.push_back({emap[l.edge], l.inv});
    out.add_cell(c.cells[cl].name, std::move(w));
  }
  return out;
}

namespace {

Pi0 pi0_impl(const GenGraph& g, const std::vector<bool>* vmask,
             const std::vector<bool>* emask) {
  Pi0 out;
  out.vertex_component.assign(g.vertices.size(), kNoIndex);
  UnionFind uf(g.vertices.size());
  for (Index e = 0; e < g.edges.size(); ++e) {
    if (emask && !(*emask)[e]) continue;
    uf.unite(g.edges[e].src, g.edges[e].tgt);
  }
  std::unordered_map<Index, Index> comp_of;
  for (Index v = 0; v < g.vertices.size(); ++v) {
    if (vmask && !(*vmask)[v]) continue;
    Index r = uf.find(v);
    auto it = comp_of.find(r);
    if (it == comp_of.end()) {
      comp_of.emplace(r, static_cast<Index>(out.component_names.size()));
      out.vertex_component[v] = static_cast<Index>(out.component_names.size());
      out.component_names.push_back(g.vertices.name(v));  // least vertex first
    } else {
      out.vertex_component[v] = it->second;
    }
  }
  return out;
}

}  // namespace

Pi0 pi0(const Complex2& c) { return pi0_impl(c.skeleton, nullptr, nullptr); }

Pi0 pi0(const Subcomplex& s) {
  return pi0_impl(s.parent->skeleton, &s.vertices, &s.edges);
}

PresentedGroupoid pi1(const Complex2& c) {
  PresentedGroupoid p;
  p.graph = c.skeleton;
  for (const auto& cell : c.cells)
    p.relations.push_back({cell.boundary, Word{cell.boundary.base, {}}});
  return p;
}

PresentedGroupoid pi1(const Subcomplex& s) { return pi1(extract(s)); }

PresFunctor inclusion_functor(PresentedPtr pa, PresentedPtr pb, const Subcomplex& a,
                              const Subcomplex& b) {
  require_same_parent(a, b, "inclusion_functor");
  PresFunctor f;
  f.dom = pa;
  f.cod = pb;
  for (Index v = 0; v < pa->graph.vertices.size(); ++v)
    f.vertex_map.push_back(pb->graph.vertices.at(pa->graph.vertices.name(v)));
  for (Index e = 0; e < pa->graph.edges.size(); ++e) {
    Index be = pb->graph.edge_names.at(pa->graph.edges[e].name);
    f.edge_map.push_back(Word{pb->graph.edges[be].src, {{be, false}}});
  }
  return f;
}

CoverNerve build_nerve(const std::vector<Subcomplex>& cover) {
  if (cover.empty()) throw std::invalid_argument("build_nerve: empty cover");
  for (std::size_t i = 1; i < cover.size(); ++i)
    require_same_parent(cover[0], cover[i], "build_nerve");
  Subcomplex all = cover[0];
  for (std::size_t i = 1; i < cover.size(); ++i) all = unite(all, cover[i]);
  if (!subcomplex_equal(all, full_subcomplex(cover[0].parent)))
    throw std::invalid_argument("build_nerve: members do not cover the parent complex");

  CoverNerve n;
  n.cover = cover;
  n.parent = cover[0].parent;

  // Nonempty intersections U_S, |S| <= 3, in lexicographic index order.
  const int k = static_cast<int>(cover.size());
  std::vector<std::vector<int>> subsets;
  for (int a = 0; a < k; ++a) {
    subsets.push_back({a});
    for (int b = a + 1; b < k; ++b) {
      subsets.push_back({a, b});
      for (int c = b + 1; c < k; ++c) subsets.push_back({a, b, c});
    }
  }
  std::sort(subsets.begin(), subsets.end(),
            [](const auto& x, const auto& y) {
              if (x.size() != y.size()) return x.size() < y.size();
              return x < y;
            });
  std::vector<std::string> names;
  for (const auto& s : subsets) {
    Subcomplex piece = cover[s[0]];
    for (std::size_t i = 1; i < s.size(); ++i) piece = intersect(piece, cover[s[i]]);
    if (piece.empty()) continue;
    std::string name = "U";
    for (std::size_t i = 0; i < s.size(); ++i) name += (i ? "&" : "") + std::to_string(s[i]);
    names.push_back(name);
    n.piece_index.push_back(s);
    n.piece.push_back(std::move(piece));
  }

  // order: U_S <= U_T iff S includes T (reverse inclusion)
  std::vector<std::pair<std::string, std::string>> covers_rel;
  for (std::size_t a = 0; a < n.piece_index.size(); ++a)
    for (std::size_t b = 0; b < n.piece_index.size(); ++b) {
      if (a == b) continue;
      const auto& S = n.piece_index[a];
      const auto& T = n.piece_index[b];
      if (std::includes(S.begin(), S.end(), T.begin(), T.end()))
        covers_rel.push_back({names[a], names[b]});
    }
  n.poset = FinitePoset::from_cover_relations(names, covers_rel);

  n.diagram.poset = n.poset;
  for (const auto& piece : n.piece) n.diagram.value.push_back(share(pi1(piece)));
  for (auto [i, j] : n.poset.strict_pairs())
    n.diagram.transition[{i, j}] =
        inclusion_functor(n.diagram.value[i], n.diagram.value[j], n.piece[i], n.piece[j]);
  return n;
}

bool is_good_cover(const CoverNerve& n, GoodReading reading, std::uint64_t budget) {
  for (const auto& value : n.diagram.value) {
    auto comps = components(*value);
    if (reading == GoodReading::Strict && comps.size() != 1) return false;
    for (const auto& comp : comps) {
      ComponentRestriction rc = restrict_component(*value, comp);
      auto vgp = tree_collapse(rc.sub, 0);
      auto group = enumerate_group(vgp, budget);
      if (!group || group->order != 1) return false;
    }
  }
  return true;
}

}  // namespace grpd

#include "grpd/diagrams.hpp"

#include <algorithm>
#include <functional>

namespace grpd {

// ---------------------------------------------------------------- poset ----

FinitePoset FinitePoset::from_cover_relations(
    const std::vector<std::string>& element_names,
    const std::vector<std::pair<std::string, std::string>>& covers) {
  FinitePoset p;
  for (const auto& n : element_names) p.elements.add(n);
  const std::size_t n = p.elements.size();
  p.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) p.leq[i][i] = true;
  for (const auto& [a, b] : covers) p.leq[p.elements.at(a)][p.elements.at(b)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (p.leq[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (p.leq[k][j]) p.leq[i][j] = true;
  return p;
}

ValidationReport FinitePoset::validate() const {
  ValidationReport rep;
  const std::size_t n = elements.size();
  if (leq.size() != n) {
    rep.fail("leq matrix has wrong size");
    return rep;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (leq[i].size() != n) {
      rep.fail("leq matrix is ragged");
      return rep;
    }
    if (!leq[i][i]) rep.fail("not reflexive at " + elements.name(static_cast<Index>(i)));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq[i][j] && leq[j][i])
        rep.fail("antisymmetry fails on (" + elements.name(static_cast<Index>(i)) + ", " +
                 elements.name(static_cast<Index>(j)) + ")");
      if (leq[i][j])
        for (std::size_t k = 0; k < n; ++k)
          if (leq[j][k] && !leq[i][k])
            rep.fail("transitivity fails through " + elements.name(static_cast<Index>(j)));
    }
  return rep;
}

std::vector<std::pair<Index, Index>> FinitePoset::strict_pairs() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index i = 0; i < elements.size(); ++i)
    for (Index j = 0; j < elements.size(); ++j)
      if (i != j && leq[i][j]) out.push_back({i, j});
  return out;
}

std::vector<std::tuple<Index, Index, Index>> FinitePoset::strict_chains() const {
  std::vector<std::tuple<Index, Index, Index>> out;
  for (Index i = 0; i < elements.size(); ++i)
    for (Index j = 0; j < elements.size(); ++j) {
      if (i == j || !leq[i][j]) continue;
      for (Index k = 0; k < elements.size(); ++k)
        if (j != k && leq[j][k] && i != k) out.push_back({i, j, k});
    }
  return out;
}

bool FinitePoset::is_filtered() const {
  for (Index i = 0; i < elements.size(); ++i)
    for (Index j = 0; j < elements.size(); ++j) {
      bool bound = false;
      for (Index k = 0; k < elements.size() && !bound; ++k) bound = leq[i][k] && leq[j][k];
      if (!bound) return false;
    }
  return true;
}

Index FinitePoset::top() const {
  for (Index t = 0; t < elements.size(); ++t) {
    bool all = true;
    for (Index i = 0; i < elements.size() && all; ++i) all = leq[i][t];
    if (all) return t;
  }
  return kNoIndex;
}

// ------------------------------------------------------ diagram validation ----

ValidationReport validate_diagram(const ConcreteDiagram& d) {
  ValidationReport rep = d.poset.validate();
  if (!rep.ok()) return rep;
  if (d.value.size() != d.poset.elements.size()) {
    rep.fail("diagram has wrong number of values");
    return rep;
  }
  for (auto [i, j] : d.poset.strict_pairs()) {
    auto it = d.transition.find({i, j});
    if (it == d.transition.end()) {
      rep.fail("missing transition (" + d.poset.elements.name(i) + " <= " +
               d.poset.elements.name(j) + ")");
      continue;
    }
    const auto& f = it->second;
    Index from = d.variance == Variance::Contravariant ? j : i;
    Index to = d.variance == Variance::Contravariant ? i : j;
    if (!same_groupoid(f.dom, d.value[from]) || !same_groupoid(f.cod, d.value[to]))
      rep.fail("transition endpoints wrong for (" + d.poset.elements.name(i) + ", " +
               d.poset.elements.name(j) + ")");
  }
  if (!rep.ok()) return rep;
  for (auto [i, j, k] : d.poset.strict_chains()) {
    const auto& ij = d.psi(i, j);
    const auto& jk = d.psi(j, k);
    const auto& ik = d.psi(i, k);
    ConcreteFunctor through = d.variance == Variance::Contravariant ? compose(jk, ij)
                                                                    : compose(ij, jk);
    if (through.object_map != ik.object_map || through.morphism_map != ik.morphism_map)
      rep.fail("strictness fails on chain (" + d.poset.elements.name(i) + ", " +
               d.poset.elements.name(j) + ", " + d.poset.elements.name(k) + ")");
  }
  return rep;
}

ValidationReport validate_diagram(const PresDiagram& d) {
  ValidationReport rep = d.poset.validate();
  if (!rep.ok()) return rep;
  if (d.value.size() != d.poset.elements.size()) {
    rep.fail("diagram has wrong number of values");
    return rep;
  }
  for (auto [i, j] : d.poset.strict_pairs()) {
    auto it = d.transition.find({i, j});
    if (it == d.transition.end()) {
      rep.fail("missing transition (" + d.poset.elements.name(i) + " <= " +
               d.poset.elements.name(j) + ")");
      continue;
    }
    auto sub = validate_endpoints(it->second);
    for (auto& v : sub.violations)
      rep.fail("transition (" + d.poset.elements.name(i) + ", " + d.poset.elements.name(j) +
               "): " + v);
  }
  if (!rep.ok()) return rep;
  for (auto [i, j, k] : d.poset.strict_chains()) {
    const auto& ij = d.psi(i, j);
    const auto& jk = d.psi(j, k);
    const auto& ik = d.psi(i, k);
    for (Index v = 0; v < d.value[i]->graph.vertices.size(); ++v)
      if (jk.vertex_map[ij.vertex_map[v]] != ik.vertex_map[v]) {
        rep.fail("strictness fails on objects along chain through " + d.poset.elements.name(j));
        break;
      }
    for (Index e = 0; e < d.value[i]->graph.edges.size(); ++e) {
      Word through = free_reduce(apply(jk, ij.edge_map[e]));
      if (!(through == free_reduce(ik.edge_map[e]))) {
        rep.fail("strictness fails letterwise along chain through " + d.poset.elements.name(j));
        break;
      }
    }
  }
  return rep;
}

// ----------------------------------------------------------------- limits ----

namespace {

void require_contravariant(const ConcreteDiagram& d, const char* who) {
  if (d.variance != Variance::Contravariant)
    throw std::invalid_argument(std::string(who) + ": diagram must be contravariant");
}

/// Backtracking over per-element choices with pairwise constraints checked
/// as soon as both ends are assigned.
template <typename Choices, typename Check>
void enumerate_families(std::size_t n, const Choices& choices, const Check& check,
                        const std::function<void(const std::vector<Index>&)>& emit) {
  std::vector<Index> pick(n, kNoIndex);
  std::function<void(std::size_t)> rec = [&](std::size_t e) {
    if (e == n) {
      emit(pick);
      return;
    }
    for (Index c : choices(e)) {
      pick[e] = c;
      if (check(pick, e)) rec(e + 1);
    }
    pick[e] = kNoIndex;
  };
  rec(0);
}

}  // namespace

std::vector<std::vector<Index>> lim_objects(const ConcreteDiagram& d) {
  require_contravariant(d, "lim");
  const std::size_t n = d.poset.elements.size();
  auto pairs = d.poset.strict_pairs();
  std::vector<std::vector<Index>> out;
  auto choices = [&](std::size_t e) {
    std::vector<Index> all(d.value[e]->object_count());
    for (Index x = 0; x < all.size(); ++x) all[x] = x;
    return all;
  };
  auto check = [&](const std::vector<Index>& pick, std::size_t last) {
    for (auto [i, j] : pairs) {
      if (std::max<std::size_t>(i, j) != last) continue;
      if (pick[i] == kNoIndex || pick[j] == kNoIndex) continue;
      if (d.psi(i, j).object_map[pick[j]] != pick[i]) return false;
    }
    return true;
  };
  enumerate_families(n, choices, check,
                     [&](const std::vector<Index>& f) { out.push_back(f); });
  return out;
}

std::vector<std::vector<Index>> lim_homs(const ConcreteDiagram& d,
                                         const std::vector<Index>& a,
                                         const std::vector<Index>& b) {
  const std::size_t n = d.poset.elements.size();
  auto pairs = d.poset.strict_pairs();
  std::vector<std::vector<Index>> out;
  auto choices = [&](std::size_t e) { return d.value[e]->hom(a[e], b[e]); };
  auto check = [&](const std::vector<Index>& pick, std::size_t last) {
    for (auto [i, j] : pairs) {
      if (std::max<std::size_t>(i, j) != last) continue;
      if (pick[i] == kNoIndex || pick[j] == kNoIndex) continue;
      if (d.psi(i, j).morphism_map[pick[j]] != pick[i]) return false;
    }
    return true;
  };
  enumerate_families(n, choices, check,
                     [&](const std::vector<Index>& f) { out.push_back(f); });
  return out;
}

namespace {

std::string family_name(const ConcreteDiagram& d, const std::vector<Index>& fam, bool objects) {
  std::string s = "(";
  for (std::size_t e = 0; e < fam.size(); ++e) {
    if (e) s += ",";
    s += objects ? d.value[e]->objects.name(fam[e]) : d.value[e]->morphisms.name(fam[e]);
  }
  return s + ")";
}

}  // namespace

LimResult diagram_lim(const ConcreteDiagram& d) {
  LimResult res;
  res.object_family = lim_objects(d);
  ConcreteGroupoid g;
  for (std::size_t o = 0; o < res.object_family.size(); ++o) {
    g.add_object(family_name(d, res.object_family[o], true));
    res.object_index.emplace(res.object_family[o], static_cast<Index>(o));
  }
  const std::size_t n = d.poset.elements.size();
  std::map<std::pair<std::pair<Index, Index>, std::vector<Index>>, Index> morph_index;
  std::vector<std::pair<Index, Index>> ends;
  for (Index a = 0; a < res.object_family.size(); ++a)
    for (Index b = 0; b < res.object_family.size(); ++b)
      for (auto& fam : lim_homs(d, res.object_family[a], res.object_family[b])) {
        std::string name = "m" + std::to_string(a) + ">" + std::to_string(b) + "#" +
                           std::to_string(g.morphism_count());
        Index m = g.add_morphism(name, a, b);
        morph_index[{{a, b}, fam}] = m;
        ends.push_back({a, b});
        res.morphism_family.push_back(fam);
      }
  for (Index o = 0; o < res.object_family.size(); ++o) {
    std::vector<Index> idf(n);
    for (std::size_t e = 0; e < n; ++e) idf[e] = d.value[e]->identity[res.object_family[o][e]];
    g.set_identity(o, morph_index.at({{o, o}, idf}));
  }
  for (Index m = 0; m < g.morphism_count(); ++m) {
    auto [a, b] = ends[m];
    std::vector<Index> inv(n);
    for (std::size_t e = 0; e < n; ++e) inv[e] = d.value[e]->inverse[res.morphism_family[m][e]];
    g.set_inverse(m, morph_index.at({{b, a}, inv}));
    for (Index m2 = 0; m2 < g.morphism_count(); ++m2) {
      auto [b2, c] = ends[m2];
      if (b2 != b) continue;
      std::vector<Index> comp(n);
      for (std::size_t e = 0; e < n; ++e)
        comp[e] = d.value[e]->compose(res.morphism_family[m][e], res.morphism_family[m2][e]);
      g.set_compose(m, m2, morph_index.at({{a, c}, comp}));
    }
  }
  res.groupoid = share(std::move(g));
  return res;
}

// --------------------------------------------------------------- 2-limits ----

std::vector<TlObject> tl_objects(const ConcreteDiagram& d, std::uint64_t cap) {
  require_contravariant(d, "tl");
  const std::size_t n = d.poset.elements.size();
  auto pairs = d.poset.strict_pairs();
  std::map<std::pair<Index, Index>, std::size_t> pair_pos;
  for (std::size_t p = 0; p < pairs.size(); ++p) pair_pos[pairs[p]] = p;

  // chains bucketed by the last of their three pair positions
  struct Chain {
    std::size_t ij, jk, ik;
    Index i, j, k;
  };
  std::vector<std::vector<Chain>> chain_at(pairs.size());
  for (auto [i, j, k] : d.poset.strict_chains()) {
    Chain c{pair_pos.at({i, j}), pair_pos.at({j, k}), pair_pos.at({i, k}), i, j, k};
    chain_at[std::max({c.ij, c.jk, c.ik})].push_back(c);
  }

  std::vector<TlObject> out;
  std::vector<Index> x(n, kNoIndex);
  std::vector<Index> xi(pairs.size(), kNoIndex);

  std::function<void(std::size_t)> assign_xi = [&](std::size_t p) {
    if (p == pairs.size()) {
      out.push_back({x, xi});
      if (out.size() > cap) throw ResourceLimitError("tl: object budget exceeded");
      return;
    }
    auto [i, j] = pairs[p];
    Index source = d.psi(i, j).object_map[x[j]];
    for (Index m : d.value[i]->hom(source, x[i])) {
      xi[p] = m;
      bool ok = true;
      for (const Chain& c : chain_at[p]) {
        // xi_ik == compose(psi_ij(xi_jk), xi_ij)
        Index lhs = xi[c.ik];
        Index rhs = d.value[c.i]->compose(d.psi(c.i, c.j).morphism_map[xi[c.jk]], xi[c.ij]);
        if (lhs != rhs) {
          ok = false;
          break;
        }
      }
      if (ok) assign_xi(p + 1);
    }
    xi[p] = kNoIndex;
  };
  std::function<void(std::size_t)> assign_x = [&](std::size_t e) {
    if (e == n) {
      assign_xi(0);
      return;
    }
    for (Index o = 0; o < d.value[e]->object_count(); ++o) {
      x[e] = o;
      assign_x(e + 1);
    }
    x[e] = kNoIndex;
  };
  assign_x(0);
  return out;
}

std::vector<std::vector<Index>> tl_homs(const ConcreteDiagram& d, const TlObject& o1,
                                        const TlObject& o2) {
  const std::size_t n = d.poset.elements.size();
  auto pairs = d.poset.strict_pairs();
  std::vector<std::vector<Index>> out;
  auto choices = [&](std::size_t e) { return d.value[e]->hom(o1.x[e], o2.x[e]); };
  auto check = [&](const std::vector<Index>& pick, std::size_t last) {
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto [i, j] = pairs[p];
      if (std::max<std::size_t>(i, j) != last) continue;
      if (pick[i] == kNoIndex || pick[j] == kNoIndex) continue;
      // compose(xi, f_i) == compose(psi_ij(f_j), eta)
      Index lhs = d.value[i]->compose(o1.xi[p], pick[i]);
      Index rhs = d.value[i]->compose(d.psi(i, j).morphism_map[pick[j]], o2.xi[p]);
      if (lhs != rhs) return false;
    }
    return true;
  };
  enumerate_families(n, choices, check,
                     [&](const std::vector<Index>& f) { out.push_back(f); });
  return out;
}

TlResult diagram_tl(const ConcreteDiagram& d, std::uint64_t cap) {
  TlResult res;
  res.objects = tl_objects(d, cap);
  const std::size_t n = d.poset.elements.size();
  ConcreteGroupoid g;
  for (std::size_t o = 0; o < res.objects.size(); ++o) {
    std::string name = family_name(d, res.objects[o].x, true) + "#" + std::to_string(o);
    g.add_object(name);
    res.object_index.emplace(res.objects[o], static_cast<Index>(o));
  }
  std::map<std::pair<std::pair<Index, Index>, std::vector<Index>>, Index> morph_index;
  std::uint64_t total = 0;
  for (Index a = 0; a < res.objects.size(); ++a)
    for (Index b = 0; b < res.objects.size(); ++b)
      for (auto& fam : tl_homs(d, res.objects[a], res.objects[b])) {
        if (++total > cap) throw ResourceLimitError("tl: morphism budget exceeded");
        std::string name = "m" + std::to_string(a) + ">" + std::to_string(b) + "#" +
                           std::to_string(g.morphism_count());
        Index m = g.add_morphism(name, a, b);
        morph_index[{{a, b}, fam}] = m;
        res.morphism_ends.push_back({a, b});
        res.morphism_family.push_back(fam);
      }
  for (Index o = 0; o < res.objects.size(); ++o) {
    std::vector<Index> idf(n);
    for (std::size_t e = 0; e < n; ++e) idf[e] = d.value[e]->identity[res.objects[o].x[e]];
    g.set_identity(o, morph_index.at({{o, o}, idf}));
  }
  for (Index m = 0; m < g.morphism_count(); ++m) {
    auto [a, b] = res.morphism_ends[m];
    std::vector<Index> inv(n);
    for (std::size_t e = 0; e < n; ++e) inv[e] = d.value[e]->inverse[res.morphism_family[m][e]];
    g.set_inverse(m, morph_index.at({{b, a}, inv}));
    for (Index m2 = 0; m2 < g.morphism_count(); ++m2) {
      auto [b2, c] = res.morphism_ends[m2];
      if (b2 != b) continue;
      std::vector<Index> comp(n);
      for (std::size_t e = 0; e < n; ++e)
        comp[e] = d.value[e]->compose(res.morphism_family[m][e], res.morphism_family[m2][e]);
      g.set_compose(m, m2, morph_index.at({{a, c}, comp}));
    }
  }
  res.groupoid = share(std::move(g));
  return res;
}

namespace {

TlObject gamma_image(const ConcreteDiagram& d, const std::vector<Index>& family) {
  TlObject t;
  t.x = family;
  for (auto [i, j] : d.poset.strict_pairs()) t.xi.push_back(d.value[i]->identity[family[i]]);
  return t;
}

}  // namespace

ConcreteFunctor gamma_embedding(const ConcreteDiagram& d) {
  LimResult lim = diagram_lim(d);
  TlResult tl = diagram_tl(d);
  ConcreteFunctor f;
  f.dom = lim.groupoid;
  f.cod = tl.groupoid;
  for (const auto& fam : lim.object_family)
    f.object_map.push_back(tl.object_index.at(gamma_image(d, fam)));
  // tl morphism lookup by (endpoints, family)
  std::map<std::pair<std::pair<Index, Index>, std::vector<Index>>, Index> morph_index;
  for (Index m = 0; m < tl.morphism_family.size(); ++m)
    morph_index[{tl.morphism_ends[m], tl.morphism_family[m]}] = m;
  for (Index m = 0; m < lim.morphism_family.size(); ++m) {
    Index a = f.object_map[lim.groupoid->src[m]];
    Index b = f.object_map[lim.groupoid->tgt[m]];
    f.morphism_map.push_back(morph_index.at({{a, b}, lim.morphism_family[m]}));
  }
  return f;
}

bool gamma_fully_faithful(const ConcreteDiagram& d) {
  auto objects = lim_objects(d);
  for (const auto& a : objects)
    for (const auto& b : objects) {
      std::size_t in_lim = lim_homs(d, a, b).size();
      std::size_t in_tl = tl_homs(d, gamma_image(d, a), gamma_image(d, b)).size();
      // lim families embed injectively; bijectivity is exactly count equality
      if (in_lim != in_tl) return false;
    }
  return true;
}

// ---------------------------------------------------------------- colimits ----

namespace {

struct ObjectQuotient {
  std::vector<std::size_t> offset;         // per element
  UnionFind uf;                            // over all (element, vertex) pairs
  std::vector<Index> class_of;             // global vertex -> class index
  std::vector<Index> class_repr;           // class -> least global vertex
};

ObjectQuotient object_quotient(const PresDiagram& d) {
  std::vector<std::size_t> offset(d.value.size() + 1, 0);
  for (std::size_t e = 0; e < d.value.size(); ++e)
    offset[e + 1] = offset[e] + d.value[e]->graph.vertices.size();
  ObjectQuotient q{offset, UnionFind(offset.back()), {}, {}};
  for (auto [i, j] : d.poset.strict_pairs()) {
    const auto& psi = d.psi(i, j);
    for (Index v = 0; v < d.value[i]->graph.vertices.size(); ++v)
      q.uf.unite(static_cast<Index>(offset[i] + v),
                 static_cast<Index>(offset[j] + psi.vertex_map[v]));
  }
  q.class_of.assign(offset.back(), kNoIndex);
  for (Index g = 0; g < offset.back(); ++g) {
    Index r = q.uf.find(g);
    if (q.class_of[r] == kNoIndex) {
      q.class_of[r] = static_cast<Index>(q.class_repr.size());
      q.class_repr.push_back(r);
    }
    q.class_of[g] = q.class_of[r];
  }
  return q;
}

std::string global_vertex_name(const PresDiagram& d, const ObjectQuotient& q, Index g) {
  std::size_t e = 0;
  while (q.offset[e + 1] <= g) ++e;
  return d.poset.elements.name(static_cast<Index>(e)) + "." +
         d.value[e]->graph.vertices.name(static_cast<Index>(g - q.offset[e]));
}

}  // namespace

ColimResult diagram_colim(const PresDiagram& d) {
  ObjectQuotient q = object_quotient(d);
  PresentedGroupoid colim;
  for (Index c = 0; c < q.class_repr.size(); ++c)
    colim.graph.add_vertex(global_vertex_name(d, q, q.class_repr[c]));

  // one generator per value generator, endpoints through the quotient
  std::vector<std::vector<Index>> edge_of(d.value.size());
  for (std::size_t e = 0; e < d.value.size(); ++e) {
    const auto& graph = d.value[e]->graph;
    edge_of[e].resize(graph.edges.size());
    for (Index ed = 0; ed < graph.edges.size(); ++ed) {
      std::string name = d.poset.elements.name(static_cast<Index>(e)) + "." +
                         graph.edges[ed].name;
      edge_of[e][ed] = colim.graph.add_edge(
          name, q.class_of[q.offset[e] + graph.edges[ed].src],
          q.class_of[q.offset[e] + graph.edges[ed].tgt]);
    }
  }
  auto transport = [&](std::size_t e, const Word& w) {
    Word out;
    out.base = q.class_of[q.offset[e] + w.base];
    for (Letter l : w.letters) out.letters.push_back({edge_of[e][l.edge], l.inv});
    return out;
  };
  for (std::size_t e = 0; e < d.value.size(); ++e)
    for (const auto& r : d.value[e]->relations)
      colim.relations.push_back({transport(e, r.lhs), transport(e, r.rhs)});
  for (auto [i, j] : d.poset.strict_pairs()) {
    const auto& psi = d.psi(i, j);
    for (Index ed = 0; ed < d.value[i]->graph.edges.size(); ++ed) {
      Word lhs{q.class_of[q.offset[i] + d.value[i]->graph.edges[ed].src],
               {{edge_of[i][ed], false}}};
      colim.relations.push_back({lhs, transport(j, psi.edge_map[ed])});
    }
  }

  ColimResult res;
  res.groupoid = share(std::move(colim));
  for (std::size_t e = 0; e < d.value.size(); ++e) {
    PresFunctor alpha;
    alpha.dom = d.value[e];
    alpha.cod = res.groupoid;
    for (Index v = 0; v < d.value[e]->graph.vertices.size(); ++v)
      alpha.vertex_map.push_back(q.class_of[q.offset[e] + v]);
    for (Index ed = 0; ed < d.value[e]->graph.edges.size(); ++ed)
      alpha.edge_map.push_back(
          Word{res.groupoid->graph.edges[edge_of[e][ed]].src, {{edge_of[e][ed], false}}});
    res.injections.push_back(std::move(alpha));
  }
  return res;
}

Word TcResult::lambda_word(Index i, Index j, Index x) const {
  Index e = lambda_edge.at({{i, j}, x});
  return Word{groupoid->graph.edges[e].src, {{e, false}}};
}

TcResult diagram_tc(const PresDiagram& d) {
  PresentedGroupoid tc;
  std::vector<std::size_t> voffset(d.value.size() + 1, 0);
  for (std::size_t e = 0; e < d.value.size(); ++e) {
    voffset[e + 1] = voffset[e] + d.value[e]->graph.vertices.size();
    for (Index v = 0; v < d.value[e]->graph.vertices.size(); ++v)
      tc.graph.add_vertex(d.poset.elements.name(static_cast<Index>(e)) + "." +
                          d.value[e]->graph.vertices.name(v));
  }
  std::vector<std::vector<Index>> edge_of(d.value.size());
  for (std::size_t e = 0; e < d.value.size(); ++e) {
    const auto& graph = d.value[e]->graph;
    edge_of[e].resize(graph.edges.size());
    for (Index ed = 0; ed < graph.edges.size(); ++ed)
      edge_of[e][ed] = tc.graph.add_edge(
          d.poset.elements.name(static_cast<Index>(e)) + "." + graph.edges[ed].name,
          static_cast<Index>(voffset[e] + graph.edges[ed].src),
          static_cast<Index>(voffset[e] + graph.edges[ed].tgt));
  }

  TcResult res;
  auto pairs = d.poset.strict_pairs();
  for (auto [i, j] : pairs) {
    const auto& psi = d.psi(i, j);
    for (Index x = 0; x < d.value[i]->graph.vertices.size(); ++x) {
      std::string name = "lam[" + d.poset.elements.name(i) + "," + d.poset.elements.name(j) +
                         "," + d.value[i]->graph.vertices.name(x) + "]";
      Index e = tc.graph.add_edge(name,
                                  static_cast<Index>(voffset[j] + psi.vertex_map[x]),
                                  static_cast<Index>(voffset[i] + x));
      res.lambda_edge[{{i, j}, x}] = e;
    }
  }

  auto transport = [&](std::size_t e, const Word& w) {
    Word out;
    out.base = static_cast<Index>(voffset[e] + w.base);
    for (Letter l : w.letters) out.letters.push_back({edge_of[e][l.edge], l.inv});
    return out;
  };
  for (std::size_t e = 0; e < d.value.size(); ++e)
    for (const auto& r : d.value[e]->relations)
      tc.relations.push_back({transport(e, r.lhs), transport(e, r.rhs)});

  // naturality: lam(i,j,src) ; e  ==  psi(e) ; lam(i,j,tgt)
  for (auto [i, j] : pairs) {
    const auto& psi = d.psi(i, j);
    for (Index ed = 0; ed < d.value[i]->graph.edges.size(); ++ed) {
      const auto& edge = d.value[i]->graph.edges[ed];
      Index lam_src = res.lambda_edge.at({{i, j}, edge.src});
      Index lam_tgt = res.lambda_edge.at({{i, j}, edge.tgt});
      Word lhs{tc.graph.edges[lam_src].src, {{lam_src, false}, {edge_of[i][ed], false}}};
      Word rhs = transport(j, psi.edge_map[ed]);
      rhs.letters.push_back({lam_tgt, false});
      tc.relations.push_back({lhs, rhs});
    }
  }
  // cocycle: lam(i,k,x) == lam(j,k,psi_ij(x)) ; lam(i,j,x)
  for (auto [i, j, k] : d.poset.strict_chains()) {
    const auto& psi_ij = d.psi(i, j);
    for (Index x = 0; x < d.value[i]->graph.vertices.size(); ++x) {
      Index lam_ik = res.lambda_edge.at({{i, k}, x});
      Index lam_jk = res.lambda_edge.at({{j, k}, psi_ij.vertex_map[x]});
      Index lam_ij = res.lambda_edge.at({{i, j}, x});
      Word lhs{tc.graph.edges[lam_ik].src, {{lam_ik, false}}};
      Word rhs{tc.graph.edges[lam_jk].src, {{lam_jk, false}, {lam_ij, false}}};
      tc.relations.push_back({lhs, rhs});
    }
  }

  res.groupoid = share(std::move(tc));
  for (std::size_t e = 0; e < d.value.size(); ++e) {
    PresFunctor alpha;
    alpha.dom = d.value[e];
    alpha.cod = res.groupoid;
    for (Index v = 0; v < d.value[e]->graph.vertices.size(); ++v)
      alpha.vertex_map.push_back(static_cast<Index>(voffset[e] + v));
    for (Index ed = 0; ed < d.value[e]->graph.edges.size(); ++ed)
      alpha.edge_map.push_back(Word{res.groupoid->graph.edges[edge_of[e][ed]].src,
                                    {{edge_of[e][ed], false}}});
    res.injections.push_back(std::move(alpha));
  }
  return res;
}

DeltaResult delta_comparison(const PresDiagram& d, std::uint64_t budget) {
  DeltaResult res;
  res.colim = diagram_colim(d);
  res.tc = diagram_tc(d);

  // Rebuild the object quotient to map tc objects onto colim classes.
  ObjectQuotient q = object_quotient(d);
  PresFunctor delta;
  delta.dom = res.tc.groupoid;
  delta.cod = res.colim.groupoid;
  // tc vertices enumerate (element, vertex) pairs in the same global order
  for (Index g = 0; g < q.class_of.size(); ++g) delta.vertex_map.push_back(q.class_of[g]);
  // value edges first (same construction order as diagram_colim), lambda
  // edges map to identities at their target class
  const auto& tcg = res.tc.groupoid->graph;
  for (Index e = 0; e < tcg.edges.size(); ++e) {
    const std::string& name = tcg.edges[e].name;
    Index ce = res.colim.groupoid->graph.edge_names.find(name);
    if (ce != kNoIndex) {
      delta.edge_map.push_back(
          Word{res.colim.groupoid->graph.edges[ce].src, {{ce, false}}});
    } else {
      delta.edge_map.push_back(Word{delta.vertex_map[tcg.edges[e].tgt], {}});
    }
  }
  res.comparison = std::move(delta);
  res.verdict = are_equivalent(*res.tc.groupoid, *res.colim.groupoid, budget);
  return res;
}

// -------------------------------------------------------- filtered colimits ----

ConcreteGroupoid filtered_colim(const ConcreteDiagram& d) {
  if (d.variance != Variance::Covariant)
    throw std::invalid_argument("filtered_colim: diagram must be covariant");
  if (!d.poset.is_filtered())
    throw std::invalid_argument("filtered_colim: poset is not filtered");
  const std::size_t n = d.poset.elements.size();
  if (n == 0) return {};
  Index t = d.poset.top();
  if (t == kNoIndex) throw std::logic_error("finite filtered poset without top");

  std::vector<std::size_t> ooff(n + 1, 0), moff(n + 1, 0);
  for (std::size_t e = 0; e < n; ++e) {
    ooff[e + 1] = ooff[e] + d.value[e]->object_count();
    moff[e + 1] = moff[e] + d.value[e]->morphism_count();
  }
  UnionFind ouf(ooff[n]), muf(moff[n]);
  for (auto [i, j] : d.poset.strict_pairs()) {
    const auto& psi = d.psi(i, j);
    for (Index x = 0; x < d.value[i]->object_count(); ++x)
      ouf.unite(static_cast<Index>(ooff[i] + x),
                static_cast<Index>(ooff[j] + psi.object_map[x]));
    for (Index m = 0; m < d.value[i]->morphism_count(); ++m)
      muf.unite(static_cast<Index>(moff[i] + m),
                static_cast<Index>(moff[j] + psi.morphism_map[m]));
  }

  auto element_of = [&](const std::vector<std::size_t>& off, Index g) {
    std::size_t e = 0;
    while (off[e + 1] <= g) ++e;
    return e;
  };
  auto push_mor = [&](std::size_t e, Index m) {
    return e == t ? m : d.psi(static_cast<Index>(e), t).morphism_map[m];
  };

  ConcreteGroupoid g;
  std::vector<Index> oclass(ooff[n], kNoIndex), mclass(moff[n], kNoIndex);
  std::vector<Index> orep, mrep;
  for (Index x = 0; x < ooff[n]; ++x) {
    Index r = ouf.find(x);
    if (oclass[r] == kNoIndex) {
      oclass[r] = static_cast<Index>(orep.size());
      orep.push_back(r);
      std::size_t e = element_of(ooff, r);
      g.add_object(d.poset.elements.name(static_cast<Index>(e)) + "." +
                   d.value[e]->objects.name(static_cast<Index>(r - ooff[e])));
    }
    oclass[x] = oclass[r];
  }
  for (Index m = 0; m < moff[n]; ++m) {
    Index r = muf.find(m);
    if (mclass[r] == kNoIndex) {
      mclass[r] = static_cast<Index>(mrep.size());
      mrep.push_back(r);
      std::size_t e = element_of(moff, r);
      Index local = static_cast<Index>(r - moff[e]);
      g.add_morphism(d.poset.elements.name(static_cast<Index>(e)) + "." +
                         d.value[e]->morphisms.name(local),
                     oclass[ooff[e] + d.value[e]->src[local]],
                     oclass[ooff[e] + d.value[e]->tgt[local]]);
    }
    mclass[m] = mclass[r];
  }
  for (Index c = 0; c < orep.size(); ++c) {
    std::size_t e = element_of(ooff, orep[c]);
    g.set_identity(c, mclass[moff[e] + d.value[e]->identity[orep[c] - ooff[e]]]);
  }
  for (Index c = 0; c < mrep.size(); ++c) {
    std::size_t e = element_of(moff, mrep[c]);
    g.set_inverse(c, mclass[moff[e] + d.value[e]->inverse[mrep[c] - moff[e]]]);
  }
  const auto& top = *d.value[t];
  for (Index c1 = 0; c1 < mrep.size(); ++c1) {
    std::size_t e1 = element_of(moff, mrep[c1]);
    Index f = push_mor(e1, static_cast<Index>(mrep[c1] - moff[e1]));
    for (Index c2 = 0; c2 < mrep.size(); ++c2) {
      if (g.tgt[c1] != g.src[c2]) continue;
      std::size_t e2 = element_of(moff, mrep[c2]);
      Index h = push_mor(e2, static_cast<Index>(mrep[c2] - moff[e2]));
      g.set_compose(c1, c2, mclass[moff[t] + top.compose(f, h)]);
    }
  }
  return g;
}

// -------------------------------------------------------------- deformation ----

DeformResult deform(const ConcreteFunctor& i1, const ConcreteFunctor& i2,
                    const ConcreteFunctor& j1, const ConcreteFunctor& j2,
                    const NatIso& lambda) {
  if (!same_groupoid(i1.dom, i2.dom) || !same_groupoid(i1.cod, j1.dom) ||
      !same_groupoid(i2.cod, j2.dom) || !same_groupoid(j1.cod, j2.cod))
    throw std::invalid_argument("deform: square shape mismatch");
  if (!same_functor(lambda.source, compose(i1, j1)) ||
      !same_functor(lambda.target, compose(i2, j2)))
    throw std::invalid_argument("deform: lambda is not j1.i1 => j2.i2");
  if (!injective_on_objects(i1))
    throw std::invalid_argument("deform: i1 is not injective on objects");

  const auto& A = *i1.dom;
  const auto& B = *j1.dom;
  const auto& D = *j1.cod;
  ConcreteFunctor t = compose(i2, j2);  // j2.i2

  std::vector<Index> obj_pre(B.object_count(), kNoIndex);
  for (Index a = 0; a < A.object_count(); ++a) obj_pre[i1.object_map[a]] = a;
  std::vector<std::vector<Index>> mor_pre(B.morphism_count());
  for (Index m = 0; m < A.morphism_count(); ++m) mor_pre[i1.morphism_map[m]].push_back(m);

  ConcreteFunctor j1p;
  j1p.dom = j1.dom;
  j1p.cod = j1.cod;
  for (Index b = 0; b < B.object_count(); ++b)
    j1p.object_map.push_back(obj_pre[b] == kNoIndex ? j1.object_map[b]
                                                    : t.object_map[obj_pre[b]]);
  for (Index beta = 0; beta < B.morphism_count(); ++beta) {
    Index a1 = obj_pre[B.src[beta]];
    Index a2 = obj_pre[B.tgt[beta]];
    Index jb = j1.morphism_map[beta];
    Index image;
    if (a1 != kNoIndex && a2 != kNoIndex) {
      if (!mor_pre[beta].empty()) {
        // Case 3: beta = i1(alpha); independence of the choice re-verified
        image = t.morphism_map[mor_pre[beta][0]];
        for (Index alpha : mor_pre[beta])
          if (t.morphism_map[alpha] != image)
            throw std::logic_error("deform: case 3 image depends on the preimage");
      } else {
        // Case 2
        image = D.compose(D.compose(D.inverse[lambda.component[a1]], jb),
                          lambda.component[a2]);
      }
    } else if (a1 != kNoIndex) {
      // Case 1
      image = D.compose(D.inverse[lambda.component[a1]], jb);
    } else if (a2 != kNoIndex) {
      // Case 4
      image = D.compose(jb, lambda.component[a2]);
    } else {
      // Case 5
      image = jb;
    }
    j1p.morphism_map.push_back(image);
  }

  NatIso kappa;
  kappa.source = j1;
  kappa.target = j1p;
  for (Index b = 0; b < B.object_count(); ++b)
    kappa.component.push_back(obj_pre[b] == kNoIndex ? D.identity[j1.object_map[b]]
                                                     : lambda.component[obj_pre[b]]);
  return {std::move(j1p), std::move(kappa)};
}

}  // namespace grpd

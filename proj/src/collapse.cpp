#include "grpd/collapse.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>

namespace grpd {

VertexGroupPresentation tree_collapse(const PresentedGroupoid& p, Index basepoint) {
  const auto& g = p.graph;
  const std::size_t nv = g.vertices.size();
  if (basepoint >= nv) throw std::invalid_argument("tree_collapse: basepoint out of range");

  // Breadth-first spanning tree; incident edges scanned in declaration order.
  std::vector<bool> visited(nv, false);
  std::vector<bool> tree_edge(g.edges.size(), false);
  std::deque<Index> queue{basepoint};
  visited[basepoint] = true;
  while (!queue.empty()) {
    Index u = queue.front();
    queue.pop_front();
    for (Index e = 0; e < g.edges.size(); ++e) {
      if (g.edges[e].src == u && !visited[g.edges[e].tgt]) {
        visited[g.edges[e].tgt] = true;
        tree_edge[e] = true;
        queue.push_back(g.edges[e].tgt);
      } else if (g.edges[e].tgt == u && !visited[g.edges[e].src]) {
        visited[g.edges[e].src] = true;
        tree_edge[e] = true;
        queue.push_back(g.edges[e].src);
      }
    }
  }
  for (Index v = 0; v < nv; ++v)
    if (!visited[v])
      throw std::invalid_argument("tree_collapse: input is not connected (vertex " +
                                  g.vertices.name(v) + " unreachable)");

  VertexGroupPresentation out;
  std::vector<int> gen_of(g.edges.size(), 0);  // 1-based generator id, 0 for tree edges
  for (Index e = 0; e < g.edges.size(); ++e) {
    if (tree_edge[e]) continue;
    gen_of[e] = static_cast<int>(out.generators.size()) + 1;
    out.generators.push_back(g.edges[e].name);
  }

  auto rewrite = [&](const Word& w, std::vector<int>& relator, bool inverted) {
    if (!inverted) {
      for (Letter l : w.letters)
        if (gen_of[l.edge]) relator.push_back(l.inv ? -gen_of[l.edge] : gen_of[l.edge]);
    } else {
      for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        if (gen_of[it->edge]) relator.push_back(it->inv ? gen_of[it->edge] : -gen_of[it->edge]);
    }
  };
  for (const auto& r : p.relations) {
    std::vector<int> relator;
    rewrite(r.lhs, relator, false);
    rewrite(r.rhs, relator, true);
    out.relators.push_back(std::move(relator));
  }
  return out;
}

std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<long long> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Pivot: nonzero entry of least magnitude in the remaining block.
    std::size_t pi = t, pj = t;
    long long best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (best == 0 || std::llabs(m[i][j]) < std::llabs(best))) {
          best = m[i][j];
          pi = i;
          pj = j;
        }
    if (best == 0) break;
    std::swap(m[t], m[pi]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        long long q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {  // remainder became the smaller pivot
          std::swap(m[t], m[i]);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        long long q = m[t][j] / m[t][t];
        for (std::size_t i = 0; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][j]);
          dirty = true;
        }
      }
    }
    // Pivot must divide the rest of the block for the divisibility chain.
    bool fixed = false;
    for (std::size_t i = t + 1; i < rows && !fixed; ++i)
      for (std::size_t j = t + 1; j < cols && !fixed; ++j)
        if (m[i][j] % m[t][t] != 0) {
          for (std::size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
          fixed = true;
        }
    if (fixed) continue;  // redo this pivot
    diag.push_back(std::llabs(m[t][t]));
    ++t;
  }
  diag.resize(std::min(rows, cols), 0);
  return diag;
}

AbelianInvariant abelian_invariants(const VertexGroupPresentation& v) {
  const std::size_t gens = v.generators.size();
  std::vector<std::vector<long long>> m(v.relators.size(), std::vector<long long>(gens, 0));
  for (std::size_t i = 0; i < v.relators.size(); ++i)
    for (int s : v.relators[i]) {
      std::size_t g = static_cast<std::size_t>(std::abs(s)) - 1;
      m[i][g] += s > 0 ? 1 : -1;
    }
  AbelianInvariant inv;
  auto diag = smith_diagonal(std::move(m));
  long long rank = 0;
  for (long long d : diag) {
    if (d == 0) continue;
    ++rank;
    if (d >= 2) inv.torsion.push_back(d);
  }
  inv.free_rank = static_cast<long long>(gens) - rank;
  return inv;
}

namespace {

/// HLT-style Todd-Coxeter state over the trivial subgroup.
class CosetTable {
public:
  CosetTable(std::size_t ngens, std::uint64_t budget) : ncols_(2 * ngens), budget_(budget) {
    table_.push_back({});                              // index 0 unused
    table_.push_back(std::vector<Index>(ncols_, 0));   // coset 1
    parent_ = {0, 1};
  }

  static std::size_t col(int signed_gen) {
    std::size_t g = static_cast<std::size_t>(std::abs(signed_gen)) - 1;
    return 2 * g + (signed_gen < 0 ? 1 : 0);
  }
  static std::size_t inv_col(std::size_t c) { return c ^ 1u; }

  Index rep(Index c) const {
    while (parent_[c] != c) {
      parent_[c] = parent_[parent_[c]];
      c = parent_[c];
    }
    return c;
  }
  bool live(Index c) const { return rep(c) == c; }

  Index lookup(Index c, std::size_t col) const {
    Index d = table_[c][col];
    return d ? rep(d) : 0;
  }

  bool set(Index a, std::size_t col, Index b) {
    table_[a][col] = b;
    table_[b][inv_col(col)] = a;
    cells_ += 2;
    return cells_ <= budget_;
  }

  bool define(Index c, std::size_t col) {
    table_.push_back(std::vector<Index>(ncols_, 0));
    parent_.push_back(static_cast<Index>(table_.size() - 1));
    return set(c, col, static_cast<Index>(table_.size() - 1));
  }

  void merge(Index a, Index b, std::deque<Index>& dead) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    dead.push_back(b);
  }

  bool coincidence(Index a, Index b) {
    std::deque<Index> dead;
    merge(a, b, dead);
    while (!dead.empty()) {
      Index d = dead.front();
      dead.pop_front();
      for (std::size_t c = 0; c < ncols_; ++c) {
        Index f = table_[d][c];
        if (!f) continue;
        table_[d][c] = 0;
        Index mu = rep(d), nu = rep(f);
        if (Index ex = lookup(mu, c)) {
          merge(nu, ex, dead);
        } else if (Index ex2 = lookup(nu, inv_col(c))) {
          merge(mu, ex2, dead);
        } else {
          if (!set(mu, c, nu)) return false;
        }
      }
    }
    return true;
  }

  /// Scan-and-fill one relator at a coset; false on budget exhaustion.
  bool scan_and_fill(Index c, const std::vector<std::size_t>& word) {
    if (word.empty()) return true;
    for (;;) {
      if (!live(c)) return true;
      c = rep(c);
      std::size_t i = 0, j = word.size();
      Index f = c, b = c;
      while (i < j) {
        Index nx = lookup(f, word[i]);
        if (!nx) break;
        f = nx;
        ++i;
      }
      while (j > i) {
        Index nx = lookup(b, inv_col(word[j - 1]));
        if (!nx) break;
        b = nx;
        --j;
      }
      if (i == j) {  // closed; endpoints must agree
        if (f != b && !coincidence(f, b)) return false;
        return true;
      }
      if (i + 1 == j) {  // deduction
        if (!set(f, word[i], b)) return false;
        return true;
      }
      if (!define(f, word[i])) return false;
    }
  }

  std::size_t size() const { return table_.size(); }
  std::size_t ncols() const { return ncols_; }
  std::uint64_t cells_used() const { return cells_; }

private:
  std::size_t ncols_;
  std::uint64_t budget_;
  std::uint64_t cells_ = 0;
  std::vector<std::vector<Index>> table_;
  mutable std::vector<Index> parent_;
};

}  // namespace

std::optional<GroupTable> enumerate_group(const VertexGroupPresentation& v,
                                          std::uint64_t budget, std::uint64_t* cells_used) {
  const std::size_t ngens = v.generators.size();
  if (cells_used) *cells_used = 0;
  if (ngens == 0) {
    GroupTable t;
    t.order = 1;
    t.mult = {{0}};
    t.inv = {0};
    return t;
  }
  CosetTable ct(ngens, budget);
  struct CellReport {  // report consumption on every exit path
    const CosetTable& ct;
    std::uint64_t* out;
    ~CellReport() {
      if (out) *out = ct.cells_used();
    }
  } reporter{ct, cells_used};
  std::vector<std::vector<std::size_t>> rel_cols;
  for (const auto& r : v.relators) {
    std::vector<std::size_t> w;
    for (int s : r) w.push_back(CosetTable::col(s));
    if (!w.empty()) rel_cols.push_back(std::move(w));
  }

  for (Index c = 1; c < ct.size(); ++c) {
    if (!ct.live(c)) continue;
    for (const auto& w : rel_cols) {
      if (!ct.scan_and_fill(c, w)) return std::nullopt;
      if (!ct.live(c)) break;
    }
    if (!ct.live(c)) continue;
    for (std::size_t col = 0; col < ct.ncols(); ++col) {
      if (!ct.live(c)) break;
      if (!ct.lookup(ct.rep(c), col)) {
        if (!ct.define(ct.rep(c), col)) return std::nullopt;
      }
    }
  }

  // Compact live cosets; coset 1 becomes the neutral element 0.
  std::vector<Index> number(ct.size(), kNoIndex);
  std::vector<Index> live;
  for (Index c = 1; c < ct.size(); ++c)
    if (ct.live(c)) {
      number[c] = static_cast<Index>(live.size());
      live.push_back(c);
    }
  const std::size_t n = live.size();

  // Representative words via breadth-first search from the neutral coset.
  std::vector<std::vector<std::size_t>> word(ct.size());
  std::vector<bool> seen(ct.size(), false);
  std::deque<Index> q{ct.rep(1)};
  seen[ct.rep(1)] = true;
  while (!q.empty()) {
    Index c = q.front();
    q.pop_front();
    for (std::size_t col = 0; col < ct.ncols(); ++col) {
      Index d = ct.lookup(c, col);
      if (!d || seen[d]) continue;
      seen[d] = true;
      word[d] = word[c];
      word[d].push_back(col);
      q.push_back(d);
    }
  }

  GroupTable t;
  t.order = n;
  t.mult.assign(n, std::vector<Index>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Index c = live[a];
      for (std::size_t col : word[live[b]]) c = ct.lookup(c, col);
      t.mult[a][b] = number[c];
    }
  t.inv.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (t.mult[a][b] == 0) t.inv[a] = static_cast<Index>(b);
  t.generator_images.reserve(ngens);
  for (std::size_t g = 0; g < ngens; ++g)
    t.generator_images.push_back(number[ct.lookup(ct.rep(1), 2 * g)]);
  return t;
}

std::optional<Concretization> concretize(PresentedPtr p, std::uint64_t budget) {
  const auto& graph = p->graph;
  auto comps = components(*p);

  // Restrict the presentation to each component and enumerate its vertex group.
  ConcreteGroupoid g;
  PresToConcFunctor functor;
  functor.dom = p;
  functor.vertex_map.assign(graph.vertices.size(), kNoIndex);
  functor.edge_map.assign(graph.edges.size(), kNoIndex);

  for (Index v = 0; v < graph.vertices.size(); ++v) g.add_object(graph.vertices.name(v));
  for (Index v = 0; v < graph.vertices.size(); ++v) functor.vertex_map[v] = v;

  std::uint64_t remaining = budget;
  for (const auto& comp : comps) {
    ComponentRestriction rc = restrict_component(*p, comp);
    VertexGroupPresentation vgp = tree_collapse(rc.sub, 0);
    std::uint64_t spent = 0;
    auto group = enumerate_group(vgp, remaining, &spent);
    if (!group) return std::nullopt;
    remaining = spent >= remaining ? 0 : remaining - spent;

    // Component groupoid: hom(u, v) is a torsor over the vertex group.
    const std::size_t n = group->order;
    std::vector<std::vector<std::vector<Index>>> morph(
        comp.size(), std::vector<std::vector<Index>>(comp.size(), std::vector<Index>(n)));
    for (std::size_t ui = 0; ui < comp.size(); ++ui)
      for (std::size_t vi = 0; vi < comp.size(); ++vi)
        for (std::size_t k = 0; k < n; ++k) {
          std::string name = "h[" + graph.vertices.name(comp[ui]) + ">" +
                             graph.vertices.name(comp[vi]) + "#" + std::to_string(k) + "]";
          morph[ui][vi][k] = g.add_morphism(name, comp[ui], comp[vi]);
        }
    for (std::size_t ui = 0; ui < comp.size(); ++ui) {
      g.set_identity(comp[ui], morph[ui][ui][0]);
      for (std::size_t vi = 0; vi < comp.size(); ++vi)
        for (std::size_t k = 0; k < n; ++k) {
          g.set_inverse(morph[ui][vi][k], morph[vi][ui][group->inv[k]]);
          for (std::size_t wi = 0; wi < comp.size(); ++wi)
            for (std::size_t k2 = 0; k2 < n; ++k2)
              g.set_compose(morph[ui][vi][k], morph[vi][wi][k2],
                            morph[ui][wi][group->mult[k][k2]]);
        }
    }

    // Tree edges carry the neutral element, non-tree edges their generator.
    std::vector<Index> comp_pos(graph.vertices.size(), kNoIndex);
    for (std::size_t i = 0; i < comp.size(); ++i) comp_pos[comp[i]] = static_cast<Index>(i);
    std::unordered_map<std::string, std::size_t> gen_index;
    for (std::size_t k = 0; k < vgp.generators.size(); ++k) gen_index[vgp.generators[k]] = k;
    for (Index parent_edge : rc.edge_of) {
      const auto& ed = graph.edges[parent_edge];
      auto it = gen_index.find(ed.name);
      Index elem = it == gen_index.end() ? 0 : group->generator_images[it->second];
      functor.edge_map[parent_edge] = morph[comp_pos[ed.src]][comp_pos[ed.tgt]][elem];
    }
  }

  Concretization out;
  out.groupoid = share(std::move(g));
  functor.cod = out.groupoid;
  out.from_presentation = std::move(functor);
  return out;
}

}  // namespace grpd

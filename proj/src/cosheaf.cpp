#include "grpd/cosheaf.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace grpd {

SetCosheafData pi0_cosheaf() {
  SetCosheafData f;
  f.sets = [](const Subcomplex& s) { return pi0(s).component_names; };
  f.induced = [](const Subcomplex& sub, const Subcomplex& super) {
    Pi0 a = pi0(sub);
    Pi0 b = pi0(super);
    std::vector<Index> out(a.size(), kNoIndex);
    for (Index v = 0; v < a.vertex_component.size(); ++v)
      if (a.vertex_component[v] != kNoIndex)
        out[a.vertex_component[v]] = b.vertex_component[v];
    return out;
  };
  return f;
}

CosheafReport check_cosheaf_sets(const SetCosheafData& f, const Subcomplex& u,
                                 const std::vector<Subcomplex>& cover) {
  for (const auto& m : cover)
    if (m.parent != u.parent)
      throw std::invalid_argument("check_cosheaf_sets: cover member has a different parent");
  Subcomplex all = u;
  if (!cover.empty()) {
    all = cover[0];
    for (std::size_t i = 1; i < cover.size(); ++i) all = unite(all, cover[i]);
  }
  if (!cover.empty() && !subcomplex_equal(all, u))
    throw std::invalid_argument("check_cosheaf_sets: members do not cover u");

  CosheafReport rep;
  std::vector<std::vector<std::string>> piece_sets;
  std::vector<std::size_t> offset{0};
  for (const auto& m : cover) {
    piece_sets.push_back(f.sets(m));
    offset.push_back(offset.back() + piece_sets.back().size());
  }
  UnionFind uf(offset.back());
  for (std::size_t i = 0; i < cover.size(); ++i)
    for (std::size_t j = 0; j < cover.size(); ++j) {
      Subcomplex w = intersect(cover[i], cover[j]);
      auto ws = f.sets(w);
      auto b0 = f.induced(w, cover[i]);
      auto b1 = f.induced(w, cover[j]);
      for (std::size_t x = 0; x < ws.size(); ++x)
        uf.unite(static_cast<Index>(offset[i] + b0[x]),
                 static_cast<Index>(offset[j] + b1[x]));
    }

  auto value = f.sets(u);
  rep.value_size = value.size();

  // canonical map a on each summand
  std::vector<Index> a(offset.back(), kNoIndex);
  for (std::size_t i = 0; i < cover.size(); ++i) {
    auto ai = f.induced(cover[i], u);
    for (std::size_t x = 0; x < ai.size(); ++x) a[offset[i] + x] = ai[x];
  }

  std::unordered_map<Index, Index> class_image;  // class rep -> element of f(u)
  std::size_t classes = 0;
  for (Index x = 0; x < offset.back(); ++x) {
    Index r = uf.find(x);
    auto it = class_image.find(r);
    if (it == class_image.end()) {
      ++classes;
      class_image.emplace(r, a[x]);
    } else if (it->second != a[x]) {
      rep.coequalizer_size = classes;
      rep.witness = "canonical map not constant on the class of element " + std::to_string(x);
      return rep;
    }
  }
  rep.coequalizer_size = classes;

  std::vector<int> hits(value.size(), 0);
  for (const auto& [r, img] : class_image) ++hits[img];
  for (std::size_t y = 0; y < value.size(); ++y) {
    if (hits[y] == 0) {
      rep.witness = "element " + value[y] + " of f(u) is not reached";
      return rep;
    }
    if (hits[y] > 1) {
      rep.witness = "element " + value[y] + " of f(u) has " + std::to_string(hits[y]) +
                    " preimage classes";
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

namespace {

std::vector<Subcomplex> component_cover(const Subcomplex& u) {
  Pi0 p = pi0(u);
  const auto& c = *u.parent;
  std::vector<Subcomplex> cover(p.size());
  for (auto& s : cover) {
    s.parent = u.parent;
    s.vertices.assign(c.skeleton.vertices.size(), false);
    s.edges.assign(c.skeleton.edges.size(), false);
    s.cells.assign(c.cells.size(), false);
  }
  for (Index v = 0; v < c.skeleton.vertices.size(); ++v)
    if (u.vertices[v] && p.vertex_component[v] != kNoIndex)
      cover[p.vertex_component[v]].vertices[v] = true;
  for (Index e = 0; e < c.skeleton.edges.size(); ++e)
    if (u.edges[e]) cover[p.vertex_component[c.skeleton.edges[e].src]].edges[e] = true;
  for (Index cl = 0; cl < c.cells.size(); ++cl)
    if (u.cells[cl])
      cover[p.vertex_component[c.cells[cl].boundary.base]].cells[cl] = true;
  return cover;
}

}  // namespace

std::vector<Index> terminal_cosheaf_map(const SetCosheafData& f, const Subcomplex& u) {
  auto cover = component_cover(u);
  if (!cover.empty()) {
    auto rep = check_cosheaf_sets(f, u, cover);
    if (!rep.pass)
      throw std::invalid_argument("terminal_cosheaf_map: not a cosheaf on the component cover (" +
                                  rep.witness + ")");
  }
  auto value = f.sets(u);
  std::vector<Index> out(value.size(), kNoIndex);
  for (std::size_t k = 0; k < cover.size(); ++k) {
    auto ak = f.induced(cover[k], u);
    for (Index img : ak) {
      if (out[img] != kNoIndex && out[img] != k)
        throw std::invalid_argument("terminal_cosheaf_map: element received two components");
      out[img] = static_cast<Index>(k);
    }
  }
  for (std::size_t y = 0; y < out.size(); ++y)
    if (out[y] == kNoIndex)
      throw std::invalid_argument("terminal_cosheaf_map: element " + value[y] +
                                  " not covered (f is not a cosheaf)");
  return out;
}

// ------------------------------------------------------------- descent data ----

namespace {

/// Shared scaffolding for the sh/st checks: hom categories of the whole
/// complex and of every nerve piece, with restriction helpers.
struct Descent {
  const CoverNerve& n;
  GroupoidPtr g;
  PresentedPtr whole_pres;
  HomCategory whole;
  std::vector<Index> elems;  // nerve elements included, in poset index order
  std::vector<HomCategory> cat;
  std::vector<PresFunctor> incl_whole;
  std::vector<std::size_t> singles;              // positions with |S| == 1
  std::vector<std::vector<std::size_t>> parent_singles;  // per position

  Descent(const CoverNerve& nerve, GroupoidPtr battery, std::size_t max_depth,
          std::uint64_t cap)
      : n(nerve), g(std::move(battery)) {
    whole_pres = share(pi1(*n.parent));
    whole = hom_category(whole_pres, g, cap);
    for (Index s = 0; s < n.poset.elements.size(); ++s)
      if (n.piece_index[s].size() <= max_depth) elems.push_back(s);
    Subcomplex full = full_subcomplex(n.parent);
    for (std::size_t p = 0; p < elems.size(); ++p) {
      cat.push_back(hom_category(n.diagram.value[elems[p]], g, cap));
      incl_whole.push_back(
          inclusion_functor(n.diagram.value[elems[p]], whole_pres, n.piece[elems[p]], full));
      if (n.piece_index[elems[p]].size() == 1) singles.push_back(p);
    }
    parent_singles.resize(elems.size());
    for (std::size_t p = 0; p < elems.size(); ++p)
      for (std::size_t t : singles)
        if (p != t && n.poset.leq[elems[p]][elems[t]]) parent_singles[p].push_back(t);
  }

  // F-side restriction along the nerve transition for positions p <= t.
  Index restrict_obj(std::size_t p, std::size_t t, Index obj) const {
    return restrict_object(cat[p], cat[t], n.diagram.psi(elems[p], elems[t]), obj);
  }
  std::vector<Index> restrict_comp(std::size_t p, std::size_t t,
                                   const std::vector<Index>& comp) const {
    return restrict_components(cat[p], n.diagram.psi(elems[p], elems[t]), comp);
  }
  Index restrict_whole_obj(std::size_t p, Index chi) const {
    return restrict_object(cat[p], whole, incl_whole[p], chi);
  }
  std::vector<Index> restrict_whole_comp(std::size_t p, const std::vector<Index>& comp) const {
    return restrict_components(cat[p], incl_whole[p], comp);
  }

  std::vector<std::pair<std::size_t, std::size_t>> strict_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < elems.size(); ++a)
      for (std::size_t b = 0; b < elems.size(); ++b)
        if (a != b && n.poset.leq[elems[a]][elems[b]]) out.push_back({a, b});
    return out;
  }

  std::string cover_desc() const {
    return std::to_string(n.cover.size()) + "-member cover of " +
           (n.parent->skeleton.vertices.size()
                ? n.parent->skeleton.vertices.name(0) + "..."
                : std::string("empty"));
  }
};

/// Odometer over per-position choices.
bool advance(std::vector<Index>& pick, const std::vector<std::size_t>& limit) {
  std::size_t i = pick.size();
  while (i > 0) {
    --i;
    if (++pick[i] < limit[i]) return true;
    pick[i] = 0;
  }
  return false;
}

}  // namespace

ShStReport check_sh(const CoverNerve& nerve, GroupoidPtr g, std::uint64_t budget) {
  ShStReport rep;
  rep.condition = "sh(" + std::to_string(nerve.cover.size()) + ")";
  try {
    Descent d(nerve, g, 2, budget);
    rep.cover = d.cover_desc();
    const auto& singles = d.singles;

    // positions of depth-2 elements, each derived from its parent singles
    std::vector<std::size_t> pairs;
    for (std::size_t p = 0; p < d.elems.size(); ++p)
      if (nerve.piece_index[d.elems[p]].size() == 2) pairs.push_back(p);

    // enumerate compatible families over the singles
    std::vector<std::size_t> limits;
    std::uint64_t product = 1;
    for (std::size_t s : singles) {
      limits.push_back(d.cat[s].objects.size());
      product *= std::max<std::uint64_t>(1, d.cat[s].objects.size());
      if (product > budget) {
        rep.verdict = Verdict::Unknown;
        rep.witness = "object enumeration budget exceeded";
        return rep;
      }
    }
    std::set<std::vector<Index>> lim_keys;
    std::vector<Index> pick(singles.size(), 0);
    if (singles.empty()) lim_keys.insert({});  // empty limit is terminal
    if (!singles.empty()) {
      do {
        bool ok = true;
        for (std::size_t p : pairs) {
          const auto& ps = d.parent_singles[p];
          Index derived = kNoIndex;
          for (std::size_t k = 0; k < ps.size() && ok; ++k) {
            std::size_t spos = std::find(singles.begin(), singles.end(), ps[k]) - singles.begin();
            Index r = d.restrict_obj(p, ps[k], pick[spos]);
            if (derived == kNoIndex)
              derived = r;
            else
              ok = derived == r;
          }
        }
        if (ok) lim_keys.insert(pick);
      } while (advance(pick, limits));
    }

    // object bijectivity of the comparison
    std::set<std::vector<Index>> seen;
    for (Index chi = 0; chi < d.whole.objects.size(); ++chi) {
      std::vector<Index> key;
      for (std::size_t s : singles) key.push_back(d.restrict_whole_obj(s, chi));
      if (!seen.insert(key).second) {
        rep.verdict = Verdict::No;
        rep.witness = "comparison not injective on objects at functor " + std::to_string(chi);
        return rep;
      }
      if (!lim_keys.count(key)) {
        rep.verdict = Verdict::No;
        rep.witness = "restriction family of functor " + std::to_string(chi) +
                      " violates compatibility";
        return rep;
      }
    }
    if (seen.size() != lim_keys.size()) {
      rep.verdict = Verdict::No;
      rep.witness = "comparison not surjective on objects (" + std::to_string(seen.size()) +
                    " of " + std::to_string(lim_keys.size()) + ")";
      return rep;
    }

    // hom-set bijectivity
    for (Index c1 = 0; c1 < d.whole.objects.size(); ++c1)
      for (Index c2 = 0; c2 < d.whole.objects.size(); ++c2) {
        auto homs = d.whole.homs(c1, c2);
        std::set<std::vector<std::vector<Index>>> images;
        for (const auto& mu : homs) {
          std::vector<std::vector<Index>> key;
          for (std::size_t s : singles) key.push_back(d.restrict_whole_comp(s, mu));
          if (!images.insert(key).second) {
            rep.verdict = Verdict::No;
            rep.witness = "comparison not faithful between functors " + std::to_string(c1) +
                          " and " + std::to_string(c2);
            return rep;
          }
        }
        // enumerate lim homs between the images
        std::vector<Index> x1, x2;
        for (std::size_t s : singles) {
          x1.push_back(d.restrict_whole_obj(s, c1));
          x2.push_back(d.restrict_whole_obj(s, c2));
        }
        std::vector<std::vector<std::vector<Index>>> hs;
        std::vector<std::size_t> hlim;
        for (std::size_t k = 0; k < singles.size(); ++k) {
          hs.push_back(d.cat[singles[k]].homs(x1[k], x2[k]));
          hlim.push_back(hs.back().size());
        }
        std::size_t lim_count = singles.empty() ? 1 : 0;
        if (std::all_of(hlim.begin(), hlim.end(), [](std::size_t v) { return v > 0; }) &&
            !singles.empty()) {
          std::vector<Index> hp(singles.size(), 0);
          do {
            bool ok = true;
            for (std::size_t p : pairs) {
              const auto& ps = d.parent_singles[p];
              std::vector<Index> derived;
              for (std::size_t k = 0; k < ps.size() && ok; ++k) {
                std::size_t spos =
                    std::find(singles.begin(), singles.end(), ps[k]) - singles.begin();
                auto r = d.restrict_comp(p, ps[k], hs[spos][hp[spos]]);
                if (derived.empty())
                  derived = r;
                else
                  ok = derived == r;
              }
            }
            if (ok) ++lim_count;
          } while (advance(hp, hlim));
        }
        if (lim_count != homs.size()) {
          rep.verdict = Verdict::No;
          rep.witness = "comparison not full between functors " + std::to_string(c1) + " and " +
                        std::to_string(c2) + " (" + std::to_string(homs.size()) + " vs " +
                        std::to_string(lim_count) + ")";
          return rep;
        }
      }
    rep.verdict = Verdict::Yes;
  } catch (const ResourceLimitError& e) {
    rep.verdict = Verdict::Unknown;
    rep.witness = e.what();
  }
  return rep;
}

namespace {

struct TlDescentObject {
  std::vector<Index> x;                    // per position
  std::vector<std::vector<Index>> xi;      // per strict pair
};

}  // namespace

ShStReport check_st(const CoverNerve& nerve, GroupoidPtr g, std::uint64_t budget) {
  ShStReport rep;
  rep.condition = "st(" + std::to_string(nerve.cover.size()) + ")";
  try {
    Descent d(nerve, g, 3, budget);
    rep.cover = d.cover_desc();
    const auto& cod = *g;
    auto pairs = d.strict_pairs();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_pos;
    for (std::size_t p = 0; p < pairs.size(); ++p) pair_pos[pairs[p]] = p;

    struct Chain {
      std::size_t ij, jk, ik;
      std::size_t i, j;
    };
    std::vector<std::vector<Chain>> chain_at(pairs.size());
    for (std::size_t a = 0; a < d.elems.size(); ++a)
      for (std::size_t b = 0; b < d.elems.size(); ++b) {
        if (a == b || !d.n.poset.leq[d.elems[a]][d.elems[b]]) continue;
        for (std::size_t c = 0; c < d.elems.size(); ++c) {
          if (b == c || c == a || !d.n.poset.leq[d.elems[b]][d.elems[c]]) continue;
          Chain ch{pair_pos.at({a, b}), pair_pos.at({b, c}), pair_pos.at({a, c}), a, b};
          chain_at[std::max({ch.ij, ch.jk, ch.ik})].push_back(ch);
        }
      }

    auto pointwise = [&](const std::vector<Index>& f, const std::vector<Index>& h) {
      std::vector<Index> out(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) out[i] = cod.compose(f[i], h[i]);
      return out;
    };
    auto pointwise_inv = [&](const std::vector<Index>& f) {
      std::vector<Index> out(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) out[i] = cod.inverse[f[i]];
      return out;
    };

    // enumerate all 2-limit objects
    std::vector<TlDescentObject> tl;
    {
      std::vector<std::size_t> limits;
      std::uint64_t product = 1;
      for (std::size_t p = 0; p < d.elems.size(); ++p) {
        limits.push_back(d.cat[p].objects.size());
        product *= std::max<std::uint64_t>(1, d.cat[p].objects.size());
        if (product > budget) {
          rep.verdict = Verdict::Unknown;
          rep.witness = "2-limit object budget exceeded";
          return rep;
        }
      }
      std::vector<Index> x(d.elems.size(), 0);
      if (d.elems.empty()) tl.push_back({{}, {}});  // empty 2-limit is terminal
      bool more = !d.elems.empty();
      while (more) {
        std::vector<std::vector<Index>> xi(pairs.size());
        std::function<bool(std::size_t)> assign = [&](std::size_t p) -> bool {
          if (p == pairs.size()) {
            tl.push_back({x, xi});
            if (tl.size() > budget) throw ResourceLimitError("2-limit objects over budget");
            return true;
          }
          auto [s, t] = pairs[p];
          Index source = d.restrict_obj(s, t, x[t]);
          for (const auto& comp : d.cat[s].homs(source, x[s])) {
            xi[p] = comp;
            bool ok = true;
            for (const Chain& ch : chain_at[p]) {
              auto rhs = pointwise(d.restrict_comp(ch.i, ch.j, xi[ch.jk]), xi[ch.ij]);
              if (xi[ch.ik] != rhs) {
                ok = false;
                break;
              }
            }
            if (ok) assign(p + 1);
          }
          xi[p].clear();
          return true;
        };
        assign(0);
        more = advance(x, limits);
      }
    }

    // morphism families between two tl objects: free on singles, forced below
    auto tl_families = [&](const TlDescentObject& o1, const TlDescentObject& o2)
        -> std::vector<std::vector<std::vector<Index>>> {
      std::vector<std::vector<std::vector<Index>>> out;
      if (d.elems.empty()) {
        out.push_back({});
        return out;
      }
      std::vector<std::vector<std::vector<Index>>> choice;
      std::vector<std::size_t> limits;
      for (std::size_t k = 0; k < d.singles.size(); ++k) {
        choice.push_back(d.cat[d.singles[k]].homs(o1.x[d.singles[k]], o2.x[d.singles[k]]));
        limits.push_back(choice.back().size());
        if (choice.back().empty()) return out;
      }
      if (d.singles.empty()) return out;
      std::vector<Index> pick(d.singles.size(), 0);
      do {
        std::vector<std::vector<Index>> fam(d.elems.size());
        for (std::size_t k = 0; k < d.singles.size(); ++k)
          fam[d.singles[k]] = choice[k][pick[k]];
        bool ok = true;
        for (std::size_t p = 0; p < d.elems.size() && ok; ++p) {
          if (!fam[p].empty()) continue;
          std::size_t t = d.parent_singles[p].front();
          std::size_t pp = pair_pos.at({p, t});
          // f_p = xi1^-1 ; psi(f_t) ; xi2
          fam[p] = pointwise(pointwise(pointwise_inv(o1.xi[pp]), d.restrict_comp(p, t, fam[t])),
                             o2.xi[pp]);
        }
        for (std::size_t p = 0; p < pairs.size() && ok; ++p) {
          auto [s, t] = pairs[p];
          ok = pointwise(o1.xi[p], fam[s]) == pointwise(d.restrict_comp(s, t, fam[t]), o2.xi[p]);
        }
        if (ok) out.push_back(fam);
      } while (advance(pick, limits));
      return out;
    };

    auto comparison_image = [&](Index chi) {
      TlDescentObject o;
      for (std::size_t p = 0; p < d.elems.size(); ++p)
        o.x.push_back(d.restrict_whole_obj(p, chi));
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto [s, t] = pairs[p];
        std::vector<Index> id_comp;
        const auto& obj = d.cat[s].objects[o.x[s]];
        for (Index v : obj.vertex_map) id_comp.push_back(cod.identity[v]);
        o.xi.push_back(std::move(id_comp));
      }
      return o;
    };

    // essential surjectivity
    for (std::size_t oi = 0; oi < tl.size(); ++oi) {
      bool found = false;
      for (Index chi = 0; chi < d.whole.objects.size() && !found; ++chi)
        found = !tl_families(comparison_image(chi), tl[oi]).empty();
      if (!found) {
        rep.verdict = Verdict::No;
        rep.witness = "2-limit object " + std::to_string(oi) + " has no preimage up to iso";
        return rep;
      }
    }

    // full and faithful
    for (Index c1 = 0; c1 < d.whole.objects.size(); ++c1)
      for (Index c2 = 0; c2 < d.whole.objects.size(); ++c2) {
        auto homs = d.whole.homs(c1, c2);
        std::set<std::vector<std::vector<Index>>> images;
        for (const auto& mu : homs) {
          std::vector<std::vector<Index>> key;
          for (std::size_t s : d.singles) key.push_back(d.restrict_whole_comp(s, mu));
          if (!images.insert(key).second) {
            rep.verdict = Verdict::No;
            rep.witness = "comparison not faithful between functors " + std::to_string(c1) +
                          " and " + std::to_string(c2);
            return rep;
          }
        }
        std::size_t count = tl_families(comparison_image(c1), comparison_image(c2)).size();
        if (count != homs.size()) {
          rep.verdict = Verdict::No;
          rep.witness = "comparison not full between functors " + std::to_string(c1) + " and " +
                        std::to_string(c2) + " (" + std::to_string(homs.size()) + " vs " +
                        std::to_string(count) + ")";
          return rep;
        }
      }
    rep.verdict = Verdict::Yes;
  } catch (const ResourceLimitError& e) {
    rep.verdict = Verdict::Unknown;
    rep.witness = e.what();
  }
  return rep;
}

// --------------------------------------------------------------- Van Kampen ----

std::vector<std::pair<std::string, GroupoidPtr>> default_battery() {
  static const std::vector<std::pair<std::string, GroupoidPtr>> battery = {
      {"z2", share(cyclic_groupoid(2))},
      {"z3", share(cyclic_groupoid(3))},
      {"s3", share(s3_groupoid())},
      {"two", share(banal_groupoid(2))},
  };
  return battery;
}

namespace {

PresDiagram span_diagram(PresentedPtr w, PresentedPtr u, PresentedPtr v,
                         const PresFunctor& wu, const PresFunctor& wv) {
  PresDiagram d;
  d.poset = FinitePoset::from_cover_relations({"W", "U", "V"}, {{"W", "U"}, {"W", "V"}});
  d.value = {w, u, v};
  d.transition[{0, 1}] = wu;
  d.transition[{0, 2}] = wv;
  return d;
}

std::optional<std::size_t> battery_count(PresentedPtr p, GroupoidPtr g, std::uint64_t cap) {
  try {
    return hom_category(p, g, cap).object_components().size();
  } catch (const ResourceLimitError&) {
    return std::nullopt;
  }
}

}  // namespace

VanKampenReport check_vankampen(ComplexPtr x, const Subcomplex& u, const Subcomplex& v,
                                const std::vector<std::pair<std::string, GroupoidPtr>>& battery,
                                std::uint64_t budget) {
  if (!subcomplex_equal(unite(u, v), full_subcomplex(x)))
    throw std::invalid_argument("check_vankampen: u and v do not cover the complex");
  Subcomplex w = intersect(u, v);
  PresentedPtr pw = share(pi1(w));
  PresentedPtr pu = share(pi1(u));
  PresentedPtr pv = share(pi1(v));
  PresDiagram span = span_diagram(pw, pu, pv, inclusion_functor(pw, pu, w, u),
                                  inclusion_functor(pw, pv, w, v));
  ColimResult colim = diagram_colim(span);
  TcResult tc = diagram_tc(span);
  PresentedGroupoid whole = pi1(*x);

  VanKampenReport rep;
  rep.fp_whole = fingerprint(whole, budget);
  rep.fp_colim = fingerprint(*colim.groupoid, budget);
  rep.fp_tc = fingerprint(*tc.groupoid, budget);
  bool push = rep.fp_colim == rep.fp_whole;
  bool push2 = rep.fp_tc == rep.fp_whole;
  if (!push) rep.witness = "colimit fingerprint differs";
  if (!push2) rep.witness += std::string(rep.witness.empty() ? "" : "; ") +
                             "2-colimit fingerprint differs";
  PresentedPtr pwhole = share(std::move(whole));
  for (const auto& [name, g] : battery) {
    auto cw = battery_count(pwhole, g, budget);
    if (!cw) continue;
    if (push) {
      auto cc = battery_count(colim.groupoid, g, budget);
      if (cc && *cc != *cw) {
        push = false;
        rep.witness += std::string(rep.witness.empty() ? "" : "; ") + "battery " + name +
                       " distinguishes the colimit";
      }
    }
    if (push2) {
      auto ct = battery_count(tc.groupoid, g, budget);
      if (ct && *ct != *cw) {
        push2 = false;
        rep.witness += std::string(rep.witness.empty() ? "" : "; ") + "battery " + name +
                       " distinguishes the 2-colimit";
      }
    }
  }
  rep.pushout = push ? Verdict::Yes : Verdict::No;
  rep.two_pushout = push2 ? Verdict::Yes : Verdict::No;
  return rep;
}

// ----------------------------------------------------- terminal costack map ----

namespace {

Word path_word(const PresentedGroupoid& p, Index from, Index to) {
  if (from == to) return Word{from, {}};
  std::vector<Letter> via(p.graph.vertices.size(), Letter{kNoIndex, false});
  std::vector<Index> prev(p.graph.vertices.size(), kNoIndex);
  std::deque<Index> q{from};
  std::vector<bool> seen(p.graph.vertices.size(), false);
  seen[from] = true;
  while (!q.empty()) {
    Index at = q.front();
    q.pop_front();
    for (Index e = 0; e < p.graph.edges.size(); ++e) {
      const auto& ed = p.graph.edges[e];
      if (ed.src == at && !seen[ed.tgt]) {
        seen[ed.tgt] = true;
        via[ed.tgt] = {e, false};
        prev[ed.tgt] = at;
        q.push_back(ed.tgt);
      } else if (ed.tgt == at && !seen[ed.src]) {
        seen[ed.src] = true;
        via[ed.src] = {e, true};
        prev[ed.src] = at;
        q.push_back(ed.src);
      }
    }
  }
  if (!seen[to]) throw std::logic_error("path_word: vertices not connected");
  std::vector<Letter> letters;
  for (Index at = to; at != from; at = prev[at]) letters.push_back(via[at]);
  std::reverse(letters.begin(), letters.end());
  return Word{from, std::move(letters)};
}

std::vector<Index> vertex_component_map(const PresentedGroupoid& p,
                                        std::vector<std::vector<Index>>& comps) {
  comps = components(p);
  std::vector<Index> of(p.graph.vertices.size(), kNoIndex);
  for (Index c = 0; c < comps.size(); ++c)
    for (Index v : comps[c]) of[v] = c;
  return of;
}

}  // namespace

TerminalMapResult induced_map_to_terminal(const PresDiagram& q, const CoverNerve& target,
                                          GoodReading reading, std::uint64_t budget) {
  if (!is_good_cover(target, reading, budget))
    throw std::invalid_argument("induced_map_to_terminal: target cover is not good");
  if (!(q.poset.elements == target.poset.elements) || q.poset.leq != target.poset.leq)
    throw std::invalid_argument("induced_map_to_terminal: diagrams over different nerve posets");

  const std::size_t n = q.poset.elements.size();
  std::vector<std::vector<std::vector<Index>>> qcomps(n), pcomps(n);
  std::vector<std::vector<Index>> qof(n), pof(n);
  for (std::size_t s = 0; s < n; ++s) {
    qof[s] = vertex_component_map(*q.value[s], qcomps[s]);
    pof[s] = vertex_component_map(*target.diagram.value[s], pcomps[s]);
  }

  // Component matching tau_s, compatible with both transition systems;
  // lexicographically least solution by backtracking over elements.
  auto pairs = q.poset.strict_pairs();
  std::vector<std::vector<Index>> tau(n);
  std::function<bool(std::size_t)> solve = [&](std::size_t s) -> bool {
    if (s == n) return true;
    const std::size_t k = qcomps[s].size();
    std::vector<Index> pick(k, 0);
    if (pcomps[s].empty() && k > 0) return false;
    for (;;) {
      tau[s] = pick;
      bool ok = true;
      for (auto [i, j] : pairs) {
        if (std::max<std::size_t>(i, j) > s) continue;
        const auto& qpsi = q.psi(i, j);
        const auto& ppsi = target.diagram.psi(i, j);
        for (Index c = 0; c < qcomps[i].size() && ok; ++c) {
          Index via_q = qof[j][qpsi.vertex_map[qcomps[i][c][0]]];
          Index via_p = pof[j][ppsi.vertex_map[pcomps[i][tau[i][c]][0]]];
          ok = tau[j][via_q] == via_p;
        }
        if (!ok) break;
      }
      if (ok && solve(s + 1)) return true;
      // next assignment
      std::size_t d = k;
      bool more = false;
      while (d > 0) {
        --d;
        if (++pick[d] < pcomps[s].size()) {
          more = true;
          break;
        }
        pick[d] = 0;
      }
      if (!more) {
        tau[s].clear();
        return k == 0 && solve(s + 1);
      }
    }
  };
  if (!solve(0))
    throw std::runtime_error(
        "induced_map_to_terminal: no transition-compatible component matching");

  // per-element functors q_s into the simply connected targets
  std::vector<std::vector<Index>> qvmap(n);  // q vertex -> target vertex
  for (std::size_t s = 0; s < n; ++s) {
    qvmap[s].resize(q.value[s]->graph.vertices.size());
    for (Index v = 0; v < q.value[s]->graph.vertices.size(); ++v)
      qvmap[s][v] = pcomps[s][tau[s][qof[s][v]]][0];  // least vertex of the component
  }

  TcResult tcq = diagram_tc(q);
  TcResult tct = diagram_tc(target.diagram);

  std::vector<std::size_t> voff_q(n + 1, 0), voff_t(n + 1, 0);
  for (std::size_t s = 0; s < n; ++s) {
    voff_q[s + 1] = voff_q[s] + q.value[s]->graph.vertices.size();
    voff_t[s + 1] = voff_t[s] + target.diagram.value[s]->graph.vertices.size();
  }

  PresFunctor f;
  f.dom = tcq.groupoid;
  f.cod = tct.groupoid;
  f.vertex_map.assign(tcq.groupoid->graph.vertices.size(), kNoIndex);
  for (std::size_t s = 0; s < n; ++s)
    for (Index v = 0; v < q.value[s]->graph.vertices.size(); ++v)
      f.vertex_map[voff_q[s] + v] = static_cast<Index>(voff_t[s] + qvmap[s][v]);

  f.edge_map.assign(tcq.groupoid->graph.edges.size(), Word{});
  for (std::size_t s = 0; s < n; ++s) {
    const auto& graph = q.value[s]->graph;
    for (Index e = 0; e < graph.edges.size(); ++e) {
      Index tc_edge = tcq.injections[s].edge_map[e].letters[0].edge;
      Word inside = path_word(*target.diagram.value[s], qvmap[s][graph.edges[e].src],
                              qvmap[s][graph.edges[e].tgt]);
      f.edge_map[tc_edge] = apply(tct.injections[s], inside);
    }
  }
  for (auto [i, j] : pairs) {
    const auto& qpsi = q.psi(i, j);
    const auto& ppsi = target.diagram.psi(i, j);
    for (Index x = 0; x < q.value[i]->graph.vertices.size(); ++x) {
      Index tc_edge = tcq.lambda_edge.at({{i, j}, x});
      // within U_j: from q_j(psi^q(x)) to psi^Pi(q_i(x)), then the target lambda
      Word inside = path_word(*target.diagram.value[j], qvmap[j][qpsi.vertex_map[x]],
                              ppsi.vertex_map[qvmap[i][x]]);
      Word w = apply(tct.injections[j], inside);
      f.edge_map[tc_edge] =
          word_concat(tct.groupoid->graph, w, tct.lambda_word(i, j, qvmap[i][x]));
    }
  }

  TerminalMapResult res;
  res.map = std::move(f);

  // relation preservation: exactly after concretization, freely otherwise
  auto conc = concretize(tct.groupoid, budget);
  if (conc) {
    PresToConcFunctor ev;
    ev.dom = tcq.groupoid;
    ev.cod = conc->groupoid;
    for (Index v = 0; v < tcq.groupoid->graph.vertices.size(); ++v)
      ev.vertex_map.push_back(conc->from_presentation.vertex_map[res.map.vertex_map[v]]);
    for (Index e = 0; e < tcq.groupoid->graph.edges.size(); ++e)
      ev.edge_map.push_back(evaluate(conc->from_presentation, res.map.edge_map[e]));
    res.relations_preserved = Verdict::Yes;
    for (const auto& r : tcq.groupoid->relations)
      if (evaluate(ev, r.lhs) != evaluate(ev, r.rhs)) {
        res.relations_preserved = Verdict::No;
        break;
      }
  } else {
    res.relations_preserved = Verdict::Yes;
    for (const auto& r : tcq.groupoid->relations)
      if (!(free_reduce(apply(res.map, r.lhs)) == free_reduce(apply(res.map, r.rhs)))) {
        res.relations_preserved = Verdict::Unknown;
        break;
      }
  }
  return res;
}

}  // namespace grpd

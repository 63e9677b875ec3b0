#ifndef GRPD_SPACE_HPP
#define GRPD_SPACE_HPP

#include <memory>
#include <string>
#include <vector>

#include "grpd/diagrams.hpp"
#include "grpd/presented.hpp"

namespace grpd {

/// Combinatorial 2-complex standing in for a topological space: vertices,
/// directed edges, and polygonal 2-cells given by closed boundary words.
struct Complex2 {
  GenGraph skeleton;
  struct Cell {
    std::string name;
    Word boundary;  // chained and closed
  };
  NameTable cell_names;
  std::vector<Cell> cells;

  Index add_vertex(const std::string& n) { return skeleton.add_vertex(n); }
  Index add_edge(const std::string& n, Index s, Index t) { return skeleton.add_edge(n, s, t); }
  Index add_cell(const std::string& n, Word boundary);
};

using ComplexPtr = std::shared_ptr<const Complex2>;

inline ComplexPtr share(Complex2 c) { return std::make_shared<const Complex2>(std::move(c)); }

ValidationReport validate(const Complex2& c);

/// Subcomplex of a parent complex, closed under incidence.
struct Subcomplex {
  ComplexPtr parent;
  std::vector<bool> vertices, edges, cells;

  bool empty() const;
};

Subcomplex full_subcomplex(ComplexPtr c);
Subcomplex make_subcomplex(ComplexPtr c, const std::vector<std::string>& vertex_ids,
                           const std::vector<std::string>& edge_ids,
                           const std::vector<std::string>& cell_ids);
ValidationReport validate(const Subcomplex& s);

Subcomplex intersect(const Subcomplex& a, const Subcomplex& b);
Subcomplex unite(const Subcomplex& a, const Subcomplex& b);
bool subcomplex_equal(const Subcomplex& a, const Subcomplex& b);

/// Extract a subcomplex as a standalone complex (names preserved), together
/// with the member masks re-expressed over it.
Complex2 extract(const Subcomplex& s);

struct Pi0 {
  std::vector<std::string> component_names;   // named by least vertex
  std::vector<Index> vertex_component;        // parent vertex -> component, kNoIndex outside
  std::size_t size() const { return component_names.size(); }
};

Pi0 pi0(const Complex2& c);
Pi0 pi0(const Subcomplex& s);

/// Edge-path fundamental groupoid: vertices as objects, edges as generators,
/// one relation (boundary word, empty word) per 2-cell.
PresentedGroupoid pi1(const Complex2& c);
PresentedGroupoid pi1(const Subcomplex& s);

/// Inclusion-induced functor pi1(a) -> pi1(b) for a subcomplex inclusion
/// a <= b (both over the same parent).
PresFunctor inclusion_functor(PresentedPtr pa, PresentedPtr pb, const Subcomplex& a,
                              const Subcomplex& b);

/// Nerve of a subcomplex cover: poset of nonempty intersections U_S for
/// index sets |S| <= 3 ordered by reverse inclusion of S, with the induced
/// covariant diagram of fundamental groupoids.
struct CoverNerve {
  std::vector<Subcomplex> cover;
  ComplexPtr parent;
  FinitePoset poset;                          // one element per nonempty U_S
  std::vector<std::vector<int>> piece_index;  // per element, sorted member indices
  std::vector<Subcomplex> piece;
  PresDiagram diagram;                        // values pi1(U_S)
};

/// Builds the nerve; throws when the members do not cover their parent.
CoverNerve build_nerve(const std::vector<Subcomplex>& cover);

enum class GoodReading { Strict, Componentwise };

/// Good-cover test: every nerve piece simply connected.  Strict reading
/// requires connectedness; componentwise only asks every component to be
/// simply connected.
bool is_good_cover(const CoverNerve& n, GoodReading reading = GoodReading::Componentwise,
                   std::uint64_t budget = kDefaultBudget);

}  // namespace grpd

#endif

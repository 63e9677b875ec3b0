#ifndef GRPD_PRESENTED_HPP
#define GRPD_PRESENTED_HPP

#include <memory>
#include <string>
#include <vector>

#include "grpd/concrete.hpp"
#include "grpd/ids.hpp"

namespace grpd {

/// Generating graph: vertices and directed generating arrows.
struct GenGraph {
  NameTable vertices;
  struct Edge {
    std::string name;
    Index src, tgt;
  };
  NameTable edge_names;
  std::vector<Edge> edges;

  Index add_vertex(const std::string& name) { return vertices.add(name); }
  Index add_edge(const std::string& name, Index s, Index t) {
    Index i = edge_names.add(name);
    edges.push_back({name, s, t});
    return i;
  }
};

/// One signed occurrence of a generating arrow.
struct Letter {
  Index edge;
  bool inv;
  bool operator==(const Letter&) const = default;
};

/// Path word in the free groupoid on a GenGraph.  `base` is the source
/// vertex; for the empty word it is also the target.
struct Word {
  Index base = kNoIndex;
  std::vector<Letter> letters;
  bool operator==(const Word&) const = default;
};

Index letter_source(const GenGraph& g, Letter l);
Index letter_target(const GenGraph& g, Letter l);
Index word_target(const GenGraph& g, const Word& w);
bool word_chained(const GenGraph& g, const Word& w);
Word word_concat(const GenGraph& g, const Word& a, const Word& b);
Word word_inverse(const GenGraph& g, const Word& w);
/// Cancel adjacent inverse pairs until none remain (stack pass).
Word free_reduce(const Word& w);
std::string word_to_string(const GenGraph& g, const Word& w);

struct Relation {
  Word lhs, rhs;  // parallel words
};

/// Finitely presented groupoid: generating graph plus parallel-word relations.
///
/// Word equality in a presented groupoid is undecidable in general and is
/// deliberately not offered; only free equality, evaluation into concrete
/// targets, and equality after concretize() are available.
struct PresentedGroupoid {
  GenGraph graph;
  std::vector<Relation> relations;
};

using PresentedPtr = std::shared_ptr<const PresentedGroupoid>;

inline PresentedPtr share(PresentedGroupoid p) {
  return std::make_shared<const PresentedGroupoid>(std::move(p));
}

ValidationReport validate(const PresentedGroupoid& p);

/// Vertex partition into connected components of the generating graph,
/// blocks ordered by least vertex index.
std::vector<std::vector<Index>> components(const PresentedGroupoid& p);

/// Restriction of a presentation to one connected component.
struct ComponentRestriction {
  PresentedGroupoid sub;
  std::vector<Index> vertex_of;    // local -> parent
  std::vector<Index> edge_of;      // local -> parent
  std::vector<Index> local_vertex; // parent -> local (kNoIndex outside)
  std::vector<Index> local_edge;
};

ComponentRestriction restrict_component(const PresentedGroupoid& p,
                                        const std::vector<Index>& comp);

// -- functors from presentations ---------------------------------------------

/// Functor between presented groupoids: vertices to vertices, generators to
/// words.  Relation preservation is a proof obligation checked only after
/// concretization.
struct PresFunctor {
  PresentedPtr dom, cod;
  std::vector<Index> vertex_map;
  std::vector<Word> edge_map;
};

ValidationReport validate_endpoints(const PresFunctor& f);
Word apply(const PresFunctor& f, const Word& w);
PresFunctor compose(const PresFunctor& f, const PresFunctor& g);
PresFunctor identity_pres_functor(PresentedPtr p);

/// Functor from a presented groupoid to a concrete one: vertices to objects,
/// generators to morphisms.  Relations are checked by evaluation.
struct PresToConcFunctor {
  PresentedPtr dom;
  GroupoidPtr cod;
  std::vector<Index> vertex_map;
  std::vector<Index> edge_map;
};

ValidationReport validate(const PresToConcFunctor& f);
Index evaluate(const PresToConcFunctor& f, const Word& w);

/// Canonical presentation of a concrete groupoid: vertices are objects,
/// generators are the non-identity morphisms, relations record the
/// composition table.
PresentedGroupoid present(const ConcreteGroupoid& g);

/// Presentations of standard small groupoids, for tests and spans.
PresentedGroupoid trivial_presentation(const std::string& vertex = "*");
PresentedGroupoid free_loop_presentation(const std::string& vertex = "*",
                                         const std::string& loop = "a");
PresentedGroupoid cyclic_presentation(unsigned n, const std::string& vertex = "*",
                                      const std::string& loop = "a");
PresentedGroupoid discrete_presentation(unsigned n, const std::string& prefix = "p");

}  // namespace grpd

#endif

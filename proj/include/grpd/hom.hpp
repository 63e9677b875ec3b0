#ifndef GRPD_HOM_HPP
#define GRPD_HOM_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "grpd/concrete.hpp"
#include "grpd/presented.hpp"

namespace grpd {

/// The groupoid hom(p, g) of functors from a presented groupoid into a
/// concrete one, with objects enumerated eagerly and natural isomorphisms
/// produced on demand.  This is the lazy backbone behind functor_groupoid
/// and the sheaf/stack checkers, where materializing the composition table
/// would be prohibitive.
class HomCategory {
public:
  PresentedPtr dom;
  GroupoidPtr cod;
  std::vector<PresToConcFunctor> objects;

  Index find(const std::vector<Index>& vertex_map, const std::vector<Index>& edge_map) const;

  /// All natural isomorphisms objects[a] => objects[b], each given by its
  /// component vector (one cod-morphism per dom vertex), in a deterministic
  /// order.
  std::vector<std::vector<Index>> homs(Index a, Index b) const;

  /// Existence of a natural isomorphism objects[a] => objects[b].
  bool isomorphic_objects(Index a, Index b) const;

  /// Partition of objects into natural-isomorphism classes.
  std::vector<std::vector<Index>> object_components() const;

  // Spanning-tree data per graph component, used to propagate components.
  struct TreeStep {
    Index vertex;
    Index edge;
    bool forward;  // edge points from parent to vertex
  };
  std::vector<std::vector<Index>> graph_components;
  std::vector<std::vector<TreeStep>> tree;  // per component, BFS order (root omitted)

private:
  friend HomCategory hom_category(PresentedPtr, GroupoidPtr, std::uint64_t);
  std::map<std::vector<Index>, Index> index_;
};

/// Enumerate all functors p -> g.  Throws ResourceLimitError when more than
/// `object_cap` functors would be produced.
HomCategory hom_category(PresentedPtr p, GroupoidPtr g, std::uint64_t object_cap = 1000000);

/// Restriction of an object of hom(super, g) along incl : sub -> super,
/// returned as its index in the sub category.
Index restrict_object(const HomCategory& sub, const HomCategory& super,
                      const PresFunctor& incl, Index object);

/// Restriction of a natural isomorphism's component vector along incl.
std::vector<Index> restrict_components(const HomCategory& sub, const PresFunctor& incl,
                                       const std::vector<Index>& components);

/// Materialized functor groupoid with all natural isomorphisms and the full
/// composition table.  Aborts with ResourceLimitError above `morphism_cap`.
struct FunctorGroupoid {
  GroupoidPtr groupoid;
  HomCategory category;
  // For morphism m of `groupoid`: endpoints in object indices plus components.
  std::vector<std::pair<Index, Index>> nat_ends;
  std::vector<std::vector<Index>> nat_components;
};

FunctorGroupoid functor_groupoid(PresentedPtr p, GroupoidPtr g,
                                 std::uint64_t morphism_cap = 1000000);

}  // namespace grpd

#endif

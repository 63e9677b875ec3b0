#ifndef GRPD_COLLAPSE_HPP
#define GRPD_COLLAPSE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "grpd/presented.hpp"

namespace grpd {

/// Group presentation of the vertex group of a connected presented groupoid.
/// Relators are sequences of signed generator indices (+(i+1) / -(i+1)).
struct VertexGroupPresentation {
  std::vector<std::string> generators;
  std::vector<std::vector<int>> relators;
};

/// Collapse a connected presented groupoid onto its vertex group at
/// `basepoint`.  The spanning tree is chosen breadth-first from the
/// basepoint with edges scanned in declaration order, so the result is
/// reproducible byte for byte.  Generators are the non-tree edges; each
/// relation contributes exactly one relator.  Throws on disconnected input.
VertexGroupPresentation tree_collapse(const PresentedGroupoid& p, Index basepoint);

struct AbelianInvariant {
  long long free_rank = 0;
  std::vector<long long> torsion;  // entries >= 2, divisibility order
  bool operator==(const AbelianInvariant&) const = default;
};

/// Diagonal of the Smith normal form; exposed separately so tests can pin
/// hand-computed values.
std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> m);

/// Abelianization invariants from the exponent-sum matrix of the relators.
AbelianInvariant abelian_invariants(const VertexGroupPresentation& v);

/// Finite group given by its full multiplication table; element 0 is
/// neutral.  `generator_images[k]` is the element realizing generator k.
struct GroupTable {
  std::size_t order = 0;
  std::vector<std::vector<Index>> mult;  // diagrammatic: mult[a][b] = a then b
  std::vector<Index> inv;
  std::vector<Index> generator_images;
};

/// Bounded Todd-Coxeter coset enumeration over the trivial subgroup.
/// `budget` counts closure-table cell assignments; nullopt on exhaustion.
/// When `cells_used` is given it receives the number of cells consumed.
std::optional<GroupTable> enumerate_group(const VertexGroupPresentation& v,
                                          std::uint64_t budget,
                                          std::uint64_t* cells_used = nullptr);

inline constexpr std::uint64_t kDefaultBudget = 100000;

struct Concretization {
  GroupoidPtr groupoid;
  PresToConcFunctor from_presentation;  // bijective on objects, surjective on morphisms
};

/// Bounded concretization per connected component: collapse to the vertex
/// group, enumerate it, and rebuild the component as a banal groupoid
/// twisted by that group.  nullopt when the budget runs out (the vertex
/// group may be infinite).
std::optional<Concretization> concretize(PresentedPtr p,
                                         std::uint64_t budget = kDefaultBudget);

}  // namespace grpd

#endif

#ifndef GRPD_CONCRETE_HPP
#define GRPD_CONCRETE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "grpd/ids.hpp"

namespace grpd {

/// Fully enumerated finite groupoid.
///
/// Composition is diagrammatic throughout the library: compose(f, g) is
/// "f followed by g", defined exactly when tgt(f) == src(g).  Every other
/// formula (naturality squares, cocycles, whiskering) is transcribed in
/// this order.
class ConcreteGroupoid {
public:
  NameTable objects;
  NameTable morphisms;
  std::vector<Index> src, tgt;   // per morphism
  std::vector<Index> identity;   // per object
  std::vector<Index> inverse;    // per morphism

  Index add_object(const std::string& name);
  Index add_morphism(const std::string& name, Index s, Index t);
  void set_identity(Index object, Index morphism);
  void set_inverse(Index m, Index minv);
  void set_compose(Index f, Index g, Index fg);

  std::size_t object_count() const { return objects.size(); }
  std::size_t morphism_count() const { return morphisms.size(); }

  bool has_compose(Index f, Index g) const;
  Index compose(Index f, Index g) const;  // throws if undefined

  /// All morphisms a -> b in index order.
  std::vector<Index> hom(Index a, Index b) const;

  /// Partition of objects into connected components; each block sorted,
  /// blocks ordered by least object index.
  std::vector<std::vector<Index>> components() const;

  const std::unordered_map<std::uint64_t, Index>& table() const { return table_; }

private:
  static std::uint64_t key(Index f, Index g) {
    return (static_cast<std::uint64_t>(f) << 32) | g;
  }
  std::unordered_map<std::uint64_t, Index> table_;
};

using GroupoidPtr = std::shared_ptr<const ConcreteGroupoid>;

inline GroupoidPtr share(ConcreteGroupoid g) {
  return std::make_shared<const ConcreteGroupoid>(std::move(g));
}

/// Exhaustive axiom check: endpoints, identities, inverses, totality of the
/// composition table on composable pairs, associativity on all triples.
ValidationReport validate(const ConcreteGroupoid& g);

/// Exactly one morphism between every ordered pair of objects.
bool is_simply_connected(const ConcreteGroupoid& g);

// -- builders ---------------------------------------------------------------

/// One-object groupoid from a finite group's Cayley table.  table[i][j] is
/// the index of element i followed by element j; element 0 must be neutral.
ConcreteGroupoid from_group_table(const std::string& object_name,
                                  const std::vector<std::string>& element_names,
                                  const std::vector<std::vector<int>>& table);

/// One-object groupoid with vertex group Z/n.
ConcreteGroupoid cyclic_groupoid(unsigned n, const std::string& object_name = "*");

/// Simply connected groupoid on n objects (one morphism per ordered pair).
ConcreteGroupoid banal_groupoid(unsigned n, const std::string& prefix = "p");

/// One-object groupoid with vertex group S3.
ConcreteGroupoid s3_groupoid(const std::string& object_name = "*");

/// Disjoint union; identifiers are prefixed to stay unique.
ConcreteGroupoid disjoint_union(const ConcreteGroupoid& a, const ConcreteGroupoid& b,
                                const std::string& prefix_a, const std::string& prefix_b);

// -- functors ----------------------------------------------------------------

struct ConcreteFunctor {
  GroupoidPtr dom, cod;
  std::vector<Index> object_map;    // per dom object
  std::vector<Index> morphism_map;  // per dom morphism
};

ValidationReport validate(const ConcreteFunctor& f);
ConcreteFunctor identity_functor(GroupoidPtr g);
/// Diagrammatic: f then g.
ConcreteFunctor compose(const ConcreteFunctor& f, const ConcreteFunctor& g);
bool injective_on_objects(const ConcreteFunctor& f);

// -- natural isomorphisms ----------------------------------------------------

/// Natural isomorphism between parallel functors; component[x] is a
/// cod-morphism source(x) -> target(x).
struct NatIso {
  ConcreteFunctor source, target;
  std::vector<Index> component;  // per dom object
};

ValidationReport validate(const NatIso& a);
NatIso identity_nat(const ConcreteFunctor& f);
NatIso nat_inverse(const NatIso& a);
/// Vertical composition, diagrammatic: a (F => G) then b (G => H).
NatIso nat_compose(const NatIso& a, const NatIso& b);
/// a * f : components of a at f-images (precomposition with f).
NatIso whisker_pre(const NatIso& a, const ConcreteFunctor& f);
/// t * a : images under t of the components of a (postcomposition).
NatIso whisker_post(const ConcreteFunctor& t, const NatIso& a);

bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b);
bool same_functor(const ConcreteFunctor& f, const ConcreteFunctor& g);
bool same_nat(const NatIso& a, const NatIso& b);

}  // namespace grpd

#endif

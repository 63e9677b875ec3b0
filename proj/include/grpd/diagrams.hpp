#ifndef GRPD_DIAGRAMS_HPP
#define GRPD_DIAGRAMS_HPP

#include <map>
#include <tuple>
#include <vector>

#include "grpd/concrete.hpp"
#include "grpd/fingerprint.hpp"
#include "grpd/presented.hpp"

namespace grpd {

struct FinitePoset {
  NameTable elements;
  std::vector<std::vector<bool>> leq;  // leq[i][j]  <=>  i <= j

  static FinitePoset from_cover_relations(
      const std::vector<std::string>& element_names,
      const std::vector<std::pair<std::string, std::string>>& covers);

  ValidationReport validate() const;
  std::vector<std::pair<Index, Index>> strict_pairs() const;           // i < j
  std::vector<std::tuple<Index, Index, Index>> strict_chains() const;  // i < j < k
  bool is_filtered() const;
  /// Greatest element, kNoIndex if none.
  Index top() const;
};

enum class Variance { Covariant, Contravariant };

/// Strict diagram of concrete groupoids over a finite poset.  Transitions
/// are stored for strict pairs only; (i, i) is the identity by convention.
/// Contravariant: psi_ij : value[j] -> value[i] for i <= j (limit side).
/// Covariant:     psi_ij : value[i] -> value[j] (colimit side).
struct ConcreteDiagram {
  FinitePoset poset;
  Variance variance = Variance::Contravariant;
  std::vector<GroupoidPtr> value;
  std::map<std::pair<Index, Index>, ConcreteFunctor> transition;

  const ConcreteFunctor& psi(Index i, Index j) const { return transition.at({i, j}); }
};

/// Checks arity, transition endpoints, and strict functoriality
/// psi_jk . psi_ij = psi_ik on every chain.
ValidationReport validate_diagram(const ConcreteDiagram& d);

// -- limits -------------------------------------------------------------------

struct LimResult {
  GroupoidPtr groupoid;
  std::vector<std::vector<Index>> object_family;    // per object, per element
  std::vector<std::vector<Index>> morphism_family;  // per morphism, per element
  std::map<std::vector<Index>, Index> object_index;
};

/// Compatible object and morphism families; contravariant diagrams only.
LimResult diagram_lim(const ConcreteDiagram& d);

/// Object and hom enumeration without materializing the groupoid.
std::vector<std::vector<Index>> lim_objects(const ConcreteDiagram& d);
std::vector<std::vector<Index>> lim_homs(const ConcreteDiagram& d,
                                         const std::vector<Index>& a,
                                         const std::vector<Index>& b);

// -- 2-limits -----------------------------------------------------------------

/// Object of the 2-limit: objects x_i plus isomorphisms
/// xi_ij : psi_ij(x_j) -> x_i (one per strict pair, in strict_pairs order)
/// subject to the cocycle xi_ik = psi_ij(xi_jk) ; xi_ij.
struct TlObject {
  std::vector<Index> x;
  std::vector<Index> xi;
  bool operator==(const TlObject&) const = default;
  bool operator<(const TlObject& o) const { return std::tie(x, xi) < std::tie(o.x, o.xi); }
};

struct TlResult {
  GroupoidPtr groupoid;
  std::vector<TlObject> objects;
  std::vector<std::vector<Index>> morphism_family;
  std::vector<std::pair<Index, Index>> morphism_ends;
  std::map<TlObject, Index> object_index;
};

TlResult diagram_tl(const ConcreteDiagram& d, std::uint64_t cap = 1000000);

std::vector<TlObject> tl_objects(const ConcreteDiagram& d, std::uint64_t cap = 1000000);
/// Morphism families (f_i) from o1 to o2 satisfying every coherence square.
std::vector<std::vector<Index>> tl_homs(const ConcreteDiagram& d, const TlObject& o1,
                                        const TlObject& o2);

/// The full and faithful comparison lim -> tl, x |-> (x, Id).
ConcreteFunctor gamma_embedding(const ConcreteDiagram& d);

/// Hom-set bijectivity between gamma-image objects, checked exhaustively
/// without materializing the 2-limit.
bool gamma_fully_faithful(const ConcreteDiagram& d);

// -- colimits of presented diagrams --------------------------------------------

/// Covariant diagram of presented groupoids.
struct PresDiagram {
  FinitePoset poset;
  std::vector<PresentedPtr> value;
  std::map<std::pair<Index, Index>, PresFunctor> transition;

  const PresFunctor& psi(Index i, Index j) const { return transition.at({i, j}); }
};

/// Arity, endpoint, and letterwise strictness checks.
ValidationReport validate_diagram(const PresDiagram& d);

struct ColimResult {
  PresentedPtr groupoid;
  std::vector<PresFunctor> injections;  // alpha_i, strict cocone
};

/// Colimit: quotient of objects by x ~ psi_ij(x), union of generators and
/// relations plus transport relations identifying each generator with its
/// psi image.
ColimResult diagram_colim(const PresDiagram& d);

struct TcResult {
  PresentedPtr groupoid;
  std::vector<PresFunctor> injections;  // alpha_i
  /// lambda_ij component at object x of value(i): a fresh generator from
  /// alpha_j(psi_ij(x)) to alpha_i(x).
  std::map<std::pair<std::pair<Index, Index>, Index>, Index> lambda_edge;

  Word lambda_word(Index i, Index j, Index x) const;
};

/// 2-colimit: disjoint objects, fresh lambda generators per strict pair and
/// object, naturality squares per generator, cocycle relations per chain.
TcResult diagram_tc(const PresDiagram& d);

struct DeltaResult {
  PresFunctor comparison;  // tc -> colim
  Verdict verdict;
  ColimResult colim;
  TcResult tc;
};

/// Comparison functor delta: original generators map to themselves, lambda
/// generators to identities; verdict from the equivalence fingerprints.
DeltaResult delta_comparison(const PresDiagram& d, std::uint64_t budget = kDefaultBudget);

// -- filtered colimits ---------------------------------------------------------

/// Colimit of a covariant diagram of concrete groupoids over a filtered
/// poset, by equivalence classes of objects and morphisms.  Throws on
/// non-filtered posets.
ConcreteGroupoid filtered_colim(const ConcreteDiagram& d);

// -- deformation ---------------------------------------------------------------

struct DeformResult {
  ConcreteFunctor j1_prime;
  NatIso kappa;  // j1 => j1'
};

/// Deformation of a 2-commuting square along an object-injective i1:
/// produces j1' with j1'.i1 = j2.i2 strictly and kappa with kappa * i1 =
/// lambda.  Case analysis keys on endpoint membership in Im(i1) first, then
/// on morphism membership; preimage choices are deterministic and their
/// independence is re-verified by assertion.
DeformResult deform(const ConcreteFunctor& i1, const ConcreteFunctor& i2,
                    const ConcreteFunctor& j1, const ConcreteFunctor& j2,
                    const NatIso& lambda);

}  // namespace grpd

#endif

#ifndef GRPD_FINGERPRINT_HPP
#define GRPD_FINGERPRINT_HPP

#include <optional>
#include <string>

#include "grpd/collapse.hpp"
#include "grpd/concrete.hpp"
#include "grpd/presented.hpp"

namespace grpd {

/// Equivalence-class fingerprint of one connected component: abelian
/// invariants of the vertex group, plus its order when bounded
/// concretization succeeds.
struct ComponentInvariant {
  AbelianInvariant abelian;
  std::optional<std::uint64_t> order;
  bool operator==(const ComponentInvariant&) const = default;
  bool operator<(const ComponentInvariant& o) const;
};

/// Fingerprint invariant under equivalence of groupoids.  Components are
/// listed in canonical (sorted) order.
struct EquivalenceInvariant {
  std::size_t component_count = 0;
  std::vector<ComponentInvariant> per_component;
  bool operator==(const EquivalenceInvariant&) const = default;
};

std::string to_string(const EquivalenceInvariant& f);

EquivalenceInvariant fingerprint(const ConcreteGroupoid& g);
EquivalenceInvariant fingerprint(const PresentedGroupoid& p,
                                 std::uint64_t budget = kDefaultBudget);

/// True when the fingerprints witness genuine inequivalence.  An absent
/// order means "enumeration ran out of budget", so it matches any order;
/// only the always-computed data (component count, abelianizations) and
/// mutually known orders can certify a difference.
bool certifies_difference(const EquivalenceInvariant& a, const EquivalenceInvariant& b);

/// Exhaustive isomorphism test between small finite groups.
bool groups_isomorphic(const GroupTable& a, const GroupTable& b);

/// Sound three-valued equivalence verdict.  No when fingerprints differ;
/// Yes when every component pair is certified (finite vertex groups found
/// isomorphic by search, or visibly free of equal rank); Unknown otherwise.
Verdict are_equivalent(const PresentedGroupoid& a, const PresentedGroupoid& b,
                       std::uint64_t budget = kDefaultBudget);
Verdict are_equivalent(const ConcreteGroupoid& a, const ConcreteGroupoid& b,
                       std::uint64_t budget = kDefaultBudget);
Verdict are_equivalent(const ConcreteGroupoid& a, const PresentedGroupoid& b,
                       std::uint64_t budget = kDefaultBudget);
Verdict are_equivalent(const PresentedGroupoid& a, const ConcreteGroupoid& b,
                       std::uint64_t budget = kDefaultBudget);

}  // namespace grpd

#endif

#ifndef FGROUP_DYNAMICS_HPP
#define FGROUP_DYNAMICS_HPP

#include "fgroup/element.hpp"

#include <optional>

namespace fgroup {

inline constexpr long kDefaultIterationCap = 1L << 16;

// Set of fixed points of an element: pairwise disjoint sorted closed
// components (points are degenerate intervals). Always contains {0} and {1}.
struct FixedSet {
  std::vector<Interval> components;
  bool meets_open_unit_interval() const;  // intersects (0,1)
  bool contains(const Rat& x) const;
};

enum class Direction { PushUp, PushDown };

// Maximal open interval (a,b) free of fixed points, with the side of the
// diagonal the graph lies on.
struct Orbital {
  Rat a, b;
  Direction direction;
  bool operator==(const Orbital&) const = default;
};

FixedSet fixed_set(const Element& f);
std::vector<Orbital> orbitals(const Element& f);

// Smallest n >= 1 with f^n(x) > y (push-up) or f^n(x) < y (push-down).
long orbital_power(const Element& f, const Orbital& orb, const Rat& x, const Rat& y,
                   long cap = kDefaultIterationCap);

// True iff [u) is a fundamental domain of the cyclic action on the orbital:
// f(.u) is the right endpoint of [u] (push-up), or f maps the right endpoint
// to .u (push-down). Requires [u] inside (orb.a, orb.b).
bool is_fundamental_domain(const Element& f, const Orbital& orb, const Word& u);

// A rational in the interior of the intersection of the supports of S
// (midpoint of the leftmost component), or absent if every point of (0,1)
// is fixed by some element of S.
std::optional<Rat> common_unfixed_point(const std::vector<Element>& elements);

// Element with abelian image (c,d) and single orbital (0,1). Requires c*d < 0.
Element make_unfixed_element(const Int& c, const Int& d);

nlohmann::json orbitals_to_json(const std::vector<Orbital>& orbs);

}  // namespace fgroup

#endif

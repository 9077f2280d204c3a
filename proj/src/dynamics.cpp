#include "fgroup/dynamics.hpp"

#include <nlohmann/json.hpp>

namespace fgroup {

bool FixedSet::meets_open_unit_interval() const {
  for (const auto& c : components)
    if (c.hi > 0 && c.lo < 1) return true;
  return false;
}

bool FixedSet::contains(const Rat& x) const {
  for (const auto& c : components)
    if (c.lo <= x && x <= c.hi) return true;
  return false;
}

FixedSet fixed_set(const Element& f) {
  std::vector<Interval> raw;
  for (const auto& p : to_pieces(f)) {
    if (p.slope == 1) {
      if (p.offset == 0) raw.push_back(p.domain);
    } else {
      // slope*t + offset = t  =>  t = offset / (1 - slope)
      Rat t = p.offset / (1 - p.slope);
      if (t >= p.domain.lo && t <= p.domain.hi) raw.push_back(Interval::closed(t, t));
    }
  }
  // 0 and 1 are always fixed; pieces with offset 0 / fixing 1 already yield them,
  // but add them explicitly for robustness.
  raw.push_back(Interval::closed(0, 0));
  raw.push_back(Interval::closed(1, 1));
  std::sort(raw.begin(), raw.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  FixedSet out;
  for (const auto& c : raw) {
    if (!out.components.empty() && c.lo <= out.components.back().hi) {
      if (c.hi > out.components.back().hi) out.components.back().hi = c.hi;
    } else {
      out.components.push_back(c);
    }
  }
  return out;
}

std::vector<Orbital> orbitals(const Element& f) {
  FixedSet fs = fixed_set(f);
  auto pieces = to_pieces(f);
  std::vector<Orbital> out;
  for (std::size_t i = 0; i + 1 < fs.components.size(); ++i) {
    Rat a = fs.components[i].hi, b = fs.components[i + 1].lo;
    if (a >= b) continue;
    // right slope at a decides the side of the diagonal
    Rat slope = 0;
    for (const auto& p : pieces)
      if (p.domain.lo <= a && a < p.domain.hi) {
        slope = p.slope;
        break;
      }
    out.push_back({a, b, slope > 1 ? Direction::PushUp : Direction::PushDown});
  }
  return out;
}

long orbital_power(const Element& f, const Orbital& orb, const Rat& x, const Rat& y,
                   long cap) {
  if (!(x > orb.a && x < orb.b && y > orb.a && y < orb.b))
    throw InvalidElement("orbital_power: points outside the orbital");
  if (cap < 1) throw InvalidElement("orbital_power: cap must be >= 1");
  Rat t = x;
  for (long n = 1; n <= cap; ++n) {
    t = evaluate(f, t);
    if (orb.direction == Direction::PushUp ? t > y : t < y) return n;
  }
  throw IterationCapExceeded("orbital_power: no escape within cap " + std::to_string(cap));
}

bool is_fundamental_domain(const Element& f, const Orbital& orb, const Word& u) {
  Interval iv = word_interval(u);
  if (!(iv.lo > orb.a && iv.hi < orb.b))
    throw InvalidElement("is_fundamental_domain: [u] not inside the orbital");
  if (orb.direction == Direction::PushUp) return evaluate(f, iv.lo) == iv.hi;
  return evaluate(f, iv.hi) == iv.lo;
}

namespace {

// Intersect two sorted lists of disjoint open intervals.
std::vector<std::pair<Rat, Rat>> intersect_open(const std::vector<std::pair<Rat, Rat>>& a,
                                                const std::vector<std::pair<Rat, Rat>>& b) {
  std::vector<std::pair<Rat, Rat>> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    Rat lo = std::max(a[i].first, b[j].first);
    Rat hi = std::min(a[i].second, b[j].second);
    if (lo < hi) out.emplace_back(lo, hi);
    if (a[i].second < b[j].second) ++i;
    else ++j;
  }
  return out;
}

}  // namespace

std::optional<Rat> common_unfixed_point(const std::vector<Element>& elements) {
  if (elements.empty()) throw InvalidElement("common_unfixed_point: empty set");
  std::vector<std::pair<Rat, Rat>> support{{Rat(0), Rat(1)}};
  for (const Element& f : elements) {
    std::vector<std::pair<Rat, Rat>> supp;
    for (const Orbital& o : orbitals(f)) supp.emplace_back(o.a, o.b);
    support = intersect_open(support, supp);
    if (support.empty()) return std::nullopt;
  }
  return (support.front().first + support.front().second) / 2;
}

Element make_unfixed_element(const Int& c, const Int& d) {
  if (c * d >= 0)
    throw InvalidElement("make_unfixed_element requires c*d < 0");
  if (c < 0) return invert(make_unfixed_element(-c, -d));
  // c > 0 > d: product of pointwise >= identity maps, the x0 factor strict on (0,1)
  Element lower = embed(Element::x0(), "0");   // pi = (1, 0)
  Element upper = embed(Element::x0(), "1");   // pi = (0, -1)
  Element f = Element::x0();
  for (Int i = 1; i < c; ++i) f = compose(f, lower);
  for (Int i = 1; i < -d; ++i) f = compose(f, upper);
  if (!(abelianization(f) == AbelianImage{c, d}))
    throw InternalError("make_unfixed_element: wrong abelian image");
  auto orbs = orbitals(f);
  if (orbs.size() != 1 || orbs[0].a != 0 || orbs[0].b != 1)
    throw InternalError("make_unfixed_element: not a single full orbital");
  return f;
}

nlohmann::json orbitals_to_json(const std::vector<Orbital>& orbs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& o : orbs)
    out.push_back({{"a", format_rat(o.a)},
                   {"b", format_rat(o.b)},
                   {"dir", o.direction == Direction::PushUp ? "up" : "down"}});
  return out;
}

}  // namespace fgroup

#include "doctest.h"

#include "fgroup/dynamics.hpp"
#include "random_elements.hpp"

#include <nlohmann/json.hpp>

using namespace fgroup;
using fgroup::testing::random_element;

namespace {
const Element& X0() { return Element::x0(); }
const Element& X1() { return Element::x1(); }
Element E13() {
  return Element::from_branch_pairs(
      {{"00", "000"}, {"0100", "001"}, {"0101", "01"}, {"011", "10"}, {"1", "11"}});
}
}  // namespace

TEST_CASE("fixed_set") {
  FixedSet fx1 = fixed_set(X1());
  REQUIRE(fx1.components.size() == 2);
  CHECK(fx1.components[0] == Interval::closed(0, Rat(1, 2)));
  CHECK(fx1.components[1] == Interval::closed(1, 1));

  FixedSet fx0 = fixed_set(X0());
  REQUIRE(fx0.components.size() == 2);
  CHECK(fx0.components[0] == Interval::closed(0, 0));
  CHECK(fx0.components[1] == Interval::closed(1, 1));
  CHECK_FALSE(fx0.meets_open_unit_interval());
  CHECK(fx1.meets_open_unit_interval());

  FixedSet fe = fixed_set(E13());
  REQUIRE(fe.components.size() == 3);
  CHECK(fe.components[1] == Interval::closed(Rat(1, 3), Rat(1, 3)));
  CHECK(fe.contains(Rat(1, 3)));
  CHECK_FALSE(fe.contains(Rat(1, 2)));
}

TEST_CASE("orbitals") {
  auto ox0 = orbitals(X0());
  REQUIRE(ox0.size() == 1);
  CHECK(ox0[0] == Orbital{0, 1, Direction::PushUp});

  CHECK(orbitals(Element::identity()).empty());

  auto oe = orbitals(E13());
  REQUIRE(oe.size() == 2);
  CHECK(oe[0] == Orbital{0, Rat(1, 3), Direction::PushDown});
  CHECK(oe[1] == Orbital{Rat(1, 3), 1, Direction::PushUp});

  auto ox1 = orbitals(X1());
  REQUIRE(ox1.size() == 1);
  CHECK(ox1[0] == Orbital{Rat(1, 2), 1, Direction::PushUp});
}

TEST_CASE("orbital sign is constant") {
  std::mt19937 rng(31);
  for (int i = 0; i < 40; ++i) {
    Element f = random_element(rng);
    for (const Orbital& o : orbitals(f)) {
      CHECK(evaluate(f, o.a) == o.a);
      CHECK(evaluate(f, o.b) == o.b);
      for (int j = 1; j < 100; ++j) {
        Rat t = o.a + (o.b - o.a) * Rat(j, 100);
        Rat moved = evaluate(f, t);
        if (o.direction == Direction::PushUp) {
          CHECK(moved > t);
        } else {
          CHECK(moved < t);
        }
      }
    }
  }
}

TEST_CASE("orbital_power") {
  Orbital up{0, 1, Direction::PushUp};
  CHECK(orbital_power(X0(), up, Rat(1, 4), Rat(1, 2)) == 2);
  CHECK(orbital_power(X0(), up, Rat(1, 4), Rat(1, 4)) == 1);
  Orbital down{0, 1, Direction::PushDown};
  CHECK(orbital_power(invert(X0()), down, Rat(1, 2), Rat(1, 4)) == 2);
  CHECK_THROWS_AS(orbital_power(X0(), up, Rat(1, 4), Rat(1, 2), 1), IterationCapExceeded);
  // exactness: f^{n-1}(x) <= y < f^n(x)
  std::mt19937 rng(37);
  for (int i = 0; i < 30; ++i) {
    Element f = random_element(rng);
    auto os = orbitals(f);
    if (os.empty()) continue;
    const Orbital& o = os.front();
    Rat x = o.a + (o.b - o.a) / 3, y = o.a + (o.b - o.a) * Rat(2, 3);
    long n = orbital_power(f, o, x, y);
    Rat prev = x, cur = x;
    for (long k = 0; k < n; ++k) {
      prev = cur;
      cur = evaluate(f, cur);
    }
    if (o.direction == Direction::PushUp) {
      CHECK(prev <= y);
      CHECK(cur > y);
    } else {
      CHECK(prev >= y);
      CHECK(cur < y);
    }
  }
}

TEST_CASE("is_fundamental_domain") {
  Orbital up{0, 1, Direction::PushUp};
  CHECK(is_fundamental_domain(X0(), up, "01"));
  CHECK_FALSE(is_fundamental_domain(X0(), up, "001"));
  CHECK_FALSE(is_fundamental_domain(compose(X0(), X0()), up, "01"));
  Orbital down{0, 1, Direction::PushDown};
  CHECK(is_fundamental_domain(invert(X0()), down, "01"));
}

TEST_CASE("common_unfixed_point") {
  auto b = common_unfixed_point({X0(), X1()});
  REQUIRE(b.has_value());
  CHECK(*b > Rat(1, 2));
  CHECK(*b < 1);

  Element f1 = embed(X0(), "0");  // fixes [1/2,1] pointwise
  Element f2 = embed(X0(), "1");  // fixes [0,1/2] pointwise
  CHECK_FALSE(common_unfixed_point({f1, f2}).has_value());
  CHECK_FALSE(common_unfixed_point({Element::identity()}).has_value());
  CHECK_THROWS_AS(common_unfixed_point({}), InvalidElement);
}

TEST_CASE("make_unfixed_element") {
  Element a = make_unfixed_element(1, -1);
  CHECK(abelianization(a) == AbelianImage{1, -1});
  CHECK(orbitals(a) == std::vector<Orbital>{{0, 1, Direction::PushUp}});

  Element b = make_unfixed_element(-1, 1);
  CHECK(abelianization(b) == AbelianImage{-1, 1});
  CHECK(orbitals(b) == std::vector<Orbital>{{0, 1, Direction::PushDown}});

  Element c = make_unfixed_element(2, -1);
  CHECK(abelianization(c) == AbelianImage{2, -1});
  REQUIRE(orbitals(c).size() == 1);
  CHECK(fixed_set(c).components.size() == 2);

  CHECK_THROWS_AS(make_unfixed_element(1, 1), InvalidElement);
  CHECK_THROWS_AS(make_unfixed_element(0, -1), InvalidElement);
}

TEST_CASE("cd >= 0 forces an interior fixed point") {
  std::mt19937 rng(43);
  int seen = 0;
  while (seen < 60) {
    Element f = random_element(rng);
    AbelianImage p = abelianization(f);
    if (p.c * p.d < 0) continue;
    ++seen;
    if (f.is_identity()) continue;
    CHECK(fixed_set(f).meets_open_unit_interval());
  }
}

TEST_CASE("conjugation covariance of orbitals") {
  std::mt19937 rng(47);
  for (int i = 0; i < 40; ++i) {
    Element g = random_element(rng), s = random_element(rng);
    auto expect = orbitals(g);
    for (auto& o : expect) {
      o.a = evaluate(s, o.a);
      o.b = evaluate(s, o.b);
    }
    CHECK(orbitals(conjugate(g, s)) == expect);
  }
}

TEST_CASE("orbitals_to_json") {
  auto j = orbitals_to_json(orbitals(E13()));
  REQUIRE(j.size() == 2);
  CHECK(j[0]["b"] == "1/3");
  CHECK(j[0]["dir"] == "down");
  CHECK(j[1]["dir"] == "up");
}

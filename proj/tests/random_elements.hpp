#ifndef FGROUP_TESTS_RANDOM_ELEMENTS_HPP
#define FGROUP_TESTS_RANDOM_ELEMENTS_HPP

#include "fgroup/element.hpp"

#include <random>

namespace fgroup::testing {

// Random product of generators and their inverses.
inline Element random_element(std::mt19937& rng, int max_len = 8) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> pick(0, 3);
  Element e = Element::identity();
  for (int i = len(rng); i > 0; --i) {
    switch (pick(rng)) {
      case 0: e = compose(e, Element::x0()); break;
      case 1: e = compose(e, Element::x1()); break;
      case 2: e = compose(e, invert(Element::x0())); break;
      default: e = compose(e, invert(Element::x1())); break;
    }
  }
  return e;
}

inline Rat random_rational01(std::mt19937& rng) {
  std::uniform_int_distribution<long> den(1, 512);
  long d = den(rng);
  std::uniform_int_distribution<long> num(0, d);
  return Rat(num(rng), d);
}

}  // namespace fgroup::testing

#endif

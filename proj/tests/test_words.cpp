#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fgroup/words.hpp"

#include <random>

using namespace fgroup;

TEST_CASE("is_inner") {
  CHECK(is_inner("01"));
  CHECK_FALSE(is_inner("000"));
  CHECK_FALSE(is_inner(""));
  CHECK_FALSE(is_inner("111"));
}

TEST_CASE("prefix_relation") {
  CHECK(prefix_relation("01", "0110") == PrefixRel::UPrefixOfV);
  CHECK(prefix_relation("01", "10") == PrefixRel::Incomparable);
  CHECK(prefix_relation("1", "1") == PrefixRel::Equal);
  CHECK(prefix_relation("0110", "01") == PrefixRel::VPrefixOfU);
  CHECK(incomparable("001", "01"));
  CHECK_FALSE(incomparable("", "01"));
}

TEST_CASE("word_interval") {
  Interval i = word_interval("01");
  CHECK(i.lo == Rat(1, 4));
  CHECK(i.hi == Rat(1, 2));
  CHECK(word_interval("1").lo == Rat(1, 2));
  CHECK(word_interval("1").hi == 1);
  CHECK(word_interval("001").lo == Rat(1, 8));
  CHECK(word_interval("001").hi == Rat(1, 4));
  CHECK_THROWS_AS(word_interval(""), InvalidElement);
  Interval h = word_interval("01", true);
  CHECK_FALSE(h.hi_closed);
}

TEST_CASE("interval_precedes") {
  CHECK(interval_precedes(Interval::closed(Rat(1, 8), Rat(1, 4)),
                          Interval::closed(Rat(1, 4), Rat(1, 2))));
  CHECK_FALSE(interval_precedes(Interval::closed(Rat(1, 4), Rat(1, 2)),
                                Interval::closed(Rat(1, 8), Rat(1, 4))));
  CHECK_FALSE(interval_precedes(Interval::closed(Rat(0), Rat(1, 2)),
                                Interval::closed(Rat(1, 4), Rat(1))));
}

TEST_CASE("standard_decomposition") {
  CHECK(standard_decomposition(Interval::closed(Rat(1, 4), 1)) ==
        std::vector<Word>{"01", "1"});
  CHECK(standard_decomposition(Interval::closed(Rat(1, 8), Rat(1, 2))) ==
        std::vector<Word>{"001", "01"});
  CHECK(standard_decomposition(Interval::closed(0, 1)) == std::vector<Word>{"0", "1"});
  CHECK_THROWS_AS(standard_decomposition(Interval::closed(Rat(1, 3), 1)), InvalidElement);
}

TEST_CASE("standard_decomposition tiles exactly") {
  std::mt19937 rng(2026);
  std::uniform_int_distribution<int> num(0, 255);
  for (int trial = 0; trial < 200; ++trial) {
    Int a = num(rng), b = num(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    Interval iv(Rat(a, 256), Rat(b, 256));
    auto words = standard_decomposition(iv);
    Rat at = iv.lo;
    for (const Word& w : words) {
      Interval wi = word_interval(w);
      CHECK(wi.lo == at);
      at = wi.hi;
    }
    CHECK(at == iv.hi);
  }
}

TEST_CASE("incomparable words have disjoint interiors") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> bit(0, 1), len(1, 8);
  for (int trial = 0; trial < 300; ++trial) {
    Word u, v;
    for (int i = len(rng); i > 0; --i) u += static_cast<char>('0' + bit(rng));
    for (int i = len(rng); i > 0; --i) v += static_cast<char>('0' + bit(rng));
    Interval iu = word_interval(u), iv = word_interval(v);
    bool disjoint_interiors = iu.hi <= iv.lo || iv.hi <= iu.lo;
    if (incomparable(u, v)) {
      CHECK(disjoint_interiors);
    } else {
      CHECK_FALSE(disjoint_interiors);
    }
  }
}

TEST_CASE("rational formatting") {
  CHECK(format_rat(Rat(3, 4)) == "3/4");
  CHECK(format_rat(Rat(2)) == "2");
  CHECK(parse_rat("3/4") == Rat(3, 4));
  CHECK(parse_rat("5") == Rat(5));
  CHECK(parse_rat("3/2^4") == Rat(3, 16));
  CHECK_THROWS_AS(parse_rat("x"), ParseError);
  CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
  CHECK(format_dyadic_binary(Rat(5, 8)) == ".101");
  CHECK(format_dyadic_binary(Rat(0)) == ".0");
}

TEST_CASE("dyadic helpers") {
  CHECK(is_dyadic(Rat(3, 8)));
  CHECK_FALSE(is_dyadic(Rat(1, 3)));
  CHECK(dyadic_exponent(Rat(3, 8)) == 3);
  CHECK(dyadic_exponent(Rat(2)) == 0);
  CHECK(pow2(-3) == Rat(1, 8));
  CHECK(pow2(4) == 16);
  Dyadic d(6, 4);
  CHECK(d.numerator == 3);
  CHECK(d.exponent == 3);
  CHECK(Dyadic::from_rational(Rat(5, 32)).exponent == 5);
  CHECK_THROWS_AS(Dyadic::from_rational(Rat(1, 3)), InvalidElement);
}

TEST_CASE("standard_word") {
  CHECK(standard_word(Rat(1, 4), Rat(1, 2)) == Word("01"));
  CHECK(standard_word(Rat(1, 8), Rat(1, 4)) == Word("001"));
  CHECK_FALSE(standard_word(Rat(1, 8), Rat(1, 2)).has_value());
  CHECK_FALSE(standard_word(Rat(1, 3), Rat(2, 3)).has_value());
  CHECK_FALSE(standard_word(Rat(0), Rat(1)).has_value());
}

TEST_CASE("word_strictly_inside") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(0, 1000);
  for (int trial = 0; trial < 100; ++trial) {
    int a = num(rng), b = num(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    Word w = word_strictly_inside(Rat(a, 1001), Rat(b, 1001));
    Interval iv = word_interval(w);
    CHECK(iv.lo > Rat(a, 1001));
    CHECK(iv.hi < Rat(b, 1001));
  }
}

TEST_CASE("exact arithmetic round trip") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  for (int i = 0; i < 100; ++i) {
    Rat a(num(rng), 1 + std::abs(num(rng)));
    Rat b(num(rng), 1 + std::abs(num(rng)));
    CHECK((a + b) - b == a);
  }
}

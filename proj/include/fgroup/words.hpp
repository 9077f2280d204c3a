#ifndef FGROUP_WORDS_HPP
#define FGROUP_WORDS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgroup {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Finite binary word over {0,1}; addresses of standard dyadic intervals.
using Word = std::string;

struct InvalidElement : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};
struct IterationCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Postcondition failure inside a verified construction.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rat pow2(long k);  // exact 2^k, k may be negative

bool is_dyadic(const Rat& r);
// Exponent e of the reduced form p/2^e. Requires is_dyadic(r).
long dyadic_exponent(const Rat& r);

// Dyadic rational numerator/2^exponent, kept reduced (numerator odd or exponent 0).
struct Dyadic {
  Int numerator;
  long exponent = 0;

  Dyadic() = default;
  Dyadic(Int num, long exp);
  static Dyadic from_rational(const Rat& r);  // throws InvalidElement if not dyadic
  Rat to_rational() const;
  bool operator==(const Dyadic&) const = default;
};

std::string format_rat(const Rat& r);          // "p/q", or "p" when integral
Rat parse_rat(const std::string& text);        // accepts "p/q", "p", "p/2^k"
std::string format_dyadic_binary(const Rat& r);  // terminating ".b1b2..." form

bool is_valid_word(const Word& w);
bool is_inner(const Word& w);  // contains both digits

enum class PrefixRel { Equal, UPrefixOfV, VPrefixOfU, Incomparable };
PrefixRel prefix_relation(const Word& u, const Word& v);
bool incomparable(const Word& u, const Word& v);

// Interval of [0,1] with exact rational endpoints and open/closed flags.
struct Interval {
  Rat lo, hi;
  bool lo_closed = true;
  bool hi_closed = true;

  Interval() = default;
  Interval(Rat l, Rat h, bool lc = true, bool hc = true);
  static Interval closed(Rat l, Rat h) { return Interval(std::move(l), std::move(h)); }
  static Interval open(Rat l, Rat h) { return Interval(std::move(l), std::move(h), false, false); }

  Rat length() const { return hi - lo; }
  bool degenerate() const { return lo == hi; }
  bool contains(const Rat& x) const;
  bool contains_interval(const Interval& other) const;  // other subset of *this
  bool operator==(const Interval&) const = default;
};

Rat word_lo(const Word& u);  // the binary fraction .u; word_lo("") == 0
// Closed interval [.u, .u + 2^-|u|]; half_open gives [u) = [.u, .u + 2^-|u|).
// The empty word is rejected: it addresses all of [0,1], not a proper branch.
Interval word_interval(const Word& u, bool half_open = false);

// [w] for lo = .w, hi = .w + 2^-|w|, if [lo,hi] is a standard dyadic interval.
std::optional<Word> standard_word(const Rat& lo, const Rat& hi);

// True iff every x in I1 and y in I2 satisfy x <= y.
bool interval_precedes(const Interval& i1, const Interval& i2);

// Minimal left-to-right tiling of a closed dyadic interval by standard dyadic
// intervals, greedy-largest from the left. [0,1] tiles as {"0","1"}.
std::vector<Word> standard_decomposition(const Interval& interval);

// Some word w with [w] strictly inside the open interval (a,b).
Word word_strictly_inside(const Rat& a, const Rat& b);

}  // namespace fgroup

#endif

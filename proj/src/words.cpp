#include "fgroup/words.hpp"

#include <algorithm>

namespace fgroup {

namespace mp = boost::multiprecision;

Rat pow2(long k) {
  Int one = 1;
  if (k >= 0) return Rat(one << k);
  return Rat(one, one << (-k));
}

bool is_dyadic(const Rat& r) {
  Int d = mp::denominator(r);
  return (d & (d - 1)) == 0;  // power of two
}

long dyadic_exponent(const Rat& r) {
  Int d = mp::denominator(r);
  long e = 0;
  while (d > 1) {
    d >>= 1;
    ++e;
  }
  return e;
}

Dyadic::Dyadic(Int num, long exp) : numerator(std::move(num)), exponent(exp) {
  if (exponent < 0) throw InvalidElement("dyadic exponent must be non-negative");
  while (exponent > 0 && (numerator & 1) == 0) {
    numerator >>= 1;
    --exponent;
  }
}

Dyadic Dyadic::from_rational(const Rat& r) {
  if (!is_dyadic(r)) throw InvalidElement("not a dyadic rational: " + format_rat(r));
  return Dyadic(Int(mp::numerator(r)), dyadic_exponent(r));
}

Rat Dyadic::to_rational() const { return numerator / pow2(exponent); }

std::string format_rat(const Rat& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

Rat parse_rat(const std::string& text) {
  auto bad = [&](std::size_t pos) { return ParseError("invalid rational '" + text + "'", pos); };
  if (text.empty()) throw bad(0);
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(text));
    std::string den = text.substr(slash + 1);
    Int num(text.substr(0, slash));
    if (den.rfind("2^", 0) == 0) {
      long e = std::stol(den.substr(2));
      return num / pow2(e);
    }
    Int d(den);
    if (d <= 0) throw bad(slash + 1);
    return Rat(num, d);
  } catch (const std::exception&) {
    throw bad(0);
  }
}

std::string format_dyadic_binary(const Rat& r) {
  if (!is_dyadic(r) || r < 0 || r > 1) throw InvalidElement("not a dyadic in [0,1]");
  long e = dyadic_exponent(r);
  Int num = mp::numerator(r);
  std::string out = ".";
  for (long i = e - 1; i >= 0; --i) out += ((num >> i) & 1) != 0 ? '1' : '0';
  if (out == ".") out = ".0";
  return out;
}

bool is_valid_word(const Word& w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c == '0' || c == '1'; });
}

bool is_inner(const Word& w) {
  return w.find('0') != std::string::npos && w.find('1') != std::string::npos;
}

PrefixRel prefix_relation(const Word& u, const Word& v) {
  std::size_t n = std::min(u.size(), v.size());
  if (u.compare(0, n, v, 0, n) != 0) return PrefixRel::Incomparable;
  if (u.size() == v.size()) return PrefixRel::Equal;
  return u.size() < v.size() ? PrefixRel::UPrefixOfV : PrefixRel::VPrefixOfU;
}

bool incomparable(const Word& u, const Word& v) {
  return prefix_relation(u, v) == PrefixRel::Incomparable;
}

Interval::Interval(Rat l, Rat h, bool lc, bool hc)
    : lo(std::move(l)), hi(std::move(h)), lo_closed(lc), hi_closed(hc) {
  if (lo > hi) throw InvalidElement("interval with lo > hi");
  if (lo == hi && !(lo_closed && hi_closed))
    throw InvalidElement("degenerate interval must be closed");
}

bool Interval::contains(const Rat& x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !lo_closed) return false;
  if (x == hi && !hi_closed) return false;
  return true;
}

bool Interval::contains_interval(const Interval& other) const {
  bool lo_ok = other.lo > lo || (other.lo == lo && (lo_closed || !other.lo_closed));
  bool hi_ok = other.hi < hi || (other.hi == hi && (hi_closed || !other.hi_closed));
  return lo_ok && hi_ok;
}

Rat word_lo(const Word& u) {
  Int num = 0;
  for (char c : u) num = (num << 1) + (c == '1' ? 1 : 0);
  return num / pow2(static_cast<long>(u.size()));
}

Interval word_interval(const Word& u, bool half_open) {
  if (u.empty()) throw InvalidElement("empty word does not address a branch interval");
  if (!is_valid_word(u)) throw InvalidElement("invalid binary word '" + u + "'");
  Rat lo = word_lo(u);
  Rat hi = lo + pow2(-static_cast<long>(u.size()));
  return Interval(lo, hi, true, !half_open);
}

std::optional<Word> standard_word(const Rat& lo, const Rat& hi) {
  if (!(lo >= 0 && hi <= 1 && lo < hi)) return std::nullopt;
  if (!is_dyadic(lo) || !is_dyadic(hi)) return std::nullopt;
  Rat len = hi - lo;
  // length must be 2^-k, k >= 1, and lo aligned to it
  Int num = mp::numerator(len);
  if (num != 1) return std::nullopt;
  long k = dyadic_exponent(len);
  if (k < 1) return std::nullopt;
  Rat scaled = lo * pow2(k);
  if (mp::denominator(scaled) != 1) return std::nullopt;
  Int val = mp::numerator(scaled);
  Word w(static_cast<std::size_t>(k), '0');
  for (long i = 0; i < k; ++i)
    if (((val >> (k - 1 - i)) & 1) != 0) w[static_cast<std::size_t>(i)] = '1';
  return w;
}

bool interval_precedes(const Interval& i1, const Interval& i2) {
  return i1.hi <= i2.lo;
}

std::vector<Word> standard_decomposition(const Interval& interval) {
  if (!interval.lo_closed || !interval.hi_closed)
    throw InvalidElement("standard_decomposition requires a closed interval");
  if (!is_dyadic(interval.lo) || !is_dyadic(interval.hi))
    throw InvalidElement("standard_decomposition requires dyadic endpoints");
  if (!(interval.lo >= 0 && interval.hi <= 1 && interval.lo < interval.hi))
    throw InvalidElement("standard_decomposition requires a non-degenerate subinterval of [0,1]");
  std::vector<Word> out;
  Rat p = interval.lo;
  while (p < interval.hi) {
    // largest standard interval starting at p that fits in [p, hi]
    long k = std::max<long>(1, dyadic_exponent(p));
    while (p + pow2(-k) > interval.hi) ++k;
    Rat q = p + pow2(-k);
    auto w = standard_word(p, q);
    if (!w) throw InternalError("greedy tiling produced a non-standard interval");
    out.push_back(*w);
    p = q;
  }
  return out;
}

Word word_strictly_inside(const Rat& a, const Rat& b) {
  if (!(a < b && a >= 0 && b <= 1))
    throw InvalidElement("word_strictly_inside needs a non-empty open subinterval of [0,1]");
  Rat mid = (a + b) / 2;
  Word w;
  Rat lo = 0, len = 1;
  for (int depth = 0; depth < 4096; ++depth) {
    if (!w.empty() && lo > a && lo + len < b) return w;
    len /= 2;
    if (mid < lo + len) {
      w += '0';
    } else {
      w += '1';
      lo += len;
    }
  }
  throw InternalError("word_strictly_inside failed to converge");
}

}  // namespace fgroup

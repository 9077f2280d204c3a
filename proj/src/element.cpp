#include "fgroup/element.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <optional>

namespace fgroup {

namespace mp = boost::multiprecision;

namespace {

// log2 of a rational that is an exact power of 2, if it is one.
std::optional<long> log2_exact(const Rat& r) {
  Int num = mp::numerator(r), den = mp::denominator(r);
  if (num <= 0) return std::nullopt;
  auto pow_of_two = [](const Int& x) { return (x & (x - 1)) == 0; };
  if (!pow_of_two(num) || !pow_of_two(den)) return std::nullopt;
  long e = 0;
  for (Int x = num; x > 1; x >>= 1) ++e;
  for (Int x = den; x > 1; x >>= 1) --e;
  return e;
}

// Leaves of a full binary tree, left to right? The single-node tree has the
// empty word as its only leaf.
bool is_complete_antichain(const std::vector<Word>& words) {
  std::vector<Word> stack;
  for (const Word& w : words) {
    if (!is_valid_word(w)) return false;
    stack.push_back(w);
    while (stack.size() >= 2) {
      const Word& a = stack[stack.size() - 2];
      const Word& b = stack.back();
      if (!a.empty() && a.size() == b.size() && a.back() == '0' && b.back() == '1' &&
          a.compare(0, a.size() - 1, b, 0, b.size() - 1) == 0) {
        Word parent = a.substr(0, a.size() - 1);
        stack.pop_back();
        stack.pop_back();
        stack.push_back(std::move(parent));
      } else {
        break;
      }
    }
  }
  return stack.size() == 1 && stack[0].empty();
}

void reduce_common_carets(std::vector<Element::Pair>& pairs) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
      const auto& [u0, v0] = pairs[i];
      const auto& [u1, v1] = pairs[i + 1];
      auto siblings = [](const Word& a, const Word& b) {
        return !a.empty() && a.size() == b.size() && a.back() == '0' && b.back() == '1' &&
               a.compare(0, a.size() - 1, b, 0, b.size() - 1) == 0;
      };
      if (siblings(u0, u1) && siblings(v0, v1)) {
        pairs[i] = {u0.substr(0, u0.size() - 1), v0.substr(0, v0.size() - 1)};
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        changed = true;
        break;
      }
    }
  }
}

}  // namespace

Element Element::identity() {
  Element e;
  e.pairs_ = {{"", ""}};
  return e;
}

Element Element::from_branch_pairs(std::vector<Pair> pairs) {
  if (pairs.empty()) throw InvalidElement("element needs at least one branch pair");
  std::vector<Word> dom, ran;
  dom.reserve(pairs.size());
  ran.reserve(pairs.size());
  for (const auto& [u, v] : pairs) {
    dom.push_back(u);
    ran.push_back(v);
  }
  if (!is_complete_antichain(dom))
    throw InvalidElement("domain branches are not the leaves of a full binary tree");
  if (!is_complete_antichain(ran))
    throw InvalidElement("range branches are not the leaves of a full binary tree");
  reduce_common_carets(pairs);
  Element e;
  e.pairs_ = std::move(pairs);
  return e;
}

const Element& Element::x0() {
  static const Element e = from_branch_pairs({{"00", "0"}, {"01", "10"}, {"1", "11"}});
  return e;
}

const Element& Element::x1() {
  static const Element e =
      from_branch_pairs({{"0", "0"}, {"100", "10"}, {"101", "110"}, {"11", "111"}});
  return e;
}

Element compose(const Element& f, const Element& g) {
  // Refine until the range antichain of f matches the domain antichain of g.
  const auto& a = f.pairs();
  const auto& b = g.pairs();
  std::vector<Element::Pair> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Word& v = a[i].second;
    const Word& p = b[j].first;
    switch (prefix_relation(v, p)) {
      case PrefixRel::Equal:
        out.emplace_back(a[i].first, b[j].second);
        ++i;
        ++j;
        break;
      case PrefixRel::UPrefixOfV: {  // v prefix of p
        Word suffix = p.substr(v.size());
        out.emplace_back(a[i].first + suffix, b[j].second);
        ++j;
        // the block of g-pairs under v ends at its rightmost descendant
        if (suffix.find('0') == Word::npos) ++i;
        break;
      }
      case PrefixRel::VPrefixOfU: {  // p prefix of v
        Word suffix = v.substr(p.size());
        out.emplace_back(a[i].first, b[j].second + suffix);
        ++i;
        if (suffix.find('0') == Word::npos) ++j;
        break;
      }
      case PrefixRel::Incomparable:
        throw InternalError("antichain walk desynchronized in compose");
    }
  }
  if (i != a.size() || j != b.size())
    throw InternalError("antichain walk incomplete in compose");
  return Element::from_branch_pairs(std::move(out));
}

Element invert(const Element& f) {
  std::vector<Element::Pair> out;
  out.reserve(f.pairs().size());
  for (const auto& [u, v] : f.pairs()) out.emplace_back(v, u);
  return Element::from_branch_pairs(std::move(out));
}

Element conjugate(const Element& g, const Element& sigma) {
  return compose(compose(invert(sigma), g), sigma);
}

Element power(const Element& f, long n) {
  Element base = n < 0 ? invert(f) : f;
  long k = n < 0 ? -n : n;
  Element acc = Element::identity();
  for (long i = 0; i < k; ++i) acc = compose(acc, base);
  return acc;
}

Element embed(const Element& f, const Word& w) {
  if (!is_valid_word(w)) throw InvalidElement("invalid binary word '" + w + "'");
  if (w.empty()) return f;
  std::vector<Element::Pair> out;
  // complement leaves to the left of w, then the scaled copy, then the right side
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == '1') out.emplace_back(w.substr(0, i) + '0', w.substr(0, i) + '0');
  if (f.is_identity()) {
    out.emplace_back(w, w);
  } else {
    for (const auto& [u, v] : f.pairs()) out.emplace_back(w + u, w + v);
  }
  for (std::size_t i = w.size(); i-- > 0;)
    if (w[i] == '0') out.emplace_back(w.substr(0, i) + '1', w.substr(0, i) + '1');
  return Element::from_branch_pairs(std::move(out));
}

Rat evaluate(const Element& f, const Rat& t) {
  if (t < 0 || t > 1) throw InvalidElement("evaluate: point outside [0,1]");
  for (const auto& [u, v] : f.pairs()) {
    long lu = static_cast<long>(u.size()), lv = static_cast<long>(v.size());
    Rat lo = word_lo(u), hi = lo + pow2(-lu);
    if (t >= lo && t <= hi) return word_lo(v) + (t - lo) * pow2(lu - lv);
  }
  throw InternalError("branch pairs do not cover [0,1]");
}

AbelianImage abelianization(const Element& f) {
  const auto& first = f.pairs().front();
  const auto& last = f.pairs().back();
  return {Int(first.first.size()) - Int(first.second.size()),
          Int(last.first.size()) - Int(last.second.size())};
}

std::vector<AffinePiece> to_pieces(const Element& f) {
  std::vector<AffinePiece> pieces;
  for (const auto& [u, v] : f.pairs()) {
    long lu = static_cast<long>(u.size()), lv = static_cast<long>(v.size());
    Rat lo = word_lo(u), hi = lo + pow2(-lu);
    Rat slope = pow2(lu - lv);
    Rat offset = word_lo(v) - lo * slope;
    if (!pieces.empty() && pieces.back().slope == slope && pieces.back().offset == offset) {
      pieces.back().domain.hi = hi;  // merge into the maximal piece
    } else {
      pieces.push_back({Interval::closed(lo, hi), slope, offset});
    }
  }
  return pieces;
}

namespace {

// Branch pairs for the affine map of piece restricted to [w], splitting until
// the image is a standard dyadic interval.
void emit_affine_pairs(const AffinePiece& piece, const Word& w,
                       std::vector<Element::Pair>& out, int depth = 0) {
  if (depth > 256) throw InternalError("affine pair emission failed to align");
  Interval dom = word_interval(w);
  Rat img_lo = piece.apply(dom.lo), img_hi = piece.apply(dom.hi);
  if (auto v = standard_word(img_lo, img_hi)) {
    out.emplace_back(w, *v);
    return;
  }
  emit_affine_pairs(piece, w + '0', out, depth + 1);
  emit_affine_pairs(piece, w + '1', out, depth + 1);
}

}  // namespace

Element from_pieces(const std::vector<AffinePiece>& pieces) {
  if (pieces.empty()) throw InvalidElement("no pieces");
  if (pieces.front().domain.lo != 0 || pieces.back().domain.hi != 1)
    throw InvalidElement("pieces must cover [0,1]");
  std::vector<Element::Pair> out;
  Rat prev_end = 0, prev_img = 0;
  for (const auto& p : pieces) {
    if (p.domain.lo != prev_end || p.apply(p.domain.lo) != prev_img)
      throw InvalidElement("pieces are not contiguous and continuous");
    if (!log2_exact(p.slope)) throw InvalidElement("slope is not a power of 2");
    if (!is_dyadic(p.domain.lo) || !is_dyadic(p.domain.hi) || !is_dyadic(p.offset))
      throw InvalidElement("pieces need dyadic breakpoints and offsets");
    if (p.domain.degenerate()) continue;
    for (const Word& w : standard_decomposition(p.domain)) emit_affine_pairs(p, w, out);
    prev_end = p.domain.hi;
    prev_img = p.apply(p.domain.hi);
  }
  if (prev_img != 1) throw InvalidElement("pieces must fix 1");
  return Element::from_branch_pairs(std::move(out));
}

bool has_branch_pair(const std::vector<AffinePiece>& pieces, const Word& u, const Word& v) {
  if (u.empty() || v.empty()) throw InvalidElement("has_branch_pair needs non-empty words");
  Interval dom = word_interval(u);
  for (const auto& p : pieces) {
    if (p.domain.lo <= dom.lo && dom.hi <= p.domain.hi) {
      Interval img = word_interval(v);
      return p.apply(dom.lo) == img.lo && p.apply(dom.hi) == img.hi;
    }
  }
  return false;
}

bool has_branch_pair(const Element& f, const Word& u, const Word& v) {
  return has_branch_pair(to_pieces(f), u, v);
}

bool restrictions_equal(const Element& f, const Element& g, const Interval& interval) {
  if (interval.degenerate()) return evaluate(f, interval.lo) == evaluate(g, interval.lo);
  // Both maps are PL with breakpoints among the combined breakpoint set, so
  // agreement at every combined breakpoint and segment midpoint is exact equality.
  std::vector<Rat> points{interval.lo, interval.hi};
  for (const Element* e : {&f, &g})
    for (const auto& p : to_pieces(*e))
      if (p.domain.lo > interval.lo && p.domain.lo < interval.hi)
        points.push_back(p.domain.lo);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Rat> probes = points;
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    probes.push_back((points[i] + points[i + 1]) / 2);
  for (const Rat& t : probes)
    if (evaluate(f, t) != evaluate(g, t)) return false;
  return true;
}

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() { return text[pos]; }
  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
  }

  Word word() {
    skip_ws();
    Word w;
    while (pos < text.size() && (text[pos] == '0' || text[pos] == '1')) w += text[pos++];
    return w;
  }

  long integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      throw ParseError("expected integer", start);
    return std::stol(text.substr(start, pos - start));
  }

  Element diagram() {
    expect('{');
    std::vector<Element::Pair> pairs;
    if (!accept('}')) {
      do {
        Word u = word();
        skip_ws();
        if (pos + 1 >= text.size() || text[pos] != '-' || text[pos + 1] != '>')
          throw ParseError("expected '->'", pos);
        pos += 2;
        Word v = word();
        pairs.emplace_back(std::move(u), std::move(v));
      } while (accept(','));
      expect('}');
    }
    if (pairs.empty()) return Element::identity();
    return Element::from_branch_pairs(std::move(pairs));
  }

  std::optional<Element> atom() {
    skip_ws();
    if (pos >= text.size()) return std::nullopt;
    if (text[pos] == '{') return diagram();
    if (text[pos] == 'x') {
      ++pos;
      if (pos < text.size() && text[pos] == '0') {
        ++pos;
        return Element::x0();
      }
      if (pos < text.size() && text[pos] == '1') {
        ++pos;
        return Element::x1();
      }
      throw ParseError("unknown generator (expected x0 or x1)", pos);
    }
    return std::nullopt;
  }

  Element run() {
    Element acc = Element::identity();
    bool first = true;
    while (!eof()) {
      if (!first) accept('*');
      auto a = atom();
      if (!a) throw ParseError("unexpected character", pos);
      long exp = 1;
      if (accept('^')) exp = integer();
      acc = compose(acc, power(*a, exp));
      first = false;
    }
    return acc;
  }
};

}  // namespace

Element parse_element(const std::string& text) {
  Parser p(text);
  return p.run();
}

std::string serialize(const Element& f) {
  if (f.is_identity()) return "{->}";
  std::string out = "{";
  bool first = true;
  for (const auto& [u, v] : f.pairs()) {
    if (!first) out += ", ";
    out += u + "->" + v;
    first = false;
  }
  return out + "}";
}

nlohmann::json element_to_json(const Element& f) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [u, v] : f.pairs()) pairs.push_back({u, v});
  return nlohmann::json{{"pairs", pairs}};
}

Element element_from_json(const nlohmann::json& j) {
  std::vector<Element::Pair> pairs;
  for (const auto& p : j.at("pairs"))
    pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
  if (pairs.size() == 1 && pairs[0].first.empty() && pairs[0].second.empty())
    return Element::identity();
  return Element::from_branch_pairs(std::move(pairs));
}

}  // namespace fgroup

#include "fgroup/construct.hpp"

#include <algorithm>
#include <numeric>

namespace fgroup {

namespace mp = boost::multiprecision;

namespace {

bool is_pow2_ratio(const Rat& r) {
  if (r <= 0) return false;
  Int n = mp::numerator(r), d = mp::denominator(r);
  auto pow2_int = [](const Int& x) { return (x & (x - 1)) == 0; };
  return (n == 1 && pow2_int(d)) || (d == 1 && pow2_int(n));
}

// Dyadic in (a,b) with the smallest possible denominator (then smallest
// numerator). Denominators are capped at 2^20.
Rat simplest_dyadic(const Rat& a, const Rat& b) {
  if (!(a < b)) throw InvalidElement("simplest_dyadic: empty interval");
  for (long k = 0; k <= 20; ++k) {
    Rat scale = pow2(k);
    Rat lo = a * scale;
    Int m = mp::numerator(lo) / mp::denominator(lo);  // floor for lo >= 0
    ++m;
    if (Rat(m) / scale < b) return Rat(m) / scale;
  }
  throw BudgetExceeded("no dyadic with denominator <= 2^20 in the interval");
}

void require_dyadic_closed(const Interval& iv, const char* who) {
  if (!iv.lo_closed || !iv.hi_closed)
    throw InvalidElement(std::string(who) + ": intervals must be closed");
  if (!is_dyadic(iv.lo) || !is_dyadic(iv.hi))
    throw InvalidElement(std::string(who) + ": interval endpoints must be dyadic");
  if (iv.lo < 0 || iv.hi > 1)
    throw InvalidElement(std::string(who) + ": interval not inside [0,1]");
}

// Pieces of some homeomorphism [A] -> [B] built by matching standard
// decompositions (the two tilings are equalized by splitting trailing words).
std::vector<AffinePiece> match_tilings(const Interval& a, const Interval& b) {
  std::vector<Word> us = standard_decomposition(a);
  std::vector<Word> vs = standard_decomposition(b);
  auto split_back = [](std::vector<Word>& ws) {
    Word w = ws.back();
    ws.pop_back();
    ws.push_back(w + "0");
    ws.push_back(w + "1");
  };
  while (us.size() < vs.size()) split_back(us);
  while (vs.size() < us.size()) split_back(vs);
  std::vector<AffinePiece> out;
  for (std::size_t i = 0; i < us.size(); ++i) {
    Interval du = word_interval(us[i]);
    Interval dv = word_interval(vs[i]);
    Rat slope = dv.length() / du.length();
    out.push_back({du, slope, dv.lo - slope * du.lo});
  }
  return out;
}

// Append pieces for the gap [a0,a1] -> [b0,b1]; degenerate on both sides is
// a shared boundary point, degenerate on one side only cannot be filled.
void fill_gap(std::vector<AffinePiece>& pieces, const Rat& a0, const Rat& a1,
              const Rat& b0, const Rat& b1) {
  if (a0 > a1 || b0 > b1)
    throw InvalidElement("interval map: overlapping or unordered intervals");
  if ((a0 == a1) != (b0 == b1))
    throw InvalidElement("interval map: source and target gaps do not match");
  if (a0 == a1) return;
  auto sub = match_tilings(Interval::closed(a0, a1), Interval::closed(b0, b1));
  pieces.insert(pieces.end(), sub.begin(), sub.end());
}

std::vector<AffinePiece> clip_pieces(const Element& g, const Interval& iv) {
  std::vector<AffinePiece> out;
  for (const auto& p : to_pieces(g)) {
    Rat lo = std::max(p.domain.lo, iv.lo), hi = std::min(p.domain.hi, iv.hi);
    if (lo < hi) out.push_back({Interval::closed(lo, hi), p.slope, p.offset});
  }
  return out;
}

}  // namespace

Element map_intervals(const IntervalMapSpec& spec) {
  std::size_t n = spec.sources.size();
  if (n == 0) throw InvalidElement("map_intervals: empty spec");
  if (spec.targets.size() != n)
    throw InvalidElement("map_intervals: sources/targets size mismatch");
  if (!spec.linear.empty() && spec.linear.size() != n)
    throw InvalidElement("map_intervals: linear flag size mismatch");
  std::vector<AffinePiece> pieces;
  Rat prev_s = 0, prev_t = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Interval& s = spec.sources[i];
    const Interval& t = spec.targets[i];
    require_dyadic_closed(s, "map_intervals");
    require_dyadic_closed(t, "map_intervals");
    fill_gap(pieces, prev_s, s.lo, prev_t, t.lo);
    if (s.degenerate() != t.degenerate())
      throw InvalidElement("map_intervals: degenerate source needs degenerate target");
    if (!s.degenerate()) {
      bool lin = !spec.linear.empty() && spec.linear[i];
      if (lin) {
        Rat slope = t.length() / s.length();
        if (!is_pow2_ratio(slope))
          throw InvalidElement("map_intervals: linear source needs power-of-2 length ratio");
        pieces.push_back({s, slope, t.lo - slope * s.lo});
      } else {
        auto sub = match_tilings(s, t);
        pieces.insert(pieces.end(), sub.begin(), sub.end());
      }
    }
    prev_s = s.hi;
    prev_t = t.hi;
  }
  fill_gap(pieces, prev_s, Rat(1), prev_t, Rat(1));
  Element out = from_pieces(pieces);
  for (std::size_t i = 0; i < n; ++i) {
    if (evaluate(out, spec.sources[i].lo) != spec.targets[i].lo ||
        evaluate(out, spec.sources[i].hi) != spec.targets[i].hi)
      throw InternalError("map_intervals: endpoint image mismatch");
  }
  return out;
}

Element patchwork(const std::vector<std::pair<Interval, Element>>& parts) {
  if (parts.empty()) throw InvalidElement("patchwork: empty piece list");
  std::vector<AffinePiece> pieces;
  Rat prev_s = 0, prev_t = 0;
  for (const auto& [iv, g] : parts) {
    require_dyadic_closed(iv, "patchwork");
    Rat jlo = evaluate(g, iv.lo), jhi = evaluate(g, iv.hi);
    fill_gap(pieces, prev_s, iv.lo, prev_t, jlo);
    if (!iv.degenerate()) {
      auto sub = clip_pieces(g, iv);
      pieces.insert(pieces.end(), sub.begin(), sub.end());
    }
    prev_s = iv.hi;
    prev_t = jhi;
  }
  fill_gap(pieces, prev_s, Rat(1), prev_t, Rat(1));
  Element out = from_pieces(pieces);
  for (const auto& [iv, g] : parts) {
    bool ok = iv.degenerate() ? evaluate(out, iv.lo) == evaluate(g, iv.lo)
                              : restrictions_equal(out, g, iv);
    if (!ok) throw InternalError("patchwork: assembled element disagrees on a piece");
  }
  return out;
}

Element conjugator_on_interval(const Element& f, const Orbital& orb_f,
                               const Element& g, const Orbital& orb_g,
                               Rat x, Rat y, std::optional<Interval> fix, long cap) {
  if (orb_f.direction != orb_g.direction)
    throw InvalidElement("conjugator_on_interval: orbital directions differ");
  if (x > y) throw InvalidElement("conjugator_on_interval: x > y");
  if (!(orb_f.a < x && y < orb_f.b))
    throw InvalidElement("conjugator_on_interval: [x,y] not inside the f-orbital");
  if (fix) {
    require_dyadic_closed(*fix, "conjugator_on_interval");
    if (fix->hi > orb_f.a || fix->hi > orb_g.a)
      throw InvalidElement("conjugator_on_interval: fix must precede both orbitals");
  }

  if (orb_f.direction == Direction::PushDown) {
    // Matching g to f on [x,y] is matching the inverses on [f(x), f(y)]:
    // if h^-1 = f^-1 there, then h = f on [x,y].
    Element sigma = conjugator_on_interval(
        invert(f), {orb_f.a, orb_f.b, Direction::PushUp}, invert(g),
        {orb_g.a, orb_g.b, Direction::PushUp}, evaluate(f, x), evaluate(f, y), fix, cap);
    if (!restrictions_equal(conjugate(g, sigma), f, Interval::closed(x, y)))
      throw InternalError("conjugator_on_interval: push-down reduction failed");
    return sigma;
  }

  Rat alpha = simplest_dyadic(orb_g.a, orb_g.b);
  Rat x0 = x;
  if (!is_dyadic(x) || dyadic_exponent(x) > 20) {
    // largest dyadic of denominator <= 2^20 below x
    Rat scaled = x * pow2(20);
    Int m = mp::numerator(scaled) / mp::denominator(scaled);
    x0 = Rat(m) / pow2(20);
    if (!(orb_f.a < x0))
      throw BudgetExceeded("conjugator_on_interval: no dyadic replacement for x");
  }
  long n = orbital_power(f, orb_f, x0, y, cap);

  // sigma_0 carries [alpha, g(alpha)] onto [x0, f(x0)]; the inductive rule
  // sigma_i = g^-1 sigma_{i-1} f extends it one fundamental domain at a time.
  std::vector<std::pair<Interval, Element>> parts;
  if (fix) parts.emplace_back(Interval::closed(0, fix->hi), Element::identity());
  Element cur = map_intervals({{Interval::closed(alpha, evaluate(g, alpha))},
                               {Interval::closed(x0, evaluate(f, x0))},
                               {}});
  Rat dom_lo = alpha;
  for (long i = 0; i <= n; ++i) {
    if (i > 0) cur = compose(compose(invert(g), cur), f);
    Rat dom_hi = evaluate(g, dom_lo);
    parts.emplace_back(Interval::closed(dom_lo, dom_hi), cur);
    dom_lo = dom_hi;
  }
  Element sigma = patchwork(parts);

  if (!restrictions_equal(conjugate(g, sigma), f, Interval::closed(x, y)))
    throw InternalError("conjugator_on_interval: conjugate disagrees with f on [x,y]");
  if (!(evaluate(sigma, orb_g.a) < x && y < evaluate(sigma, orb_g.b)))
    throw InternalError("conjugator_on_interval: [x,y] escapes the moved orbital");
  if (fix && !restrictions_equal(sigma, Element::identity(), *fix))
    throw InternalError("conjugator_on_interval: sigma moves the fix interval");
  return sigma;
}

namespace {

struct AnchorCore {
  std::vector<AnchoredWitness> pairs;  // in processing order
  Word w;
};

// Nested-interval procedure: working inside [seed], push copies of it to the
// left by powers of each element in turn, producing a strictly ordered chain
// J_k < I_k < ... < J_1 < I_1 < [seed], then shrink [seed] to a word w on
// which every chosen power is affine with a standard image.
AnchorCore anchor_core(const std::vector<Element>& fs, const std::vector<Orbital>& orbs,
                       const Word& seed, long power_bound) {
  Interval base = word_interval(seed);
  Rat left_bound = base.lo;
  std::vector<long> ms(fs.size()), ns(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    long step = orbs[i].direction == Direction::PushUp ? -1 : 1;
    Element mover = step < 0 ? invert(fs[i]) : fs[i];
    Rat lo = base.lo, hi = base.hi;
    long t = 0;
    auto advance_until_below = [&](const Rat& bound) {
      while (hi > bound) {
        if (++t > power_bound)
          throw BudgetExceeded("anchored pairs: power bound exceeded");
        lo = evaluate(mover, lo);
        hi = evaluate(mover, hi);
      }
    };
    advance_until_below(left_bound);
    ns[i] = step * t;
    Rat mid_lo = lo;
    advance_until_below(mid_lo);
    ms[i] = step * t;
    left_bound = lo;
  }

  std::vector<Element> pow_m(fs.size()), pow_n(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    pow_m[i] = power(fs[i], ms[i]);
    pow_n[i] = power(fs[i], ns[i]);
  }
  // deepen w (toward the left end of [seed]) until every power is affine on
  // [w] with a standard dyadic image
  Word w = seed;
  auto image_word = [&](const Element& p, const Word& ww) -> std::optional<Word> {
    Interval iv = word_interval(ww);
    auto sw = standard_word(evaluate(p, iv.lo), evaluate(p, iv.hi));
    if (sw && has_branch_pair(p, ww, *sw)) return sw;
    return std::nullopt;
  };
  for (int depth = 0; depth < 4096; ++depth) {
    bool ok = true;
    for (std::size_t i = 0; i < fs.size() && ok; ++i)
      ok = image_word(pow_m[i], w) && image_word(pow_n[i], w);
    if (ok) break;
    w += '0';
  }
  AnchorCore out;
  out.w = w;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto u = image_word(pow_m[i], w), v = image_word(pow_n[i], w);
    if (!u || !v) throw InternalError("anchored pairs: no affine word found");
    out.pairs.push_back({*u, *v, ms[i], ns[i]});
  }
  return out;
}

void verify_witness(const Element& f, const AnchoredWitness& wit, const Word& w) {
  if (!has_branch_pair(power(f, wit.m), w, wit.u) ||
      !has_branch_pair(power(f, wit.n), w, wit.v))
    throw InternalError("anchored pairs: witness branch pair check failed");
}

void verify_incomparable_inner(const std::vector<Word>& words) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!is_inner(words[i]))
      throw InternalError("witness word is not inner: " + words[i]);
    for (std::size_t j = i + 1; j < words.size(); ++j)
      if (!incomparable(words[i], words[j]))
        throw InternalError("witness words comparable: " + words[i] + ", " + words[j]);
  }
}

}  // namespace

AnchoredPairs anchored_pairs(const std::vector<Element>& elements, const Rat& beta,
                             long power_bound) {
  if (elements.empty()) throw InvalidElement("anchored_pairs: empty set");
  std::vector<Orbital> orbs;
  for (const Element& f : elements) {
    const Orbital* found = nullptr;
    for (const Orbital& o : orbitals(f))
      if (o.a < beta && beta < o.b) found = &o;
    if (!found)
      throw InvalidElement("anchored_pairs: " + format_rat(beta) + " is fixed by an element");
    orbs.push_back(*found);
  }
  // process in decreasing order of left endpoint so each new chain tail stays
  // inside the next element's orbital
  std::vector<std::size_t> order(elements.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return orbs[i].a > orbs[j].a; });
  Rat a = 0, b = 1;
  std::vector<Element> fs;
  std::vector<Orbital> sorted_orbs;
  for (std::size_t idx : order) {
    a = std::max(a, orbs[idx].a);
    b = std::min(b, orbs[idx].b);
    fs.push_back(elements[idx]);
    sorted_orbs.push_back(orbs[idx]);
  }
  AnchorCore core = anchor_core(fs, sorted_orbs, word_strictly_inside(a, b), power_bound);

  AnchoredPairs out;
  out.w = core.w;
  out.pairs.resize(elements.size());
  std::vector<Word> all{core.w};
  for (std::size_t i = 0; i < order.size(); ++i) {
    verify_witness(fs[i], core.pairs[i], core.w);
    out.pairs[order[i]] = core.pairs[i];
    all.push_back(core.pairs[i].u);
    all.push_back(core.pairs[i].v);
  }
  verify_incomparable_inner(all);
  return out;
}

std::vector<InnerPairWitness> incomparable_pairs(const std::vector<Element>& elements) {
  std::vector<InnerPairWitness> out;
  std::vector<Word> frozen;
  for (const Element& f : elements) {
    if (f.is_identity())
      throw InvalidElement("incomparable_pairs: identity element in the set");
    Orbital orb = orbitals(f).front();
    Word base = word_strictly_inside(orb.a, orb.b);
    // dodge collisions with earlier words by re-seeding in deeper subtrees
    std::vector<Word> suffixes{""};
    for (std::size_t s = 0; s < suffixes.size(); ++s) {
      if (suffixes[s].size() <= 4) {
        suffixes.push_back(suffixes[s] + "0");
        suffixes.push_back(suffixes[s] + "1");
      }
    }
    bool placed = false;
    for (const Word& suf : suffixes) {
      AnchorCore core = anchor_core({f}, {orb}, base + suf, 64);
      const AnchoredWitness& wit = core.pairs[0];
      long e = wit.n - wit.m;
      auto clashes = [&](const Word& cand) {
        return std::any_of(frozen.begin(), frozen.end(),
                           [&](const Word& z) { return !incomparable(z, cand); });
      };
      if (!is_inner(wit.u) || !is_inner(wit.v) || !incomparable(wit.u, wit.v) ||
          clashes(wit.u) || clashes(wit.v))
        continue;
      if (!has_branch_pair(power(f, e), wit.u, wit.v))
        throw InternalError("incomparable_pairs: witness power lacks the branch pair");
      out.push_back({wit.u, wit.v, e});
      frozen.push_back(wit.u);
      frozen.push_back(wit.v);
      placed = true;
      break;
    }
    if (!placed) throw InternalError("incomparable_pairs: could not avoid collisions");
  }
  std::vector<Word> all = frozen;
  verify_incomparable_inner(all);
  return out;
}

std::vector<Word> tree_with_branches(const std::vector<Word>& required) {
  if (required.empty()) throw InvalidElement("tree_with_branches: no required words");
  for (const Word& w : required) {
    if (w.empty() || !is_valid_word(w))
      throw InvalidElement("tree_with_branches: invalid word");
    for (const Word& z : required)
      if (&w != &z && !incomparable(w, z))
        throw InvalidElement("tree_with_branches: required words comparable");
  }
  std::vector<Word> leaves;
  auto needs_split = [&](const Word& prefix) {
    return std::any_of(required.begin(), required.end(), [&](const Word& w) {
      return w.size() > prefix.size() && w.compare(0, prefix.size(), prefix) == 0;
    });
  };
  auto walk = [&](auto&& self, const Word& prefix) -> void {
    if (!prefix.empty() && !needs_split(prefix)) {
      leaves.push_back(prefix);
      return;
    }
    self(self, prefix + "0");
    self(self, prefix + "1");
  };
  walk(walk, "");
  return leaves;
}

Element successor_shift(const std::vector<Word>& leaves, std::size_t from_index,
                        std::size_t to_index) {
  std::size_t n = leaves.size();
  if (!(2 <= from_index && from_index <= to_index && to_index <= n - 1))
    throw InvalidElement("successor_shift: index range out of bounds");
  IntervalMapSpec spec;
  for (std::size_t i = from_index; i < to_index; ++i) {
    spec.sources.push_back(word_interval(leaves[i - 1]));
    spec.targets.push_back(word_interval(leaves[i]));
    spec.linear.push_back(true);
  }
  if (spec.sources.empty()) return Element::identity();
  Element h = map_intervals(spec);
  for (std::size_t i = from_index; i < to_index; ++i)
    if (!has_branch_pair(h, leaves[i - 1], leaves[i]))
      throw InternalError("successor_shift: missing shifted branch pair");
  return h;
}

}  // namespace fgroup

#ifndef FGROUP_ELEMENT_HPP
#define FGROUP_ELEMENT_HPP

#include "fgroup/words.hpp"

#include <nlohmann/json_fwd.hpp>

#include <utility>
#include <vector>

namespace fgroup {

// Image (log2 slope at 0+, log2 slope at 1-) in the rank-2 integer lattice.
struct AbelianImage {
  Int c, d;
  bool operator==(const AbelianImage&) const = default;
  AbelianImage operator+(const AbelianImage& o) const { return {c + o.c, d + o.d}; }
  AbelianImage operator-() const { return {-c, -d}; }
};

// One maximal affine piece t -> slope*t + offset on a dyadic domain interval.
struct AffinePiece {
  Interval domain;  // closed, dyadic endpoints
  Rat slope;        // integer power of 2
  Rat offset;       // dyadic
  Rat apply(const Rat& t) const { return slope * t + offset; }
};

// An element of Thompson's group F as its unique reduced tree diagram:
// an ordered list of branch pairs u_i -> v_i. Both branch lists are the
// left-to-right leaves of full binary trees. Immutable after construction;
// equality is structural equality of the canonical form. The identity is
// the trivial diagram with the single pair "" -> "".
class Element {
 public:
  using Pair = std::pair<Word, Word>;

  Element() : pairs_{{Word(), Word()}} {}  // identity
  static Element identity();
  static Element from_branch_pairs(std::vector<Pair> pairs);
  static const Element& x0();
  static const Element& x1();

  const std::vector<Pair>& pairs() const { return pairs_; }
  bool is_identity() const { return pairs_.size() == 1 && pairs_[0].first.empty(); }
  bool operator==(const Element&) const = default;

 private:
  std::vector<Pair> pairs_;
};

// Composition is from left to right: compose(f,g) is t -> g(f(t)).
Element compose(const Element& f, const Element& g);
Element invert(const Element& f);
Element conjugate(const Element& g, const Element& sigma);  // sigma^-1 g sigma
Element power(const Element& f, long n);

// Copy of f acting inside [w] (scaled by the affine bijection [0,1] -> [w]),
// identity outside.
Element embed(const Element& f, const Word& w);

Rat evaluate(const Element& f, const Rat& t);
AbelianImage abelianization(const Element& f);
std::vector<AffinePiece> to_pieces(const Element& f);
Element from_pieces(const std::vector<AffinePiece>& pieces);

// True iff f maps [u] affinely onto [v]. u, v non-empty.
bool has_branch_pair(const Element& f, const Word& u, const Word& v);
bool has_branch_pair(const std::vector<AffinePiece>& pieces, const Word& u, const Word& v);

// Exact PL equality of f and g restricted to a closed interval.
bool restrictions_equal(const Element& f, const Element& g, const Interval& interval);

// Branch-pair syntax "{u->v, ...}" ("{->}" is the identity) or generator-word
// syntax over x0, x1 with optional '*' separators and integer exponents
// ("x0^-1 x1^2"). The empty string parses as the identity.
Element parse_element(const std::string& text);
std::string serialize(const Element& f);

nlohmann::json element_to_json(const Element& f);
Element element_from_json(const nlohmann::json& j);

}  // namespace fgroup

#endif

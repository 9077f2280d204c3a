#ifndef FGROUP_CONSTRUCT_HPP
#define FGROUP_CONSTRUCT_HPP

#include "fgroup/dynamics.hpp"

namespace fgroup {

// Ordered source/target interval lists for an interval-mapping element.
// Sources and targets are closed intervals with dyadic endpoints, strictly
// ordered left to right, with matching boundary-sharing patterns and matching
// membership of 0 and 1. Where linear is set the length ratio must be a
// power of 2 and the element maps that source affinely.
struct IntervalMapSpec {
  std::vector<Interval> sources;
  std::vector<Interval> targets;
  std::vector<bool> linear;
};

// Element of F mapping each source onto its target (affinely where flagged).
Element map_intervals(const IntervalMapSpec& spec);

// Element agreeing with g_i on interval i for every i. Intervals need dyadic
// endpoints; the image intervals g_i(I_i) must fit together as in
// map_intervals. Agreement is verified by exact PL restriction comparison.
Element patchwork(const std::vector<std::pair<Interval, Element>>& pieces);

// Conjugator sigma with conjugate(g, sigma) equal to f on [x,y] exactly and
// [x,y] inside the sigma-image of g's orbital; identity on fix when given.
// orb_f and orb_g must have the same direction and [x,y] must lie in orb_f.
Element conjugator_on_interval(const Element& f, const Orbital& orb_f,
                               const Element& g, const Orbital& orb_g,
                               Rat x, Rat y,
                               std::optional<Interval> fix = std::nullopt,
                               long cap = kDefaultIterationCap);

// An inner-word identification u ~ v witnessed by a branch pair of f^exponent.
struct InnerPairWitness {
  Word u, v;
  long exponent;
};

// For each non-identity f_i one witnessed pair, all 2k words pairwise
// incomparable and inner.
std::vector<InnerPairWitness> incomparable_pairs(const std::vector<Element>& elements);

// Witnessed pair anchored below a common word w: f^{m} carries w -> u and
// f^{n} carries w -> v.
struct AnchoredWitness {
  Word u, v;
  long m, n;
};

struct AnchoredPairs {
  std::vector<AnchoredWitness> pairs;  // indexed like the input set
  Word w;
};

// Incomparable inner words with [u_i],[v_i] < [w] and u_i ~ v_i ~ w through
// powers of f_i, built around a point beta unfixed by every element.
AnchoredPairs anchored_pairs(const std::vector<Element>& elements, const Rat& beta,
                             long power_bound = 64);

// Leaves, left to right, of the minimal full binary tree having every
// required (pairwise incomparable) word as a leaf.
std::vector<Word> tree_with_branches(const std::vector<Word>& required);

// Element with branch pairs leaves[i] -> leaves[i+1] for from_index <= i <
// to_index (1-based leaf indices, 2 <= from <= to <= n-1).
Element successor_shift(const std::vector<Word>& leaves, std::size_t from_index,
                        std::size_t to_index);

}  // namespace fgroup

#endif

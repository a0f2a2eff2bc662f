#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "meettree/pautomorph.hpp"

namespace meettree {

/// Exact rational, normalized, den > 0. Dense-linear-order arguments only
/// ever need midpoints and "one below the minimum", so values stay small.
struct Fraction {
  long long num = 0;
  long long den = 1;

  Fraction() = default;
  Fraction(long long n, long long d = 1);

  friend bool operator==(const Fraction&, const Fraction&) = default;
  bool operator<(const Fraction& o) const;
  bool operator<=(const Fraction& o) const { return *this == o || *this < o; }

  static Fraction midpoint(const Fraction& a, const Fraction& b);
  Fraction minus_one() const { return Fraction(num - den, den); }
  Fraction plus_one() const { return Fraction(num + den, den); }
  std::string str() const;
};

/// Finite snapshot of a dense unbounded linear order: a sorted set of
/// rationals, grown by midpoint / below-minimum insertion on demand.
using LinearOrder = std::vector<Fraction>;
void insert_point(LinearOrder& l, const Fraction& x);
bool contains(const LinearOrder& l, const Fraction& x);

/// Order-preserving finite partial injection; pairs sorted by source.
struct LinMap {
  std::vector<std::pair<Fraction, Fraction>> pairs;

  std::optional<Fraction> apply(const Fraction& x) const;
  std::optional<Fraction> invert(const Fraction& y) const;
  bool valid() const;  // strictly increasing
  void add(const Fraction& a, const Fraction& b);
  std::vector<Fraction> domain() const;
  std::vector<Fraction> range() const;
};

struct BothWaysExtension {
  LinearOrder order;
  LinMap map;   // g u {(d1,b),(b,d2)}
  Fraction d1, d2;
};

/// Two-sided extension through b <= g(a) <= a: a preimage for b and an image
/// of b, positioned inside the dense order (fresh points inserted as needed).
BothWaysExtension extend_linear_both_ways(const LinearOrder& l, const LinMap& g,
                                          const Fraction& a, const Fraction& b);

/// #{dom(g) <= b0} + #{range(g) <= b0}.
int cost(const Fraction& b0, const LinMap& g);

struct AutPair {
  LinearOrder order;
  LinMap g1, g2;
  Fraction anchor;
};

/// Least point reachable from the anchor by g1, g2 and their inverses.
Fraction orbit_minimum(const AutPair& pair);

/// Greedy descent on C_m: while a one-point extension of either map at the
/// orbit minimum lowers the cost sum, apply it. The result has the orbit
/// minimum in exactly one of the four domain/range slots.
AutPair minimize_pair(const AutPair& pair);

/// Word over the two maps (entries 1, -1, 2, -2, applied left to right) plus
/// one atomic comparison; evaluating under the two output pairs yields
/// opposite truth values, which certifies irreconcilability.
struct DistinguishingWord {
  std::vector<int> word;
  int atom_map = 2;          // which map the atom applies
  bool atom_inverse = false; // apply its inverse
  // atom: map(word(anchor)) > word(anchor)
};

struct IrreconcilablePair {
  AutPair plus;   // the c -> c+ branch
  AutPair minus;  // the c -> c- branch
  DistinguishingWord word;
};

IrreconcilablePair irreconcilable_extensions(const AutPair& minimal);

/// Evaluates word+atom under a pair; nullopt when some application is undefined.
std::optional<bool> evaluate_word(const AutPair& pair, const DistinguishingWord& w);

struct ExhaustSearchReport {
  bool common_extension_found = false;
  int max_size = 0;
  std::uint64_t nodes = 0;
};

/// Exhaustive search for a joint extension of the two pairs over linear
/// orders of at most max_size points, with the anchors identified.
ExhaustSearchReport exhaust_no_common_extension(const IrreconcilablePair& ip, int max_size,
                                                Budget* nodes = nullptr);

struct TreeAutPair {
  PartialAutomorphism p1, p2;  // over a common tree
  ElementId anchor;
};

struct TreeIrreconcilable {
  MeetTree tree;  // the enlarged common tree
  TreeAutPair plus, minus;
  DistinguishingWord word;
};

/// Runs the linear construction inside the branch below the anchor and unions
/// the result with the ambient maps. Requires p1(a) = p2(a) < a.
TreeIrreconcilable lift_to_tree(const MeetTree& m, const PartialAutomorphism& p1,
                                const PartialAutomorphism& p2, ElementId anchor);

/// Word evaluation at tree level (maps applied by element).
std::optional<bool> evaluate_word_on_tree(const MeetTree& t, const PartialAutomorphism& g1,
                                          const PartialAutomorphism& g2, ElementId anchor,
                                          const DistinguishingWord& w);

}  // namespace meettree

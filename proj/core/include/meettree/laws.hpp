#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meettree/pautomorph.hpp"

namespace meettree {

struct LawReport {
  std::uint64_t checked = 0;
  std::vector<std::string> violations;
  bool clean() const { return violations.empty(); }
};

/// Ultrametric-style meet laws over all enumerated trees up to max_size:
/// a/\b/\c equals a/\b or a/\c; a/\b > a/\c forces a/\c = b/\c; and the
/// non-strict variant a/\b >= a/\c forces a/\c <= b/\c.
LawReport check_meet_laws(int max_size, Budget* nodes = nullptr);

/// All valid partial maps on each enumerated tree up to max_size.
std::vector<PartialAutomorphism> enumerate_pautos(const MeetTree& t);
std::vector<std::pair<MeetTree, std::vector<PartialAutomorphism>>> pauto_corpus(int max_tree_size);

/// Orbit laws on one orbit: spiral comparability/collapse/divisibility,
/// comb order-type transport, pseudo-period time-reversal invariance,
/// quasi-cycle congruence collapse, and the cycle/quasi-cycle meet identity.
void check_orbit_laws(const MeetTree& t, const Orbit& o, LawReport& report);

/// Orbit laws over every orbit of every partial automorphism on enumerated
/// trees up to max_tree_size.
LawReport check_orbit_laws_enumerated(int max_tree_size, Budget* nodes = nullptr);

struct GeneratedOrbit {
  MeetTree tree;
  Orbit orbit;
  OrbitClass cls;
};

/// Search-generated spiral/comb/quasi-cycle exemplars grown to max_len by
/// class-preserving extension steps, plus the seeds they grew from.
std::vector<GeneratedOrbit> generate_orbit_corpus(int max_len, Budget* nodes = nullptr);

LawReport check_orbit_laws_generated(int max_len, Budget* nodes = nullptr);

/// Order-language reformulation of arity used as an independent oracle:
/// the largest antichain where common lower bounds of two members bound all
/// members. Checked equal to arity() on enumerated trees in the tests.
int arity_order_oracle(const MeetTree& t);

}  // namespace meettree

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "meettree/pautomorph.hpp"

namespace meettree {

struct AmalgError : std::runtime_error {
  AmalgError(std::string kind_, const std::string& what)
      : std::runtime_error(kind_ + ": " + what), kind(std::move(kind_)) {}
  std::string kind;  // agreement-violation | bad-problem | ...
};

/// Base embeds into left and right by label inclusion; the side maps restrict
/// to the base map on base labels.
struct AmalgProblem {
  PartialAutomorphism base;
  PartialAutomorphism left;
  PartialAutomorphism right;
};

using LabelMap = std::vector<std::pair<std::string, std::string>>;

struct AmalgSolution {
  PartialAutomorphism amalgam;
  LabelMap left_embedding;
  LabelMap right_embedding;
};

/// A v_v B: disjoint union plus a fresh minimum v, every cross meet equal to
/// v; the union map leaves v out of its domain.
struct JointEmbedding {
  PartialAutomorphism combined;
  LabelMap left_embedding;
  LabelMap right_embedding;
  std::string bottom_label;
};
JointEmbedding joint_embed(const PartialAutomorphism& a, const PartialAutomorphism& b);

/// Enlarges the problem so the base is downward closed in both sides.
/// Cross elements sitting in the same gap of the base are kept incomparable
/// and their meet is materialized as a fresh point in that gap.
AmalgProblem down_close_triple(const AmalgProblem& p);

/// Amalgamation of meet-trees with total automorphisms: down-closure, shared
/// completion, then union with cross meets through the base. The completion
/// bottom is pruned when nothing references it.
AmalgSolution amalgamate_total(const AmalgProblem& p);

bool is_total_automorphism(const PartialAutomorphism& p);

struct ExhaustionReport {
  int maxsize = 0;
  std::optional<int> arity_bound;
  std::uint64_t nodes = 0;
  std::string frontier_digest;  // FNV-1a over the canonically ordered search frontier
};

struct BruteForceOutcome {
  std::optional<AmalgSolution> solution;
  ExhaustionReport report;  // populated also on success (nodes searched so far)
  bool exhausted() const { return !solution.has_value(); }
};

/// Exhaustive amalgamation search in the class of finite meet-trees with
/// partial automorphisms: all target trees up to maxsize (respecting the
/// arity bound when given), all pairs of embeddings agreeing on the base,
/// minimal induced map validated. First solution in canonical order, or a
/// certified exhaustion report.
BruteForceOutcome brute_force_amalgam_k1(const AmalgProblem& p, int maxsize,
                                         std::optional<int> arity_bound = std::nullopt,
                                         Budget* nodes = nullptr);

struct NonApWitness {
  AmalgProblem problem;  // the k-star cycled over a fixed point vs a fixed extension
  ExhaustionReport bounded;            // exhaustion under the arity bound
  std::optional<AmalgSolution> unbounded;  // a solution once the bound is dropped
};

/// The bounded-arity failure instance: base one fixed point b, left a k-star
/// over b cycled by the map, right one fixed point above b. Certifies that no
/// amalgam of arity <= k exists up to maxsize, and that one exists without
/// the bound.
NonApWitness nonAP_witness(int k, int maxsize, Budget* nodes = nullptr);

/// Seeded generator of amalgamation problems with total automorphisms and
/// sides of at most max_side elements. Deterministic for a fixed seed.
AmalgProblem make_random_total_problem(std::mt19937_64& rng, int max_side = 5);

}  // namespace meettree

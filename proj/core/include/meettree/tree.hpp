#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "meettree/budget.hpp"

namespace meettree {

using ElementId = int;

/// A finite meet-tree: a semilinear partial order in which every pair of
/// elements has a meet (greatest common lower bound). Values are immutable;
/// the "with_*" helpers return enlarged copies.
///
/// Elements are identified by their index (insertion order); the index order
/// doubles as the canonical element order used for tie-breaking everywhere.
class MeetTree {
 public:
  static constexpr int kMaxElements = 64;

  MeetTree() = default;

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(ElementId e) const { return labels_[e]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<ElementId> find(std::string_view label) const;

  bool leq(ElementId a, ElementId b) const { return (below_[b] >> a) & 1u; }
  bool lt(ElementId a, ElementId b) const { return a != b && leq(a, b); }
  bool comparable(ElementId a, ElementId b) const { return leq(a, b) || leq(b, a); }
  ElementId meet(ElementId a, ElementId b) const { return meets_[a][b]; }

  /// Bitmask of {x : x <= e}.
  std::uint64_t down_mask(ElementId e) const { return below_[e]; }

  /// Every finite meet-tree has a global minimum.
  ElementId root() const { return root_; }
  std::optional<ElementId> parent(ElementId e) const;
  std::vector<ElementId> children(ElementId e) const;

  /// New element strictly between everything below m and m itself
  /// (covers exactly the old down-set of m).
  MeetTree with_inserted_below(ElementId m, const std::string& label, ElementId* out) const;
  /// New element on a fresh branch: above everything <= e, incomparable to
  /// the rest; its meet with any x is meet(e, x).
  MeetTree with_fresh_branch_at(ElementId e, const std::string& label, ElementId* out) const;
  /// New global minimum below the current root.
  MeetTree with_new_root(const std::string& label, ElementId* out) const;

  std::string fresh_label() const;

  bool same_labeled_structure(const MeetTree& other) const {
    return labels_ == other.labels_ && below_ == other.below_;
  }

  // Internal: build from a validated down-set matrix. below[i] bit j set iff j <= i.
  static MeetTree from_down_masks(std::vector<std::string> labels, std::vector<std::uint64_t> below);

 private:
  std::vector<std::string> labels_;
  std::vector<std::uint64_t> below_;
  std::vector<std::vector<std::uint8_t>> meets_;
  ElementId root_ = 0;

  void compute_meets_and_root();
};

struct Violation {
  std::string kind;                  // non-order | non-semilinear | missing-meet | wrong-meet | ...
  std::vector<std::string> witness;  // offending labels
};

struct TreeValidation {
  std::optional<MeetTree> tree;
  std::vector<Violation> violations;
  bool ok() const { return tree.has_value(); }
};

/// Checks the meet-tree axioms on a raw (elements, leq generators, optional
/// meet table) description. leq pairs may be any generators; the reflexive
/// transitive closure is taken first. On success the meet table is completed
/// (the expansion is unique); supplied meet entries are cross-checked.
TreeValidation validate_tree(
    const std::vector<std::string>& labels,
    const std::vector<std::pair<std::string, std::string>>& leq_pairs,
    const std::vector<std::tuple<std::string, std::string, std::string>>& meet_entries = {});

/// Meet-closure of S: S together with all pairwise meets. One round suffices.
std::vector<ElementId> generated_substructure(const MeetTree& t, const std::vector<ElementId>& s);

/// {x : x <= s for some s in S}.
std::vector<ElementId> downward_closure(const MeetTree& t, const std::vector<ElementId>& s);

/// Largest k such that some k elements have all pairwise meets equal to one
/// common element not among them; 1 for chains and singletons.
int arity(const MeetTree& t);

struct Completion {
  MeetTree tree;        // input tree plus one new minimum, appended last
  ElementId bottom;     // the adjoined minimum (the empty cut)
  // The embedding of the input is the identity on element ids.
};

/// The tree of all cuts (downward-closed chains, including the empty one)
/// ordered by inclusion. For a finite tree this is the input with one new
/// global minimum adjoined.
Completion completion(const MeetTree& t);

/// Canonical label: equal for two trees iff they are isomorphic meet-trees.
/// Rooted-tree code on the completion, children sorted by recursive code.
std::string canonical_form(const MeetTree& t);

/// Extract the induced sub-meet-tree on a meet-closed id set. Returns the
/// subtree and, via out parameter, old-id -> new-id.
MeetTree subtree_on(const MeetTree& t, const std::vector<ElementId>& ids,
                    std::vector<ElementId>* old_to_new = nullptr);

/// One representative per isomorphism class, sizes 1..max_size, ordered by
/// (size, canonical_form).
std::vector<MeetTree> enumerate_trees(int max_size, Budget* budget = nullptr);

}  // namespace meettree

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "meettree/tree.hpp"

namespace meettree {

/// Canonical form of a quantifier-free 1-type over a meet-closed subset A of
/// a tree. b' = max{x /\ b : x in A} is the projection of the typed point
/// onto A's branches; the descriptor records where b' sits (a cut in the
/// chain below the anchor, realized by an element of A or not) and whether
/// the typed point lies strictly above b'.
struct OneTypeDescriptor {
  ElementId anchor = -1;          // least element of A above b'
  bool strict_above = false;      // b != b'
  std::vector<ElementId> cut;     // {x in A : x <= b'}, ascending ids
  std::optional<ElementId> realized_at;  // set iff b' in A; then == max(cut)

  friend auto operator<=>(const OneTypeDescriptor&, const OneTypeDescriptor&) = default;
};

struct PointedExtension {
  MeetTree tree;
  ElementId new_point = -1;
  std::optional<ElementId> new_meet_point;  // materialized cut position, when the cut was unrealized
};

/// The type of b over the meet-closed subset A (b need not be in A).
OneTypeDescriptor qf_type_of(const MeetTree& t, ElementId b, const std::vector<ElementId>& a);

/// All 1-types over A realizable in a dense unrooted meet-tree extending A.
/// Exactly 4|A| of them: per element a realized cut (point equal to it, or
/// branching off just above it), per element an unrealized cut immediately
/// below it (point inside the gap, or branching off inside the gap).
std::vector<OneTypeDescriptor> enumerate_one_types(const MeetTree& t, const std::vector<ElementId>& a);
std::vector<OneTypeDescriptor> enumerate_one_types(const MeetTree& a);

/// Extends the ambient tree by a fresh point whose type over A is t, adding a
/// fresh meet point when t's cut is unrealized. For the realized non-strict
/// type (which pins the point to an existing element of A) the tree is
/// returned unchanged with new_point set to that element.
PointedExtension realize_type(const MeetTree& t, const std::vector<ElementId>& a,
                              const OneTypeDescriptor& d);
PointedExtension realize_type(const MeetTree& a, const OneTypeDescriptor& d);

std::string describe(const MeetTree& t, const OneTypeDescriptor& d);

}  // namespace meettree

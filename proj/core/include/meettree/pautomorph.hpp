#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "meettree/tree.hpp"
#include "meettree/types.hpp"

namespace meettree {

/// A finite partial automorphism of a meet-tree, kept in closed form: the
/// domain is a substructure (meet-closed) and the map is an isomorphism onto
/// its image. Built through validate_pauto.
class PartialAutomorphism {
 public:
  PartialAutomorphism() = default;
  PartialAutomorphism(MeetTree tree, std::vector<ElementId> image)
      : tree_(std::move(tree)), image_(std::move(image)) {}

  const MeetTree& tree() const { return tree_; }
  bool defined(ElementId e) const { return image_[e] >= 0; }
  ElementId apply(ElementId e) const { return image_[e]; }
  /// p^k(e), or -1 when undefined along the way. Negative k walks backwards.
  ElementId power(ElementId e, int k) const;
  std::optional<ElementId> preimage(ElementId e) const;

  std::vector<ElementId> domain() const;
  std::vector<ElementId> range() const;
  std::vector<std::pair<ElementId, ElementId>> pairs() const;
  bool in_range(ElementId e) const;
  int map_size() const;

  PartialAutomorphism on_tree(MeetTree bigger) const;

 private:
  MeetTree tree_;
  std::vector<ElementId> image_;
};

struct PautoValidation {
  std::optional<PartialAutomorphism> closed;  // the unique extension to the generated substructure
  std::optional<Violation> witness;           // set on failure
  bool ok() const { return closed.has_value(); }
};

/// Accepts iff extending the map by x/\y -> f(x)/\f(y) yields a well-defined
/// isomorphism between the generated substructures of domain and range.
/// Witness kinds: order-violation, meet-image-mismatch, injectivity-clash,
/// not-injective, bad-pair.
PautoValidation validate_pauto(const MeetTree& t,
                               const std::vector<std::pair<ElementId, ElementId>>& map_pairs);
PautoValidation validate_pauto_labels(
    const MeetTree& t, const std::vector<std::pair<std::string, std::string>>& map_pairs);

struct Orbit {
  std::vector<ElementId> points;  // eta_0 .. eta_n, distinct
  bool cyclic = false;            // the map sends the last point back to the first
};

enum class OrbitKind {
  kCycle,
  kAscendingSpiral,
  kDescendingSpiral,
  kAscendingComb,
  kDescendingComb,
  kQuasiCycle,
};

struct OrbitClass {
  OrbitKind kind;
  int parameter;  // period / spiral length / pseudo-period
  friend bool operator==(const OrbitClass&, const OrbitClass&) = default;
};

std::string to_string(OrbitKind k);

/// Maximal orbits partitioning dom(p) u range(p), ordered by least point label.
std::vector<Orbit> orbit_decomposition(const PartialAutomorphism& p);

/// First-match case analysis: cycle, spiral, comb, else quasi-cycle.
OrbitClass classify_orbit(const MeetTree& t, const Orbit& o);

/// Smallest u > 0 where eta_0 /\ eta_u attains max_i eta_0 /\ eta_i.
int pseudo_period(const MeetTree& t, const Orbit& o);

/// Domain points outside the range, plus every point of a cyclic orbit.
std::vector<ElementId> initial_points(const PartialAutomorphism& p);

Orbit time_reverse(const Orbit& o);

struct NoNoncyclicOrbit : std::runtime_error {
  NoNoncyclicOrbit() : std::runtime_error("partial automorphism has no non-cyclic orbit") {}
};

struct ImmediateExtension {
  PartialAutomorphism extended;  // p u {(xi_n, nu)} on the (possibly grown) tree
  OneTypeDescriptor type;        // type of nu over gen(dom u range)
  ElementId endpoint;            // xi_n
  ElementId new_image;           // nu
};

/// The shortest non-cyclic orbit (ties broken by lexicographically least
/// label sequence) is extended at its endpoint by every type over
/// A = gen(dom u range) that validates. Throws NoNoncyclicOrbit.
std::vector<ImmediateExtension> immediate_extensions(const PartialAutomorphism& p);

/// The orbit whose endpoint immediate_extensions would extend.
Orbit shortest_noncyclic_orbit(const PartialAutomorphism& p);

struct LinearUnionResult {
  std::optional<PartialAutomorphism> united;
  std::optional<Violation> failure;  // failing precondition, with witness
  bool ok() const { return united.has_value(); }
};

/// f u g for partial automorphisms of one tree, under the branchwise
/// compatibility hypothesis: every eta in dom(f) has a witness a >= eta in
/// dom(g) with g restricted to the branch below a contained in f.
LinearUnionResult linear_union(const PartialAutomorphism& f, const PartialAutomorphism& g,
                               const std::function<ElementId(ElementId)>& witness);
LinearUnionResult linear_union(const PartialAutomorphism& f, const PartialAutomorphism& g,
                               ElementId constant_witness);

/// Deduplication key: canonical tree code plus the map pair set minimized
/// over the tree's automorphism group.
std::string canonical_pauto_key(const PartialAutomorphism& p);

/// All automorphisms of t, as permutation vectors.
std::vector<std::vector<ElementId>> tree_automorphisms(const MeetTree& t);

}  // namespace meettree

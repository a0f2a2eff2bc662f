#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "meettree/orbitlab.hpp"
#include "meettree/pautomorph.hpp"

namespace meettree {

/// Marked canonical code of the substructure generated by an ordered triple;
/// equal codes exactly when the coordinatewise matching extends to an
/// isomorphism of the generated substructures.
std::string triple_type(const MeetTree& t, ElementId a, ElementId b, ElementId c);

struct PecWitnessQuery {
  std::string eta0, mu0, zeta0;  // initial points, by label
  int m1 = 0, m2 = 0;
  std::string triple;                         // triple_type of (eta0, q^m1 mu0, q^m2 zeta0)
  std::optional<std::pair<int, int>> residue; // (m1 mod k, k) when the spiral-length k exists
};

struct ExtensionStep {
  std::string endpoint;  // orbit endpoint extended, by label
  OneTypeDescriptor type;
};

struct PecCheckResult {
  bool pass = true;
  std::optional<PecWitnessQuery> counterexample;
  std::vector<ExtensionStep> trace;          // steps building the offending extension
  std::optional<PartialAutomorphism> offending_q;
};

/// Bounded verification of pseudo existential closedness: quantifies over
/// the frontier of at most `depth` single-point forward orbit extensions
/// (over all realizable one-types) instead of all extensions inside the
/// universal tree; verdicts are relative to that depth.
PecCheckResult check_pec(const PartialAutomorphism& p, int depth, Budget* nodes = nullptr);

struct PecCloseResult {
  PartialAutomorphism closed;
  int rounds = 0;
  bool reached_fixpoint = false;
  std::optional<PecWitnessQuery> surviving;  // on iteration-cap exhaustion
};

/// Three-step closure: witness spiral/comb class transitions per orbit, then
/// repair check_pec counterexamples by adopting the offending extension,
/// iterating to a fixpoint of check_pec at the given depth.
PecCloseResult pec_close(const PartialAutomorphism& p, int depth, int iteration_cap = 64,
                         Budget* nodes = nullptr);

struct ConsequencesReport {
  std::vector<std::string> violations;
  bool clean() const { return violations.empty(); }
};

/// Checks the behaviour an extension f of a PEC map must exhibit: spiral
/// inequalities already visible, orbit classes and parameters preserved,
/// distinct orbits kept distinct. Violations are reported, not thrown; on a
/// genuinely PEC input they indicate a bug, on a negative control they are
/// expected evidence.
ConsequencesReport consequences_check(const PartialAutomorphism& p, const PartialAutomorphism& f);

struct DeterminedStep {
  int extension_count = 0;
  std::vector<ImmediateExtension> extensions;
};

/// Counts the distinct one-types over gen(dom u range) by which the shortest
/// non-cyclic orbit endpoint extends. Count one is the determined case.
DeterminedStep check_determined_step(const PartialAutomorphism& p);

struct CertificateStep {
  std::string endpoint;
  OneTypeDescriptor type;
};

struct DeterminismCertificate {
  bool success = false;
  std::vector<CertificateStep> per_step;
  int failed_at = -1;        // step index when not successful
  int failure_count = 0;     // extension count observed at the failing step
  PartialAutomorphism final_map;
};

/// Iterates check_determined_step up to `steps` times, extending by the
/// unique type each time. A map with no non-cyclic orbit is trivially
/// certified with an empty step list.
DeterminismCertificate determinism_certificate(const PartialAutomorphism& p, int steps);

/// Re-runs every certified step and confirms uniqueness and type equality.
bool replay_certificate(const PartialAutomorphism& p, const DeterminismCertificate& cert);

/// Orbits of p classified as quasi-cycles (the closure may retain some; this
/// is measured and reported, never asserted away).
int count_quasicycle_orbits(const PartialAutomorphism& p);

}  // namespace meettree

#include "meettree/orbitlab.hpp"

#include <algorithm>

namespace meettree {

PartialAutomorphism consecutive_map(const MeetTree& t, const Orbit& o) {
  std::vector<std::pair<ElementId, ElementId>> pairs;
  for (size_t i = 0; i + 1 < o.points.size(); ++i) pairs.emplace_back(o.points[i], o.points[i + 1]);
  if (o.cyclic) pairs.emplace_back(o.points.back(), o.points.front());
  PautoValidation val = validate_pauto(t, pairs);
  if (!val.ok()) throw std::invalid_argument("orbit is not a partial orbit of its tree");
  return std::move(*val.closed);
}

namespace {

// one forward step of the orbit's consecutive map, over all realizable types
std::vector<OrbitExtension> one_step(const MeetTree& t, const Orbit& o, Budget& nodes) {
  std::vector<OrbitExtension> out;
  std::vector<ElementId> a = generated_substructure(t, o.points);
  PartialAutomorphism cons = consecutive_map(t, o);
  for (const OneTypeDescriptor& ty : enumerate_one_types(t, a)) {
    nodes.charge();
    PointedExtension ext = realize_type(t, a, ty);
    auto pairs = cons.pairs();
    pairs.emplace_back(o.points.back(), ext.new_point);
    if (!validate_pauto(ext.tree, pairs).ok()) continue;
    OrbitExtension oe;
    oe.tree = std::move(ext.tree);
    oe.added_types = {ty};
    if (ext.new_point == o.points.front()) {
      oe.orbit = Orbit{o.points, true};
    } else {
      oe.orbit = o;
      oe.orbit.points.push_back(ext.new_point);
    }
    oe.cls = classify_orbit(oe.tree, oe.orbit);
    out.push_back(std::move(oe));
  }
  return out;
}

}  // namespace

std::vector<OrbitExtension> enumerate_orbit_extensions(const MeetTree& t, const Orbit& o,
                                                       int budget, Budget* nodes) {
  if (budget < 0 || budget > kOrbitExtensionBudgetCap)
    throw std::invalid_argument("orbit extension budget exceeded (cap " +
                                std::to_string(kOrbitExtensionBudgetCap) + ")");
  Budget local;
  Budget& b = nodes ? *nodes : local;
  std::vector<OrbitExtension> out;
  if (o.cyclic || budget == 0) return out;
  std::vector<OrbitExtension> frontier = one_step(t, o, b);
  for (int depth = 1; depth <= budget && !frontier.empty(); ++depth) {
    for (const OrbitExtension& oe : frontier) out.push_back(oe);
    if (depth == budget) break;
    std::vector<OrbitExtension> next;
    for (const OrbitExtension& prev : frontier) {
      if (prev.orbit.cyclic) continue;
      for (OrbitExtension& grown : one_step(prev.tree, prev.orbit, b)) {
        grown.added_types.insert(grown.added_types.begin(), prev.added_types.begin(),
                                 prev.added_types.end());
        next.push_back(std::move(grown));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

QuasiCycleCompletion complete_quasicycle_to_cycle(const MeetTree& t, const Orbit& o, Budget* nodes) {
  OrbitClass cls = classify_orbit(t, o);
  if (cls.kind != OrbitKind::kQuasiCycle)
    throw ClassificationMismatch("complete_quasicycle_to_cycle: orbit is a " + to_string(cls.kind));
  Budget local;
  Budget& b = nodes ? *nodes : local;

  const int u = cls.parameter;
  const int n = static_cast<int>(o.points.size()) - 1;
  int target = ((n / u) + 1) * u;  // least multiple of u exceeding n

  MeetTree tree = t;
  Orbit cur = o;
  int added = 0;
  while (static_cast<int>(cur.points.size()) < target) {
    std::vector<OrbitExtension> steps = one_step(tree, cur, b);
    const OrbitExtension* pick = nullptr;
    for (const OrbitExtension& s : steps) {
      if (s.orbit.cyclic) continue;
      if (s.cls.kind == OrbitKind::kQuasiCycle && s.cls.parameter == u) {
        pick = &s;
        break;
      }
    }
    if (!pick)
      throw std::runtime_error("quasi-cycle completion: no class-preserving continuation found");
    tree = pick->tree;
    cur = pick->orbit;
    ++added;
  }

  // close the cycle: eta_N := eta_0
  auto pairs = consecutive_map(tree, cur).pairs();
  pairs.emplace_back(cur.points.back(), cur.points.front());
  PautoValidation closed = validate_pauto(tree, pairs);
  if (!closed.ok())
    throw std::runtime_error("quasi-cycle completion: closing pair failed validation");
  Orbit cycle{cur.points, true};
  return QuasiCycleCompletion{std::move(tree), std::move(cycle), added};
}

}  // namespace meettree

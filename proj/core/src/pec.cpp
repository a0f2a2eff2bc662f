#include "meettree/pec.hpp"

#include <algorithm>
#include <deque>

namespace meettree {

namespace {

ElementId root_of(const MeetTree& t, const std::vector<ElementId>& ids) {
  ElementId r = ids.front();
  for (ElementId x : ids)
    if (t.leq(x, r)) r = x;
  return r;
}

std::string code_in_subset(const MeetTree& t, const std::vector<ElementId>& ids, ElementId v,
                           const std::vector<ElementId>& marks) {
  std::string m;
  for (size_t i = 0; i < marks.size(); ++i)
    if (marks[i] == v) m += static_cast<char>('1' + i);
  std::vector<std::string> child_codes;
  for (ElementId w : ids) {
    if (w == v || !t.lt(v, w)) continue;
    bool covered = true;  // v is w's parent within the subset
    for (ElementId u : ids)
      if (u != v && u != w && t.lt(v, u) && t.lt(u, w)) covered = false;
    if (covered) child_codes.push_back(code_in_subset(t, ids, w, marks));
  }
  std::sort(child_codes.begin(), child_codes.end());
  std::string out = "(" + m;
  for (const auto& c : child_codes) out += c;
  return out + ")";
}

}  // namespace

std::string triple_type(const MeetTree& t, ElementId a, ElementId b, ElementId c) {
  std::vector<ElementId> ids = generated_substructure(t, {a, b, c});
  return code_in_subset(t, ids, root_of(t, ids), {a, b, c});
}

namespace {

struct ForwardProfile {
  std::vector<ElementId> points;  // x, q(x), q^2(x), ...
  bool cyclic = false;            // the walk returns to x
  int length() const {  // number of forward steps yielding distinct data
    return cyclic ? static_cast<int>(points.size())
                  : static_cast<int>(points.size()) - 1;
  }
};

ForwardProfile forward_profile(const PartialAutomorphism& q, ElementId x) {
  ForwardProfile fp;
  ElementId cur = x;
  while (true) {
    fp.points.push_back(cur);
    if (!q.defined(cur)) return fp;
    cur = q.apply(cur);
    if (cur == x) {
      fp.cyclic = true;
      return fp;
    }
  }
}

std::vector<ElementId> support_closure(const PartialAutomorphism& q) {
  std::vector<ElementId> support = q.domain();
  for (ElementId x : q.range()) support.push_back(x);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  if (support.empty()) return support;
  return generated_substructure(q.tree(), support);
}

struct OrbitGrowth {
  PartialAutomorphism q;
  std::vector<ExtensionStep> trace;
};

// all one-point forward extensions of the q-orbit through `start`
std::vector<OrbitGrowth> grow_orbit_once(const OrbitGrowth& state, ElementId start, Budget& nodes) {
  std::vector<OrbitGrowth> out;
  ForwardProfile fp = forward_profile(state.q, start);
  if (fp.cyclic) return out;
  ElementId endpoint = fp.points.back();
  std::vector<ElementId> a = support_closure(state.q);
  if (a.empty()) return out;
  for (const OneTypeDescriptor& ty : enumerate_one_types(state.q.tree(), a)) {
    nodes.charge();
    PointedExtension ext = realize_type(state.q.tree(), a, ty);
    auto pairs = state.q.pairs();
    pairs.emplace_back(endpoint, ext.new_point);
    PautoValidation val = validate_pauto(ext.tree, pairs);
    if (!val.ok()) continue;
    OrbitGrowth g;
    g.q = std::move(*val.closed);
    g.trace = state.trace;
    g.trace.push_back({state.q.tree().label(endpoint), ty});
    out.push_back(std::move(g));
  }
  return out;
}

// minimal k with q^{2k}(mu0) defined and mu0 /\ q^k != q^k /\ q^{2k}
std::optional<int> spiral_witness_k(const PartialAutomorphism& q, ElementId mu0) {
  ForwardProfile fp = forward_profile(q, mu0);
  if (fp.cyclic) return std::nullopt;
  const MeetTree& t = q.tree();
  int L = fp.length();
  for (int k = 1; 2 * k <= L; ++k) {
    ElementId a = t.meet(mu0, fp.points[k]);
    ElementId b = t.meet(fp.points[k], fp.points[2 * k]);
    if (a != b) return k;
  }
  return std::nullopt;
}

class PecChecker {
 public:
  PecChecker(const PartialAutomorphism& p, int depth, Budget& nodes)
      : p_(p), depth_(depth), nodes_(nodes) {
    orbits_ = orbit_decomposition(p);
    initials_ = initial_points(p);
    for (const Orbit& o : orbits_) {
      std::vector<ElementId> reps;
      if (o.cyclic)
        reps = o.points;
      else
        reps.push_back(o.points.front());
      reps_.push_back(std::move(reps));
    }
  }

  PecCheckResult run() {
    PecCheckResult res;
    int n = static_cast<int>(orbits_.size());
    for (int ia = 0; ia < n; ++ia)
      for (int ib = 0; ib < n; ++ib) {
        if (orbits_[ia].cyclic && orbits_[ib].cyclic) continue;
        if (!explore_pair(ia, ib, res)) return res;
      }
    return res;
  }

 private:
  int forward_len(const PartialAutomorphism& q, ElementId x) const {
    return forward_profile(q, x).length();
  }

  // witness table of p for a triple of initial points: triple code -> set of usable m1'
  const std::map<std::string, std::set<int>>& witnesses(ElementId e0, ElementId m0, ElementId z0) {
    auto key = std::tuple{e0, m0, z0};
    auto it = tables_.find(key);
    if (it != tables_.end()) return it->second;
    std::map<std::string, std::set<int>> tbl;
    int l1 = forward_len(p_, m0), l2 = forward_len(p_, z0);
    for (int m1 = 1; m1 <= l1; ++m1)
      for (int m2 = 1; m2 <= l2; ++m2) {
        nodes_.charge();
        std::string tt = triple_type(p_.tree(), e0, p_.power(m0, m1), p_.power(z0, m2));
        tbl[tt].insert(m1);
      }
    return tables_.emplace(key, std::move(tbl)).first->second;
  }

  bool query_ok(ElementId e0, ElementId m0, ElementId z0, int m1, int m2,
                const PartialAutomorphism& q, PecWitnessQuery* out) {
    std::string tt = triple_type(q.tree(), e0, q.power(m0, m1), q.power(z0, m2));
    std::optional<int> k = spiral_witness_k(q, m0);
    bool first_bullet = false;
    {
      ForwardProfile pp = forward_profile(p_, m0);
      if (!pp.cyclic && m1 > pp.length()) first_bullet = true;
    }
    const auto& tbl = witnesses(e0, m0, z0);
    int usable = 0;
    auto it = tbl.find(tt);
    if (it != tbl.end())
      for (int m1p : it->second)
        if (!k || (m1p % *k) == (m1 % *k)) ++usable;
    bool ok = first_bullet ? usable >= 2 : usable >= 1;
    if (!ok && out) {
      out->eta0 = p_.tree().label(e0);
      out->mu0 = p_.tree().label(m0);
      out->zeta0 = p_.tree().label(z0);
      out->m1 = m1;
      out->m2 = m2;
      out->triple = tt;
      if (k) out->residue = std::make_pair(m1 % *k, *k);
    }
    return ok;
  }

  // returns false when a counterexample was found (recorded in res)
  bool explore_pair(int ia, int ib, PecCheckResult& res) {
    OrbitGrowth root{p_, {}};
    std::deque<std::pair<OrbitGrowth, int>> queue;
    queue.emplace_back(std::move(root), 0);
    while (!queue.empty()) {
      auto [state, used] = std::move(queue.front());
      queue.pop_front();
      if (used > 0 && !run_queries(ia, ib, state, res)) return false;
      if (used == depth_) continue;
      std::vector<int> targets;
      targets.push_back(ia);
      if (ib != ia) targets.push_back(ib);
      for (int target : targets) {
        if (orbits_[target].cyclic) continue;
        for (OrbitGrowth& g : grow_orbit_once(state, orbits_[target].points.front(), nodes_))
          queue.emplace_back(std::move(g), used + 1);
      }
    }
    return true;
  }

  bool run_queries(int ia, int ib, const OrbitGrowth& state, PecCheckResult& res) {
    for (ElementId m0 : reps_[ia]) {
      int lp1 = forward_len(p_, m0);
      int lq1 = forward_len(state.q, m0);
      for (ElementId z0 : reps_[ib]) {
        int lp2 = forward_len(p_, z0);
        int lq2 = forward_len(state.q, z0);
        for (ElementId e0 : initials_) {
          for (int m1 = 1; m1 <= lq1; ++m1)
            for (int m2 = 1; m2 <= lq2; ++m2) {
              if (m1 <= lp1 && m2 <= lp2) continue;  // witnessed by itself inside p
              nodes_.charge();
              PecWitnessQuery cex;
              if (!query_ok(e0, m0, z0, m1, m2, state.q, &cex)) {
                res.pass = false;
                res.counterexample = std::move(cex);
                res.trace = state.trace;
                res.offending_q = state.q;
                return false;
              }
            }
        }
      }
    }
    return true;
  }

  const PartialAutomorphism& p_;
  int depth_;
  Budget& nodes_;
  std::vector<Orbit> orbits_;
  std::vector<ElementId> initials_;
  std::vector<std::vector<ElementId>> reps_;
  std::map<std::tuple<ElementId, ElementId, ElementId>, std::map<std::string, std::set<int>>>
      tables_;
};

}  // namespace

PecCheckResult check_pec(const PartialAutomorphism& p, int depth, Budget* nodes) {
  if (depth < 1) throw std::invalid_argument("check_pec: depth must be >= 1");
  Budget local;
  Budget& b = nodes ? *nodes : local;
  PecChecker checker(p, depth, b);
  return checker.run();
}

namespace {

constexpr int kStepOneBudget = 3;

bool is_spiral_or_comb(OrbitKind k) {
  return k == OrbitKind::kAscendingSpiral || k == OrbitKind::kDescendingSpiral ||
         k == OrbitKind::kAscendingComb || k == OrbitKind::kDescendingComb;
}

// step 1 of the closure: witness spiral/comb class transitions orbit by orbit
PartialAutomorphism witness_class_transitions(const PartialAutomorphism& p, Budget& nodes) {
  PartialAutomorphism cur = p;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Orbit& o : orbit_decomposition(cur)) {
      if (o.cyclic) continue;
      if (classify_orbit(cur.tree(), o).kind != OrbitKind::kQuasiCycle) continue;
      // breadth-first search for the nearest continuation that leaves the class
      std::deque<std::pair<OrbitGrowth, int>> queue;
      queue.emplace_back(OrbitGrowth{cur, {}}, 0);
      std::optional<PartialAutomorphism> adopted;
      while (!queue.empty() && !adopted) {
        auto [state, used] = std::move(queue.front());
        queue.pop_front();
        if (used == kStepOneBudget) continue;
        for (OrbitGrowth& g : grow_orbit_once(state, o.points.front(), nodes)) {
          ForwardProfile fp = forward_profile(g.q, o.points.front());
          if (!fp.cyclic) {
            Orbit grown{fp.points, false};
            if (is_spiral_or_comb(classify_orbit(g.q.tree(), grown).kind)) {
              adopted = g.q;
              break;
            }
          }
          queue.emplace_back(std::move(g), used + 1);
        }
      }
      if (adopted) {
        cur = std::move(*adopted);
        changed = true;
        break;
      }
    }
  }
  return cur;
}

}  // namespace

PecCloseResult pec_close(const PartialAutomorphism& p, int depth, int iteration_cap, Budget* nodes) {
  Budget local;
  Budget& b = nodes ? *nodes : local;
  PecCloseResult out;
  PartialAutomorphism cur = witness_class_transitions(p, b);
  for (int round = 1; round <= iteration_cap; ++round) {
    out.rounds = round;
    PecCheckResult res = check_pec(cur, depth, &b);
    if (res.pass) {
      out.closed = std::move(cur);
      out.reached_fixpoint = true;
      return out;
    }
    if (round == iteration_cap) {
      out.surviving = res.counterexample;
      break;
    }
    cur = witness_class_transitions(*res.offending_q, b);
  }
  out.closed = std::move(cur);
  out.reached_fixpoint = false;
  return out;
}

ConsequencesReport consequences_check(const PartialAutomorphism& p, const PartialAutomorphism& f) {
  ConsequencesReport report;
  std::vector<Orbit> pOrbits = orbit_decomposition(p);
  const MeetTree& pt = p.tree();
  const MeetTree& ft = f.tree();

  auto f_orbit_of = [&](ElementId start_label_in_p) -> Orbit {
    ElementId in_f = *ft.find(pt.label(start_label_in_p));
    for (const Orbit& fo : orbit_decomposition(f))
      for (ElementId x : fo.points)
        if (x == in_f) return fo;
    return Orbit{{in_f}, false};
  };

  std::vector<std::string> f_orbit_keys;
  for (size_t i = 0; i < pOrbits.size(); ++i) {
    const Orbit& po = pOrbits[i];
    Orbit fo = f_orbit_of(po.points.front());
    OrbitClass pc = classify_orbit(pt, po);
    OrbitClass fc = classify_orbit(ft, fo);

    if (fc.kind != OrbitKind::kQuasiCycle && fc.kind != OrbitKind::kCycle) {
      std::optional<int> k;
      int n = static_cast<int>(po.points.size()) - 1;
      for (int kk = 1; 2 * kk <= n && !k; ++kk)
        if (pt.meet(po.points[0], po.points[kk]) != pt.meet(po.points[kk], po.points[2 * kk]))
          k = kk;
      if (!k)
        report.violations.push_back("orbit at " + pt.label(po.points[0]) +
                                    ": spiral inequality not yet visible inside p");
      else if (*k != fc.parameter)
        report.violations.push_back("orbit at " + pt.label(po.points[0]) +
                                    ": minimal inequality index differs from the spiral length");
    }
    if (fc.kind != pc.kind ||
        (fc.kind != OrbitKind::kQuasiCycle && fc.parameter != pc.parameter)) {
      report.violations.push_back("orbit at " + pt.label(po.points[0]) + ": class changed from " +
                                  to_string(pc.kind) + " to " + to_string(fc.kind));
    }
    std::string key;
    for (ElementId x : fo.points) key += ft.label(x) + ",";
    f_orbit_keys.push_back(key);
  }
  for (size_t i = 0; i < pOrbits.size(); ++i)
    for (size_t j = i + 1; j < pOrbits.size(); ++j)
      if (f_orbit_keys[i] == f_orbit_keys[j])
        report.violations.push_back("orbits at " + pt.label(pOrbits[i].points[0]) + " and " +
                                    pt.label(pOrbits[j].points[0]) + " merged in the extension");
  return report;
}

DeterminedStep check_determined_step(const PartialAutomorphism& p) {
  DeterminedStep out;
  out.extensions = immediate_extensions(p);
  out.extension_count = static_cast<int>(out.extensions.size());
  return out;
}

DeterminismCertificate determinism_certificate(const PartialAutomorphism& p, int steps) {
  DeterminismCertificate cert;
  PartialAutomorphism cur = p;
  for (int s = 0; s < steps; ++s) {
    bool has_noncyclic = false;
    for (const Orbit& o : orbit_decomposition(cur))
      if (!o.cyclic) has_noncyclic = true;
    if (!has_noncyclic) break;  // vacuously determined
    DeterminedStep ds = check_determined_step(cur);
    if (ds.extension_count != 1) {
      cert.success = false;
      cert.failed_at = s;
      cert.failure_count = ds.extension_count;
      cert.final_map = std::move(cur);
      return cert;
    }
    cert.per_step.push_back(
        {cur.tree().label(ds.extensions[0].endpoint), ds.extensions[0].type});
    cur = ds.extensions[0].extended;
  }
  cert.success = true;
  cert.final_map = std::move(cur);
  return cert;
}

bool replay_certificate(const PartialAutomorphism& p, const DeterminismCertificate& cert) {
  if (!cert.success) return false;
  PartialAutomorphism cur = p;
  for (const CertificateStep& step : cert.per_step) {
    DeterminedStep ds = check_determined_step(cur);
    if (ds.extension_count != 1) return false;
    if (cur.tree().label(ds.extensions[0].endpoint) != step.endpoint) return false;
    if (!(ds.extensions[0].type == step.type)) return false;
    cur = ds.extensions[0].extended;
  }
  return true;
}

int count_quasicycle_orbits(const PartialAutomorphism& p) {
  int n = 0;
  for (const Orbit& o : orbit_decomposition(p))
    if (classify_orbit(p.tree(), o).kind == OrbitKind::kQuasiCycle) ++n;
  return n;
}

}  // namespace meettree

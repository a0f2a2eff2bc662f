#include "meettree/laws.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "meettree/orbitlab.hpp"

namespace meettree {

LawReport check_meet_laws(int max_size, Budget* nodes) {
  Budget local;
  Budget& b = nodes ? *nodes : local;
  LawReport report;
  for (const MeetTree& t : enumerate_trees(max_size, &b)) {
    int n = t.size();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          b.charge();
          ++report.checked;
          ElementId xy = t.meet(x, y), xz = t.meet(x, z), yz = t.meet(y, z);
          ElementId xyz = t.meet(xy, z);
          if (xyz != xy && xyz != xz)
            report.violations.push_back("triple meet escapes pair meets at " + canonical_form(t));
          if (t.lt(xz, xy) && xz != yz)
            report.violations.push_back("strict collapse law fails at " + canonical_form(t));
          if (t.leq(xz, xy) && !t.leq(xz, yz))
            report.violations.push_back("non-strict collapse law fails at " + canonical_form(t));
        }
  }
  return report;
}

std::vector<PartialAutomorphism> enumerate_pautos(const MeetTree& t) {
  int n = t.size();
  std::vector<PartialAutomorphism> out;
  std::set<std::vector<ElementId>> seen;
  std::vector<ElementId> image(n, -1);
  std::vector<bool> used(n, false);

  std::vector<std::pair<ElementId, ElementId>> pairs;
  auto rec = [&](auto&& self, int at) -> void {
    if (at == n) {
      PautoValidation val = validate_pauto(t, pairs);
      if (val.ok()) {
        std::vector<ElementId> closed_image(n, -1);
        for (auto [x, y] : val.closed->pairs()) closed_image[x] = y;
        if (seen.insert(closed_image).second) out.push_back(std::move(*val.closed));
      }
      return;
    }
    self(self, at + 1);
    for (int img = 0; img < n; ++img) {
      if (used[img]) continue;
      used[img] = true;
      pairs.emplace_back(at, img);
      self(self, at + 1);
      pairs.pop_back();
      used[img] = false;
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<std::pair<MeetTree, std::vector<PartialAutomorphism>>> pauto_corpus(int max_tree_size) {
  std::vector<std::pair<MeetTree, std::vector<PartialAutomorphism>>> out;
  for (const MeetTree& t : enumerate_trees(max_tree_size))
    out.emplace_back(t, enumerate_pautos(t));
  return out;
}

namespace {

ElementId at(const Orbit& o, int i) {
  int len = static_cast<int>(o.points.size());
  return o.cyclic ? o.points[i % len] : o.points[i];
}

int last_index(const Orbit& o) {
  return o.cyclic ? static_cast<int>(o.points.size()) : static_cast<int>(o.points.size()) - 1;
}

int otp_sign(const MeetTree& t, ElementId x, ElementId y) {
  if (x == y) return 0;
  if (t.lt(x, y)) return -1;
  if (t.lt(y, x)) return 1;
  return 2;  // incomparable
}

int int_sign(int a, int b) { return a < b ? -1 : (a == b ? 0 : 1); }

}  // namespace

void check_orbit_laws(const MeetTree& t, const Orbit& o, LawReport& report) {
  int n = last_index(o);
  if (n < 1) return;
  OrbitClass cls = classify_orbit(t, o);
  auto complain = [&](const std::string& what) {
    report.violations.push_back(what + " [orbit at " + t.label(o.points[0]) + ", " +
                                to_string(cls.kind) + "]");
  };

  bool spiral =
      cls.kind == OrbitKind::kAscendingSpiral || cls.kind == OrbitKind::kDescendingSpiral;
  if (spiral) {
    int k = cls.parameter;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        ++report.checked;
        bool cmp = t.comparable(at(o, i), at(o, j));
        if (cmp != ((i - j) % k == 0)) complain("spiral comparability");
      }
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        for (int l = 0; l <= n; ++l) {
          if ((i - j) % k != 0 || (i - l) % k == 0) continue;
          ++report.checked;
          if (t.meet(at(o, i), at(o, l)) != t.meet(at(o, j), at(o, l)))
            complain("spiral meet collapse");
        }
    for (int l = 1; 2 * l <= n; ++l) {
      ++report.checked;
      if (t.meet(at(o, 0), at(o, l)) != t.meet(at(o, l), at(o, 2 * l)) && l % k != 0)
        complain("spiral divisibility");
    }
  }

  // order-type transport along congruent indices (holds for any partial orbit)
  for (int k = 1; 2 * k <= n; ++k) {
    ++report.checked;
    ElementId low = t.meet(at(o, 0), at(o, k));
    ElementId high = t.meet(at(o, k), at(o, 2 * k));
    int dir = otp_sign(t, low, high);
    if (dir != -1 && dir != 1) continue;
    for (int i1 = 0; i1 <= n; ++i1)
      for (int i2 = i1 + k; i2 <= n; i2 += k) {
        if ((i2 - i1) % k != 0) continue;
        ++report.checked;
        ElementId mi = t.meet(at(o, i1), at(o, i2));
        if (dir == -1) {
          if (i1 + k <= n && mi != t.meet(at(o, i1), at(o, i1 + k)))
            complain("ascending comb meet anchor");
        } else {
          if (i2 - k >= 0 && mi != t.meet(at(o, i2 - k), at(o, i2)))
            complain("descending comb meet anchor");
        }
        for (int j1 = i1 % k; j1 <= n; j1 += k)
          for (int j2 = j1 + k; j2 <= n; j2 += k) {
            ++report.checked;
            ElementId mj = t.meet(at(o, j1), at(o, j2));
            int want = dir == -1 ? int_sign(i1, j1) : int_sign(j2, i2);
            if (otp_sign(t, mi, mj) != want) complain("comb order-type transport");
          }
      }
  }

  if (n >= 1) {
    ++report.checked;
    if (pseudo_period(t, o) != pseudo_period(t, time_reverse(o)))
      complain("pseudo-period not time-reversal invariant");
    OrbitClass rc = classify_orbit(t, time_reverse(o));
    OrbitClass expect = cls;
    switch (cls.kind) {
      case OrbitKind::kAscendingSpiral: expect.kind = OrbitKind::kDescendingSpiral; break;
      case OrbitKind::kDescendingSpiral: expect.kind = OrbitKind::kAscendingSpiral; break;
      case OrbitKind::kAscendingComb: expect.kind = OrbitKind::kDescendingComb; break;
      case OrbitKind::kDescendingComb: expect.kind = OrbitKind::kAscendingComb; break;
      default: break;
    }
    ++report.checked;
    if (!(rc == expect)) complain("time reversal changed the class");
  }

  if (cls.kind == OrbitKind::kQuasiCycle) {
    int u = cls.parameter;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) {
          if ((i - j) % u != 0 || k == i || k == j) continue;
          ++report.checked;
          if (t.meet(at(o, i), at(o, k)) != t.meet(at(o, j), at(o, k)))
            complain("quasi-cycle congruence collapse");
        }
  }

  if (cls.kind == OrbitKind::kCycle || cls.kind == OrbitKind::kQuasiCycle) {
    for (int k = 1; 2 * k <= n; ++k) {
      ++report.checked;
      if (t.meet(at(o, 0), at(o, k)) != t.meet(at(o, k), at(o, 2 * k)))
        complain("cycle/quasi-cycle meet identity");
    }
  }
}

LawReport check_orbit_laws_enumerated(int max_tree_size, Budget* nodes) {
  Budget local;
  Budget& b = nodes ? *nodes : local;
  LawReport report;
  for (const MeetTree& t : enumerate_trees(max_tree_size, &b)) {
    for (const PartialAutomorphism& p : enumerate_pautos(t)) {
      b.charge();
      for (const Orbit& o : orbit_decomposition(p)) check_orbit_laws(t, o, report);
    }
  }
  return report;
}

std::vector<GeneratedOrbit> generate_orbit_corpus(int max_len, Budget* nodes) {
  Budget local;
  Budget& b = nodes ? *nodes : local;
  std::vector<GeneratedOrbit> out;
  std::set<std::tuple<int, int, int>> seen;  // kind, parameter, length

  std::vector<GeneratedOrbit> work;
  for (const MeetTree& t : enumerate_trees(3))
    for (const PartialAutomorphism& p : enumerate_pautos(t))
      for (const Orbit& o : orbit_decomposition(p)) {
        if (o.cyclic || o.points.size() != 2) continue;
        GeneratedOrbit g{t, o, classify_orbit(t, o)};
        auto key = std::tuple{static_cast<int>(g.cls.kind), g.cls.parameter,
                              static_cast<int>(o.points.size())};
        if (seen.insert(key).second) work.push_back(std::move(g));
      }

  while (!work.empty()) {
    GeneratedOrbit cur = std::move(work.back());
    work.pop_back();
    out.push_back(cur);
    if (static_cast<int>(cur.orbit.points.size()) >= max_len || cur.orbit.cyclic) continue;
    for (const OrbitExtension& ext : enumerate_orbit_extensions(cur.tree, cur.orbit, 1, &b)) {
      auto key = std::tuple{static_cast<int>(ext.cls.kind), ext.cls.parameter,
                            static_cast<int>(ext.orbit.points.size())};
      if (seen.insert(key).second)
        work.push_back(GeneratedOrbit{ext.tree, ext.orbit, ext.cls});
    }
  }
  return out;
}

LawReport check_orbit_laws_generated(int max_len, Budget* nodes) {
  LawReport report;
  for (const GeneratedOrbit& g : generate_orbit_corpus(max_len, nodes))
    check_orbit_laws(g.tree, g.orbit, report);
  return report;
}

int arity_order_oracle(const MeetTree& t) {
  int n = t.size();
  int best = 1;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<ElementId> a;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1u) a.push_back(i);
    bool ok = true;
    for (size_t i = 0; i < a.size() && ok; ++i)
      for (size_t j = i + 1; j < a.size() && ok; ++j)
        if (t.comparable(a[i], a[j])) ok = false;
    for (size_t i = 0; i < a.size() && ok; ++i)
      for (size_t j = 0; j < a.size() && ok; ++j)
        for (size_t l = 0; l < a.size() && ok; ++l) {
          if (i == j || j == l || i == l) continue;
          for (int x = 0; x < n && ok; ++x)
            if (t.lt(x, a[i]) && t.lt(x, a[j]) && !t.lt(x, a[l])) ok = false;
        }
    if (ok) best = std::max(best, static_cast<int>(a.size()));
  }
  return best;
}

}  // namespace meettree

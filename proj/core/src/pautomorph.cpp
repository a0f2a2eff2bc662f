#include "meettree/pautomorph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace meettree {

ElementId PartialAutomorphism::power(ElementId e, int k) const {
  ElementId x = e;
  if (k >= 0) {
    for (int i = 0; i < k && x >= 0; ++i) x = image_[x];
    return x;
  }
  for (int i = 0; i > k && x >= 0; --i) {
    auto pre = preimage(x);
    x = pre ? *pre : -1;
  }
  return x;
}

std::optional<ElementId> PartialAutomorphism::preimage(ElementId e) const {
  for (int x = 0; x < tree_.size(); ++x)
    if (image_[x] == e) return x;
  return std::nullopt;
}

std::vector<ElementId> PartialAutomorphism::domain() const {
  std::vector<ElementId> out;
  for (int x = 0; x < tree_.size(); ++x)
    if (image_[x] >= 0) out.push_back(x);
  return out;
}

std::vector<ElementId> PartialAutomorphism::range() const {
  std::vector<ElementId> out;
  for (int x = 0; x < tree_.size(); ++x)
    if (in_range(x)) out.push_back(x);
  return out;
}

bool PartialAutomorphism::in_range(ElementId e) const {
  for (int x = 0; x < tree_.size(); ++x)
    if (image_[x] == e) return true;
  return false;
}

std::vector<std::pair<ElementId, ElementId>> PartialAutomorphism::pairs() const {
  std::vector<std::pair<ElementId, ElementId>> out;
  for (int x = 0; x < tree_.size(); ++x)
    if (image_[x] >= 0) out.emplace_back(x, image_[x]);
  return out;
}

int PartialAutomorphism::map_size() const {
  int n = 0;
  for (int x = 0; x < tree_.size(); ++x)
    if (image_[x] >= 0) ++n;
  return n;
}

PartialAutomorphism PartialAutomorphism::on_tree(MeetTree bigger) const {
  std::vector<ElementId> image(bigger.size(), -1);
  for (int x = 0; x < tree_.size(); ++x) image[x] = image_[x];
  return PartialAutomorphism(std::move(bigger), std::move(image));
}

PautoValidation validate_pauto(const MeetTree& t,
                               const std::vector<std::pair<ElementId, ElementId>>& map_pairs) {
  PautoValidation result;
  std::vector<ElementId> image(t.size(), -1);
  std::vector<ElementId> pre(t.size(), -1);
  for (auto [a, b] : map_pairs) {
    if (a < 0 || b < 0 || a >= t.size() || b >= t.size()) {
      result.witness = Violation{"bad-pair", {std::to_string(a), std::to_string(b)}};
      return result;
    }
    if (image[a] >= 0 && image[a] != b) {
      result.witness = Violation{"not-injective", {t.label(a)}};
      return result;
    }
    if (pre[b] >= 0 && pre[b] != a) {
      result.witness = Violation{"not-injective", {t.label(b)}};
      return result;
    }
    image[a] = b;
    pre[b] = a;
  }

  std::vector<ElementId> dom;
  for (int x = 0; x < t.size(); ++x)
    if (image[x] >= 0) dom.push_back(x);

  // order preservation on the given pairs, before any closure
  for (ElementId x : dom)
    for (ElementId y : dom)
      if (t.leq(x, y) != t.leq(image[x], image[y])) {
        result.witness = Violation{"order-violation", {t.label(x), t.label(y)}};
        return result;
      }

  // close the domain under meets, extending by x/\y -> f(x)/\f(y)
  for (size_t i = 0; i < dom.size(); ++i)
    for (size_t j = i + 1; j < dom.size(); ++j) {
      ElementId m = t.meet(dom[i], dom[j]);
      ElementId im = t.meet(image[dom[i]], image[dom[j]]);
      if (image[m] >= 0) {
        if (image[m] != im) {
          result.witness =
              Violation{"meet-image-mismatch", {t.label(dom[i]), t.label(dom[j]), t.label(m)}};
          return result;
        }
      } else {
        if (pre[im] >= 0 && pre[im] != m) {
          result.witness =
              Violation{"injectivity-clash", {t.label(m), t.label(im), t.label(pre[im])}};
          return result;
        }
        image[m] = im;
        pre[im] = m;
      }
    }

  std::vector<ElementId> cdom;
  for (int x = 0; x < t.size(); ++x)
    if (image[x] >= 0) cdom.push_back(x);
  // one round of meets suffices, but re-deriving images of meets must agree now
  for (ElementId x : cdom)
    for (ElementId y : cdom) {
      if (!t.leq(x, y) != !t.leq(image[x], image[y])) {
        result.witness = Violation{"order-violation", {t.label(x), t.label(y)}};
        return result;
      }
      ElementId m = t.meet(x, y);
      if (image[m] != t.meet(image[x], image[y])) {
        result.witness = Violation{"meet-image-mismatch", {t.label(x), t.label(y), t.label(m)}};
        return result;
      }
    }

  result.closed = PartialAutomorphism(t, std::move(image));
  return result;
}

PautoValidation validate_pauto_labels(
    const MeetTree& t, const std::vector<std::pair<std::string, std::string>>& map_pairs) {
  std::vector<std::pair<ElementId, ElementId>> pairs;
  for (const auto& [a, b] : map_pairs) {
    auto ia = t.find(a), ib = t.find(b);
    if (!ia || !ib) {
      PautoValidation bad;
      bad.witness = Violation{"unknown-label", {ia ? b : a}};
      return bad;
    }
    pairs.emplace_back(*ia, *ib);
  }
  return validate_pauto(t, pairs);
}

std::vector<Orbit> orbit_decomposition(const PartialAutomorphism& p) {
  const MeetTree& t = p.tree();
  std::vector<bool> seen(t.size(), false);
  std::vector<Orbit> orbits;
  // non-cyclic orbits start at domain points outside the range
  for (int s = 0; s < t.size(); ++s) {
    if (!p.defined(s) || p.in_range(s)) continue;
    Orbit o;
    ElementId x = s;
    while (x >= 0 && !seen[x]) {
      seen[x] = true;
      o.points.push_back(x);
      x = p.defined(x) ? p.apply(x) : -1;
    }
    orbits.push_back(std::move(o));
  }
  // what remains of dom u range is cyclic
  for (int s = 0; s < t.size(); ++s) {
    if (seen[s] || !(p.defined(s) || p.in_range(s))) continue;
    Orbit o;
    o.cyclic = true;
    ElementId x = s;
    while (!seen[x]) {
      seen[x] = true;
      o.points.push_back(x);
      x = p.apply(x);
    }
    orbits.push_back(std::move(o));
  }
  std::sort(orbits.begin(), orbits.end(), [&](const Orbit& a, const Orbit& b) {
    return t.label(a.points[0]) < t.label(b.points[0]);
  });
  return orbits;
}

namespace {

// eta_i with cyclic wrap-around
ElementId at(const Orbit& o, int i) {
  int len = static_cast<int>(o.points.size());
  if (o.cyclic) return o.points[i % len];
  return i < len ? o.points[i] : -1;
}

// index of the last eta_i (for cyclic orbits the sequence closes at eta_len = eta_0)
int last_index(const Orbit& o) {
  return o.cyclic ? static_cast<int>(o.points.size()) : static_cast<int>(o.points.size()) - 1;
}

}  // namespace

int pseudo_period(const MeetTree& t, const Orbit& o) {
  int n = last_index(o);
  if (n < 1) throw std::invalid_argument("pseudo_period needs at least two orbit entries");
  ElementId e0 = at(o, 0);
  ElementId best = t.meet(e0, at(o, 1));
  for (int i = 2; i <= n; ++i) {
    ElementId m = t.meet(e0, at(o, i));
    if (t.leq(best, m)) best = m;
  }
  for (int u = 1; u <= n; ++u)
    if (t.meet(e0, at(o, u)) == best) return u;
  return n;
}

OrbitClass classify_orbit(const MeetTree& t, const Orbit& o) {
  int n = last_index(o);
  ElementId e0 = at(o, 0);
  if (o.cyclic) return {OrbitKind::kCycle, static_cast<int>(o.points.size())};
  for (int k = 1; k <= n; ++k)
    if (at(o, k) == e0) return {OrbitKind::kCycle, k};
  for (int k = 1; k <= n; ++k) {
    if (t.lt(e0, at(o, k))) return {OrbitKind::kAscendingSpiral, k};
    if (t.lt(at(o, k), e0)) return {OrbitKind::kDescendingSpiral, k};
  }
  for (int k = 1; 2 * k <= n; ++k) {
    ElementId lo = t.meet(e0, at(o, k));
    ElementId hi = t.meet(at(o, k), at(o, 2 * k));
    if (t.lt(lo, hi)) return {OrbitKind::kAscendingComb, k};
    if (t.lt(hi, lo)) return {OrbitKind::kDescendingComb, k};
  }
  if (n < 1) return {OrbitKind::kQuasiCycle, 1};
  return {OrbitKind::kQuasiCycle, pseudo_period(t, o)};
}

std::string to_string(OrbitKind k) {
  switch (k) {
    case OrbitKind::kCycle: return "cycle";
    case OrbitKind::kAscendingSpiral: return "ascending-spiral";
    case OrbitKind::kDescendingSpiral: return "descending-spiral";
    case OrbitKind::kAscendingComb: return "ascending-comb";
    case OrbitKind::kDescendingComb: return "descending-comb";
    case OrbitKind::kQuasiCycle: return "quasi-cycle";
  }
  return "?";
}

std::vector<ElementId> initial_points(const PartialAutomorphism& p) {
  std::vector<ElementId> out;
  for (const Orbit& o : orbit_decomposition(p)) {
    if (o.cyclic) {
      for (ElementId x : o.points) out.push_back(x);
    } else {
      out.push_back(o.points.front());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Orbit time_reverse(const Orbit& o) {
  Orbit r = o;
  std::reverse(r.points.begin(), r.points.end());
  return r;
}

Orbit shortest_noncyclic_orbit(const PartialAutomorphism& p) {
  const MeetTree& t = p.tree();
  const Orbit* best = nullptr;
  auto label_seq_less = [&](const Orbit& a, const Orbit& b) {
    std::vector<std::string> la, lb;
    for (ElementId x : a.points) la.push_back(t.label(x));
    for (ElementId x : b.points) lb.push_back(t.label(x));
    return la < lb;
  };
  std::vector<Orbit> orbits = orbit_decomposition(p);
  for (const Orbit& o : orbits) {
    if (o.cyclic) continue;
    if (!best || o.points.size() < best->points.size() ||
        (o.points.size() == best->points.size() && label_seq_less(o, *best)))
      best = &o;
  }
  if (!best) throw NoNoncyclicOrbit();
  return *best;
}

std::vector<ImmediateExtension> immediate_extensions(const PartialAutomorphism& p) {
  Orbit xi = shortest_noncyclic_orbit(p);
  ElementId endpoint = xi.points.back();

  std::vector<ElementId> support = p.domain();
  for (ElementId x : p.range()) support.push_back(x);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  std::vector<ElementId> a = generated_substructure(p.tree(), support);

  std::vector<ImmediateExtension> out;
  for (const OneTypeDescriptor& ty : enumerate_one_types(p.tree(), a)) {
    PointedExtension ext = realize_type(p.tree(), a, ty);
    auto pairs = p.pairs();
    pairs.emplace_back(endpoint, ext.new_point);
    PautoValidation val = validate_pauto(ext.tree, pairs);
    if (val.ok())
      out.push_back(ImmediateExtension{std::move(*val.closed), ty, endpoint, ext.new_point});
  }
  return out;
}

LinearUnionResult linear_union(const PartialAutomorphism& f, const PartialAutomorphism& g,
                               const std::function<ElementId(ElementId)>& witness) {
  LinearUnionResult result;
  if (!f.tree().same_labeled_structure(g.tree())) {
    result.failure = Violation{"different-trees", {}};
    return result;
  }
  const MeetTree& t = f.tree();
  for (ElementId eta : f.domain()) {
    ElementId a = witness(eta);
    if (a < 0 || a >= t.size() || !g.defined(a) || !t.leq(eta, a)) {
      result.failure = Violation{"witness-not-above", {t.label(eta)}};
      return result;
    }
    for (ElementId x : g.domain())
      if (t.leq(x, a) && (!f.defined(x) || f.apply(x) != g.apply(x))) {
        result.failure = Violation{"branch-restriction-not-contained", {t.label(eta), t.label(x)}};
        return result;
      }
  }
  auto pairs = f.pairs();
  for (auto [x, y] : g.pairs()) {
    if (f.defined(x) && f.apply(x) != y) {
      result.failure = Violation{"conflicting-images", {t.label(x)}};
      return result;
    }
    pairs.emplace_back(x, y);
  }
  PautoValidation val = validate_pauto(t, pairs);
  if (!val.ok()) {
    result.failure = val.witness;
    return result;
  }
  result.united = std::move(*val.closed);
  return result;
}

LinearUnionResult linear_union(const PartialAutomorphism& f, const PartialAutomorphism& g,
                               ElementId constant_witness) {
  return linear_union(f, g, [constant_witness](ElementId) { return constant_witness; });
}

std::vector<std::vector<ElementId>> tree_automorphisms(const MeetTree& t) {
  int n = t.size();
  std::vector<ElementId> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::vector<std::vector<ElementId>> out;
  do {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        if (t.leq(a, b) != t.leq(perm[a], perm[b])) ok = false;
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::string canonical_pauto_key(const PartialAutomorphism& p) {
  const MeetTree& t = p.tree();
  std::string best;
  for (const auto& perm : tree_automorphisms(t)) {
    std::vector<std::pair<ElementId, ElementId>> mapped;
    for (auto [a, b] : p.pairs()) mapped.emplace_back(perm[a], perm[b]);
    std::sort(mapped.begin(), mapped.end());
    std::string s;
    for (auto [a, b] : mapped) s += std::to_string(a) + ">" + std::to_string(b) + ";";
    if (best.empty() || s < best) best = s;
  }
  return canonical_form(t) + "|" + best;
}

}  // namespace meettree

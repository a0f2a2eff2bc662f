#include "meettree/amalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace meettree {

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

struct RawStructure {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> leq;
  std::vector<std::pair<std::string, std::string>> map;

  void add_tree(const PartialAutomorphism& p) {
    const MeetTree& t = p.tree();
    for (int i = 0; i < t.size(); ++i)
      if (std::find(labels.begin(), labels.end(), t.label(i)) == labels.end())
        labels.push_back(t.label(i));
    for (int i = 0; i < t.size(); ++i)
      for (int j = 0; j < t.size(); ++j)
        if (i != j && t.leq(i, j)) leq.emplace_back(t.label(i), t.label(j));
    for (auto [a, b] : p.pairs()) map.emplace_back(t.label(a), t.label(b));
  }

  PartialAutomorphism build(const std::string& context) const {
    TreeValidation tv = validate_tree(labels, leq);
    if (!tv.ok()) throw AmalgError("bad-structure", context + " is not a meet-tree");
    std::map<std::string, std::string> dedup(map.begin(), map.end());
    for (const auto& [a, b] : map)
      if (dedup[a] != b) throw AmalgError("agreement-violation", "conflicting images for " + a);
    std::vector<std::pair<std::string, std::string>> pairs(dedup.begin(), dedup.end());
    PautoValidation pv = validate_pauto_labels(*tv.tree, pairs);
    if (!pv.ok()) throw AmalgError("bad-structure", context + " map is not a partial automorphism");
    return std::move(*pv.closed);
  }
};

std::vector<std::string> label_set(const MeetTree& t) {
  std::vector<std::string> out = t.labels();
  std::sort(out.begin(), out.end());
  return out;
}

// base labels shared, everything else disjoint, base an induced substructure,
// and the side maps extend the base map
void check_problem(const AmalgProblem& p) {
  auto base_labels = label_set(p.base.tree());
  for (const PartialAutomorphism* side : {&p.left, &p.right}) {
    for (const std::string& bl : base_labels)
      if (!side->tree().find(bl)) throw AmalgError("bad-problem", "base element " + bl + " missing from a side");
  }
  auto ll = label_set(p.left.tree());
  auto rl = label_set(p.right.tree());
  std::vector<std::string> inter;
  std::set_intersection(ll.begin(), ll.end(), rl.begin(), rl.end(), std::back_inserter(inter));
  if (inter != base_labels)
    throw AmalgError("bad-problem", "side label sets must intersect exactly in the base");
  const MeetTree& b = p.base.tree();
  for (const PartialAutomorphism* side : {&p.left, &p.right}) {
    const MeetTree& t = side->tree();
    for (int i = 0; i < b.size(); ++i)
      for (int j = 0; j < b.size(); ++j) {
        ElementId si = *t.find(b.label(i)), sj = *t.find(b.label(j));
        if (b.leq(i, j) != t.leq(si, sj))
          throw AmalgError("bad-problem", "base order not preserved in a side");
        if (t.label(t.meet(si, sj)) != b.label(b.meet(i, j)))
          throw AmalgError("bad-problem", "base is not meet-closed in a side");
      }
    for (int i = 0; i < b.size(); ++i) {
      if (!p.base.defined(i)) continue;
      ElementId si = *t.find(b.label(i));
      if (!side->defined(si) || t.label(side->apply(si)) != b.label(p.base.apply(i)))
        throw AmalgError("agreement-violation", "side map disagrees with base at " + b.label(i));
    }
  }
}

// for the total pipeline: sides total, the base setwise invariant on both
// sides, and the two restrictions to the base equal
void check_total_problem(const AmalgProblem& p) {
  for (const PartialAutomorphism* side : {&p.left, &p.right})
    if (!is_total_automorphism(*side))
      throw AmalgError("bad-problem", "side automorphisms must be total");
  const MeetTree& b = p.base.tree();
  for (int i = 0; i < b.size(); ++i) {
    ElementId li = *p.left.tree().find(b.label(i));
    ElementId ri = *p.right.tree().find(b.label(i));
    std::string limg = p.left.tree().label(p.left.apply(li));
    std::string rimg = p.right.tree().label(p.right.apply(ri));
    if (!b.find(limg) || !b.find(rimg))
      throw AmalgError("agreement-violation", "base not setwise invariant at " + b.label(i));
    if (limg != rimg)
      throw AmalgError("agreement-violation", "side maps conflict on the base at " + b.label(i));
  }
}

// the base map induced by the (agreeing) total sides
PartialAutomorphism effective_base(const AmalgProblem& p) {
  const MeetTree& b = p.base.tree();
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i < b.size(); ++i) {
    ElementId li = *p.left.tree().find(b.label(i));
    pairs.emplace_back(b.label(i), p.left.tree().label(p.left.apply(li)));
  }
  PautoValidation v = validate_pauto_labels(b, pairs);
  if (!v.ok()) throw AmalgError("bad-problem", "base restriction is not an automorphism");
  return std::move(*v.closed);
}

}  // namespace

bool is_total_automorphism(const PartialAutomorphism& p) {
  if (p.map_size() != p.tree().size()) return false;
  return validate_pauto(p.tree(), p.pairs()).ok();
}

JointEmbedding joint_embed(const PartialAutomorphism& a, const PartialAutomorphism& b) {
  JointEmbedding out;
  RawStructure raw;
  // relabel the right side wherever labels clash
  std::map<std::string, std::string> rename;
  for (int i = 0; i < b.tree().size(); ++i) {
    std::string l = b.tree().label(i);
    if (a.tree().find(l)) {
      std::string fresh = l + "'";
      while (a.tree().find(fresh) || b.tree().find(fresh)) fresh += "'";
      rename[l] = fresh;
    } else {
      rename[l] = l;
    }
  }
  raw.add_tree(a);
  const MeetTree& tb = b.tree();
  for (int i = 0; i < tb.size(); ++i) raw.labels.push_back(rename[tb.label(i)]);
  for (int i = 0; i < tb.size(); ++i)
    for (int j = 0; j < tb.size(); ++j)
      if (i != j && tb.leq(i, j)) raw.leq.emplace_back(rename[tb.label(i)], rename[tb.label(j)]);
  for (auto [x, y] : b.pairs()) raw.map.emplace_back(rename[tb.label(x)], rename[tb.label(y)]);

  std::string bottom = "v";
  while (std::find(raw.labels.begin(), raw.labels.end(), bottom) != raw.labels.end()) bottom += "'";
  raw.labels.push_back(bottom);
  for (const std::string& l : raw.labels)
    if (l != bottom) raw.leq.emplace_back(bottom, l);

  out.combined = raw.build("joint embedding");
  out.bottom_label = bottom;
  for (int i = 0; i < a.tree().size(); ++i)
    out.left_embedding.emplace_back(a.tree().label(i), a.tree().label(i));
  for (int i = 0; i < tb.size(); ++i)
    out.right_embedding.emplace_back(tb.label(i), rename[tb.label(i)]);
  return out;
}

namespace {

// gap of a cross element c below the base: the least base element above it
std::string gap_above(const PartialAutomorphism& side, const MeetTree& base, ElementId c) {
  const MeetTree& t = side.tree();
  ElementId m = -1;
  for (int i = 0; i < base.size(); ++i) {
    ElementId s = *t.find(base.label(i));
    if (t.lt(c, s) && (m < 0 || t.leq(s, m))) m = s;
  }
  return m < 0 ? std::string() : t.label(m);
}

}  // namespace

AmalgProblem down_close_triple(const AmalgProblem& p0) {
  check_problem(p0);
  check_total_problem(p0);
  AmalgProblem p = p0;
  p.base = effective_base(p0);
  const MeetTree& b = p.base.tree();

  struct Cross {
    std::string label;
    std::string gap;   // base label the element sits immediately below
    int side;          // 0 = left, 1 = right
    ElementId id;      // in its side tree
  };
  std::vector<Cross> cross;
  const PartialAutomorphism* sides[2] = {&p.left, &p.right};
  for (int s = 0; s < 2; ++s) {
    const MeetTree& t = sides[s]->tree();
    std::vector<ElementId> base_ids;
    for (int i = 0; i < b.size(); ++i) base_ids.push_back(*t.find(b.label(i)));
    for (ElementId c : downward_closure(t, base_ids)) {
      if (b.find(t.label(c))) continue;
      cross.push_back({t.label(c), gap_above(*sides[s], b, c), s, c});
    }
  }

  RawStructure raw;
  raw.add_tree(p.left);
  raw.add_tree(p.right);
  // cross elements sharing a gap of the base end up in one chain below it;
  // whole left chain below whole right chain (the ordering of gap-mates is
  // not canonical, this choice keeps the side maps order-preserving)
  for (const Cross& c1 : cross)
    for (const Cross& c2 : cross)
      if (c1.side == 0 && c2.side == 1 && c1.gap == c2.gap)
        raw.leq.emplace_back(c1.label, c2.label);

  PartialAutomorphism big = raw.build("down-closure");

  // split the enlarged structure back into base / left / right
  std::set<std::string> bset;
  for (int i = 0; i < b.size(); ++i) bset.insert(b.label(i));
  for (const Cross& c : cross) bset.insert(c.label);

  auto restrict_to = [&](const std::set<std::string>& keep, const std::string& ctx) {
    RawStructure r;
    const MeetTree& t = big.tree();
    for (int i = 0; i < t.size(); ++i)
      if (keep.count(t.label(i))) r.labels.push_back(t.label(i));
    for (int i = 0; i < t.size(); ++i)
      for (int j = 0; j < t.size(); ++j)
        if (i != j && t.leq(i, j) && keep.count(t.label(i)) && keep.count(t.label(j)))
          r.leq.emplace_back(t.label(i), t.label(j));
    for (auto [x, y] : big.pairs())
      if (keep.count(t.label(x)) && keep.count(t.label(y)))
        r.map.emplace_back(t.label(x), t.label(y));
    return r.build(ctx);
  };

  std::set<std::string> lset = bset, rset = bset;
  for (int i = 0; i < p.left.tree().size(); ++i) lset.insert(p.left.tree().label(i));
  for (int i = 0; i < p.right.tree().size(); ++i) rset.insert(p.right.tree().label(i));

  AmalgProblem out;
  out.base = restrict_to(bset, "down-closed base");
  out.left = restrict_to(lset, "down-closed left");
  out.right = restrict_to(rset, "down-closed right");
  check_problem(out);
  return out;
}

AmalgSolution amalgamate_total(const AmalgProblem& p0) {
  check_problem(p0);
  check_total_problem(p0);

  AmalgProblem p = down_close_triple(p0);

  // shared completion bottom below all three structures
  std::string bottom = "_bot";
  while (p.left.tree().find(bottom) || p.right.tree().find(bottom)) bottom += "_";

  RawStructure raw;
  raw.add_tree(p.left);
  raw.add_tree(p.right);
  raw.labels.push_back(bottom);
  for (const std::string& l : raw.labels)
    if (l != bottom) raw.leq.emplace_back(bottom, l);
  raw.map.emplace_back(bottom, bottom);
  PartialAutomorphism amalgam = raw.build("amalgam");

  // cross meets must factor through the base (with the bottom as fallback)
  {
    const MeetTree& t = amalgam.tree();
    std::set<std::string> bl;
    for (int i = 0; i < p.base.tree().size(); ++i) bl.insert(p.base.tree().label(i));
    bl.insert(bottom);
    auto b_of = [&](ElementId c) {
      ElementId best = *t.find(bottom);
      for (int i = 0; i < t.size(); ++i)
        if (bl.count(t.label(i)) && t.leq(i, c) && t.leq(best, i)) best = i;
      return best;
    };
    std::set<std::string> ll, rl;
    for (int i = 0; i < p.left.tree().size(); ++i) ll.insert(p.left.tree().label(i));
    for (int i = 0; i < p.right.tree().size(); ++i) rl.insert(p.right.tree().label(i));
    for (int x = 0; x < t.size(); ++x)
      for (int y = 0; y < t.size(); ++y) {
        const std::string &lx = t.label(x), &ly = t.label(y);
        if (ll.count(lx) && !bl.count(lx) && rl.count(ly) && !bl.count(ly)) {
          if (t.comparable(x, y)) throw AmalgError("internal", "cross elements must be incomparable");
          if (t.meet(x, y) != t.meet(b_of(x), b_of(y)))
            throw AmalgError("internal", "cross meet does not factor through the base");
        }
      }
  }

  // prune the bottom when nothing meets at it
  {
    const MeetTree& t = amalgam.tree();
    ElementId bot = *t.find(bottom);
    if (t.children(bot).size() <= 1) {
      RawStructure pruned;
      for (int i = 0; i < t.size(); ++i)
        if (i != bot) pruned.labels.push_back(t.label(i));
      for (int i = 0; i < t.size(); ++i)
        for (int j = 0; j < t.size(); ++j)
          if (i != j && i != bot && j != bot && t.leq(i, j))
            pruned.leq.emplace_back(t.label(i), t.label(j));
      for (auto [x, y] : amalgam.pairs())
        if (x != bot && y != bot) pruned.map.emplace_back(t.label(x), t.label(y));
      amalgam = pruned.build("pruned amalgam");
    }
  }

  if (!is_total_automorphism(amalgam))
    throw AmalgError("internal", "amalgam map is not a total automorphism");

  AmalgSolution sol;
  sol.amalgam = std::move(amalgam);
  for (int i = 0; i < p0.left.tree().size(); ++i)
    sol.left_embedding.emplace_back(p0.left.tree().label(i), p0.left.tree().label(i));
  for (int i = 0; i < p0.right.tree().size(); ++i)
    sol.right_embedding.emplace_back(p0.right.tree().label(i), p0.right.tree().label(i));
  return sol;
}

namespace {

// meet-tree embeddings of c into d extending the fixed partial assignment
void embeddings_rec(const MeetTree& c, const MeetTree& d, std::vector<ElementId>& phi, int next,
                    Budget& nodes, const std::function<void(const std::vector<ElementId>&)>& emit) {
  int n = c.size();
  while (next < n && phi[next] >= 0) ++next;
  if (next == n) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d.meet(phi[i], phi[j]) != phi[c.meet(i, j)]) return;
    emit(phi);
    return;
  }
  for (int img = 0; img < d.size(); ++img) {
    nodes.charge();
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if (phi[i] >= 0) {
        if (phi[i] == img) ok = false;
        if (ok && (c.leq(i, next) != d.leq(phi[i], img) || c.leq(next, i) != d.leq(img, phi[i])))
          ok = false;
      }
    if (!ok) continue;
    phi[next] = img;
    embeddings_rec(c, d, phi, next + 1, nodes, emit);
    phi[next] = -1;
  }
}

}  // namespace

BruteForceOutcome brute_force_amalgam_k1(const AmalgProblem& p, int maxsize,
                                         std::optional<int> arity_bound, Budget* nodes) {
  check_problem(p);
  Budget local;
  Budget& b = nodes ? *nodes : local;
  BruteForceOutcome out;
  out.report.maxsize = maxsize;
  out.report.arity_bound = arity_bound;
  std::uint64_t digest = 14695981039346656037ull;

  const MeetTree& cb = p.base.tree();
  const MeetTree& c1 = p.left.tree();
  const MeetTree& c2 = p.right.tree();
  std::vector<ElementId> base_in_1, base_in_2;
  for (int i = 0; i < cb.size(); ++i) {
    base_in_1.push_back(*c1.find(cb.label(i)));
    base_in_2.push_back(*c2.find(cb.label(i)));
  }

  for (const MeetTree& d : enumerate_trees(maxsize, &b)) {
    if (arity_bound && arity(d) > *arity_bound) continue;
    digest = fnv1a(canonical_form(d), digest);

    std::vector<std::vector<ElementId>> phi1s;
    std::vector<ElementId> phi(c1.size(), -1);
    embeddings_rec(c1, d, phi, 0, b, [&](const std::vector<ElementId>& f) { phi1s.push_back(f); });
    if (phi1s.empty()) continue;

    for (const auto& f1 : phi1s) {
      std::vector<ElementId> phi2(c2.size(), -1);
      for (int i = 0; i < cb.size(); ++i) phi2[base_in_2[i]] = f1[base_in_1[i]];
      bool bad = false;
      for (int i = 0; i < cb.size() && !bad; ++i)
        for (int j = i + 1; j < cb.size(); ++j)
          if (phi2[base_in_2[i]] == phi2[base_in_2[j]]) bad = true;
      if (bad) continue;
      std::optional<AmalgSolution> found;
      embeddings_rec(c2, d, phi2, 0, b, [&](const std::vector<ElementId>& f2) {
        if (found) return;
        std::vector<std::pair<ElementId, ElementId>> h;
        for (auto [x, y] : p.left.pairs()) h.emplace_back(f1[x], f1[y]);
        for (auto [x, y] : p.right.pairs()) h.emplace_back(f2[x], f2[y]);
        std::map<ElementId, ElementId> fwd, bwd;
        for (auto [x, y] : h) {
          auto it = fwd.find(x);
          if (it != fwd.end() && it->second != y) return;
          auto jt = bwd.find(y);
          if (jt != bwd.end() && jt->second != x) return;
          fwd[x] = y;
          bwd[y] = x;
        }
        PautoValidation val = validate_pauto(d, h);
        if (!val.ok()) return;
        AmalgSolution sol;
        sol.amalgam = std::move(*val.closed);
        for (int i = 0; i < c1.size(); ++i)
          sol.left_embedding.emplace_back(c1.label(i), d.label(f1[i]));
        for (int i = 0; i < c2.size(); ++i)
          sol.right_embedding.emplace_back(c2.label(i), d.label(f2[i]));
        found = std::move(sol);
      });
      if (found) {
        out.solution = std::move(found);
        out.report.nodes = b.used();
        out.report.frontier_digest = hex64(digest);
        return out;
      }
    }
  }
  out.report.nodes = b.used();
  out.report.frontier_digest = hex64(digest);
  return out;
}

NonApWitness nonAP_witness(int k, int maxsize, Budget* nodes) {
  if (k < 2) throw std::invalid_argument("nonAP_witness needs arity k >= 2");
  NonApWitness w;

  std::vector<std::string> base_labels = {"b"};
  TreeValidation bt = validate_tree(base_labels, {});
  PautoValidation bp = validate_pauto_labels(*bt.tree, {{"b", "b"}});
  w.problem.base = std::move(*bp.closed);

  std::vector<std::string> star = {"b"};
  std::vector<std::pair<std::string, std::string>> star_leq;
  std::vector<std::pair<std::string, std::string>> star_map = {{"b", "b"}};
  for (int i = 1; i <= k; ++i) {
    std::string ci = "c" + std::to_string(i);
    star.push_back(ci);
    star_leq.emplace_back("b", ci);
    star_map.emplace_back(ci, "c" + std::to_string(i % k + 1));
  }
  TreeValidation lt = validate_tree(star, star_leq);
  PautoValidation lp = validate_pauto_labels(*lt.tree, star_map);
  if (!lp.ok()) throw std::logic_error("nonAP_witness: star map failed validation");
  w.problem.left = std::move(*lp.closed);

  TreeValidation rt = validate_tree({"b", "c"}, {{"b", "c"}});
  PautoValidation rp = validate_pauto_labels(*rt.tree, {{"b", "b"}, {"c", "c"}});
  w.problem.right = std::move(*rp.closed);

  BruteForceOutcome bounded = brute_force_amalgam_k1(w.problem, maxsize, k, nodes);
  if (bounded.solution)
    throw std::logic_error("nonAP_witness: unexpected amalgam under the arity bound");
  w.bounded = bounded.report;

  BruteForceOutcome free_run = brute_force_amalgam_k1(w.problem, maxsize, std::nullopt, nodes);
  w.unbounded = std::move(free_run.solution);
  return w;
}

AmalgProblem make_random_total_problem(std::mt19937_64& rng, int max_side) {
  auto pick = [&rng](std::uint64_t n) { return static_cast<int>(rng() % n); };

  static const std::vector<MeetTree> small = enumerate_trees(3);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const MeetTree& base0 = small[pick(small.size())];
    auto base_autos = tree_automorphisms(base0);
    const auto& g = base_autos[pick(base_autos.size())];

    // relabel the base with shared labels
    RawStructure braw;
    for (int i = 0; i < base0.size(); ++i) braw.labels.push_back("b" + std::to_string(i));
    for (int i = 0; i < base0.size(); ++i)
      for (int j = 0; j < base0.size(); ++j)
        if (i != j && base0.leq(i, j)) braw.leq.emplace_back(braw.labels[i], braw.labels[j]);
    for (int i = 0; i < base0.size(); ++i) braw.map.emplace_back(braw.labels[i], braw.labels[g[i]]);
    PartialAutomorphism base = braw.build("random base");

    auto grow_side = [&](const std::string& prefix) -> std::optional<PartialAutomorphism> {
      MeetTree t = base.tree();
      int extra = pick(static_cast<std::uint64_t>(std::max(1, max_side - t.size() + 1)));
      for (int e = 0; e < extra && t.size() < max_side; ++e) {
        std::vector<ElementId> all(t.size());
        for (int i = 0; i < t.size(); ++i) all[i] = i;
        auto menu = enumerate_one_types(t, all);
        // keep only single-point growth
        std::vector<OneTypeDescriptor> growers;
        for (const auto& d : menu)
          if (!(d.realized_at && !d.strict_above) && !(!d.realized_at && d.strict_above))
            growers.push_back(d);
        if (growers.empty()) break;
        const auto& d = growers[pick(growers.size())];
        ElementId np = -1;
        MeetTree grown = d.realized_at
                             ? t.with_fresh_branch_at(*d.realized_at, prefix + std::to_string(e), &np)
                             : [&] {
                                 // unrealized non-strict: insert in the gap
                                 std::uint64_t cutmask = 0;
                                 for (ElementId x : d.cut) cutmask |= std::uint64_t{1} << x;
                                 ElementId m = -1;
                                 for (ElementId x = 0; x < t.size(); ++x)
                                   if (t.leq(x, d.anchor) && !((cutmask >> x) & 1u))
                                     if (m < 0 || t.leq(x, m)) m = x;
                                 return t.with_inserted_below(m, prefix + std::to_string(e), &np);
                               }();
        t = grown;
      }
      // a total automorphism of the side extending the base map
      auto autos = tree_automorphisms(t);
      std::vector<std::vector<ElementId>> extending;
      for (const auto& f : autos) {
        bool ok = true;
        for (int i = 0; i < base.tree().size() && ok; ++i) {
          ElementId si = *t.find(base.tree().label(i));
          ElementId ti = *t.find(base.tree().label(base.apply(i)));
          if (f[si] != ti) ok = false;
        }
        // base labels must be preserved setwise
        for (int i = 0; i < base.tree().size() && ok; ++i) {
          ElementId si = *t.find(base.tree().label(i));
          if (!base.tree().find(t.label(f[si]))) ok = false;
        }
        if (ok) extending.push_back(f);
      }
      if (extending.empty()) return std::nullopt;
      const auto& f = extending[pick(extending.size())];
      RawStructure raw;
      raw.labels = t.labels();
      for (int i = 0; i < t.size(); ++i)
        for (int j = 0; j < t.size(); ++j)
          if (i != j && t.leq(i, j)) raw.leq.emplace_back(t.label(i), t.label(j));
      for (int i = 0; i < t.size(); ++i) raw.map.emplace_back(t.label(i), t.label(f[i]));
      return raw.build("random side");
    };

    auto left = grow_side("l");
    auto right = grow_side("r");
    if (!left || !right) continue;
    AmalgProblem prob{std::move(base), std::move(*left), std::move(*right)};
    check_problem(prob);
    return prob;
  }
  throw std::logic_error("make_random_total_problem: generation failed");
}

}  // namespace meettree

#include "meettree/nopair.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace meettree {

Fraction::Fraction(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("fraction with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

bool Fraction::operator<(const Fraction& o) const {
  return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

Fraction Fraction::midpoint(const Fraction& a, const Fraction& b) {
  return Fraction(a.num * b.den + b.num * a.den, 2 * a.den * b.den);
}

std::string Fraction::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

void insert_point(LinearOrder& l, const Fraction& x) {
  auto it = std::lower_bound(l.begin(), l.end(), x);
  if (it == l.end() || !(*it == x)) l.insert(it, x);
}

bool contains(const LinearOrder& l, const Fraction& x) {
  return std::binary_search(l.begin(), l.end(), x);
}

std::optional<Fraction> LinMap::apply(const Fraction& x) const {
  for (const auto& [a, b] : pairs)
    if (a == x) return b;
  return std::nullopt;
}

std::optional<Fraction> LinMap::invert(const Fraction& y) const {
  for (const auto& [a, b] : pairs)
    if (b == y) return a;
  return std::nullopt;
}

bool LinMap::valid() const {
  for (size_t i = 0; i + 1 < pairs.size(); ++i)
    if (!(pairs[i].first < pairs[i + 1].first) || !(pairs[i].second < pairs[i + 1].second))
      return false;
  return true;
}

void LinMap::add(const Fraction& a, const Fraction& b) {
  pairs.emplace_back(a, b);
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  if (!valid()) throw std::logic_error("linear map extension broke monotonicity");
}

std::vector<Fraction> LinMap::domain() const {
  std::vector<Fraction> out;
  for (const auto& [a, b] : pairs) out.push_back(a);
  return out;
}

std::vector<Fraction> LinMap::range() const {
  std::vector<Fraction> out;
  for (const auto& [a, b] : pairs) out.push_back(b);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// a fresh point matching the gap of x in `relative_to`, transported to `mirror`:
// the two lists realize order-isomorphic finite sets, x sits in some gap of the
// first, the result sits in the corresponding gap of the second
Fraction transport_gap(const std::vector<Fraction>& relative_to, const std::vector<Fraction>& mirror,
                       const Fraction& x, LinearOrder& l) {
  size_t lo = relative_to.size();  // index of greatest element < x
  size_t hi = relative_to.size();  // index of least element > x
  for (size_t i = 0; i < relative_to.size(); ++i) {
    if (relative_to[i] < x) lo = i;
    if (x < relative_to[i]) {
      hi = i;
      break;
    }
  }
  Fraction out;
  bool has_lo = lo != relative_to.size();
  bool has_hi = hi != relative_to.size();
  if (has_lo && has_hi)
    out = Fraction::midpoint(mirror[lo], mirror[hi]);
  else if (has_hi)
    out = mirror[hi].minus_one();
  else if (has_lo)
    out = mirror[lo].plus_one();
  else
    out = Fraction(0);
  insert_point(l, out);
  return out;
}

}  // namespace

BothWaysExtension extend_linear_both_ways(const LinearOrder& l, const LinMap& g, const Fraction& a,
                                          const Fraction& b) {
  auto ga = g.apply(a);
  if (!ga) throw std::invalid_argument("extend_linear_both_ways: a not in the domain");
  if (!(b <= *ga) || !(*ga <= a))
    throw std::invalid_argument("extend_linear_both_ways: need b <= g(a) <= a");

  BothWaysExtension out;
  out.order = l;
  out.map = g;
  insert_point(out.order, b);

  // d1: preimage position of b (b's gap in the range, moved to the domain)
  if (auto pre = g.invert(b)) {
    out.d1 = *pre;
  } else {
    std::vector<Fraction> rng, dom;
    for (const auto& [x, y] : g.pairs) dom.push_back(x);
    rng = g.range();
    std::vector<Fraction> dom_by_rng;  // domain reordered to mirror the sorted range
    for (const Fraction& r : rng) dom_by_rng.push_back(*g.invert(r));
    out.d1 = transport_gap(rng, dom_by_rng, b, out.order);
    out.map.add(out.d1, b);
  }

  // d2: image position of b under the once-extended map
  if (auto img = out.map.apply(b)) {
    out.d2 = *img;
  } else {
    std::vector<Fraction> dom, rng_by_dom;
    for (const auto& [x, y] : out.map.pairs) {
      dom.push_back(x);
      rng_by_dom.push_back(y);
    }
    out.d2 = transport_gap(dom, rng_by_dom, b, out.order);
    out.map.add(b, out.d2);
  }
  return out;
}

int cost(const Fraction& b0, const LinMap& g) {
  int n = 0;
  for (const auto& [a, b] : g.pairs) {
    if (a <= b0) ++n;
    if (b <= b0) ++n;
  }
  return n;
}

Fraction orbit_minimum(const AutPair& pair) {
  std::set<std::pair<long long, long long>> seen;
  std::vector<Fraction> queue{pair.anchor};
  Fraction best = pair.anchor;
  auto key = [](const Fraction& f) { return std::make_pair(f.num, f.den); };
  seen.insert(key(pair.anchor));
  while (!queue.empty()) {
    Fraction x = queue.back();
    queue.pop_back();
    if (x < best) best = x;
    for (const LinMap* g : {&pair.g1, &pair.g2}) {
      for (auto step : {g->apply(x), g->invert(x)})
        if (step && seen.insert(key(*step)).second) queue.push_back(*step);
    }
  }
  return best;
}

namespace {

int cost_m(const AutPair& p) {
  Fraction m = orbit_minimum(p);
  return cost(m, p.g1) + cost(m, p.g2);
}

// the four half-extensions at c, in canonical order
std::vector<AutPair> candidate_reductions(const AutPair& p, const Fraction& c) {
  std::vector<AutPair> out;
  for (int which = 0; which < 2; ++which) {
    const LinMap& g = which == 0 ? p.g1 : p.g2;
    // forward: add (c, d)
    if (!g.apply(c)) {
      AutPair q = p;
      LinMap& gm = which == 0 ? q.g1 : q.g2;
      std::vector<Fraction> dom, rng_by_dom;
      for (const auto& [x, y] : g.pairs) {
        dom.push_back(x);
        rng_by_dom.push_back(y);
      }
      Fraction d = transport_gap(dom, rng_by_dom, c, q.order);
      gm.add(c, d);
      out.push_back(std::move(q));
    }
    // backward: add (d, c)
    if (!g.invert(c)) {
      AutPair q = p;
      LinMap& gm = which == 0 ? q.g1 : q.g2;
      std::vector<Fraction> rng = g.range(), dom_by_rng;
      for (const Fraction& r : rng) dom_by_rng.push_back(*g.invert(r));
      Fraction d = transport_gap(rng, dom_by_rng, c, q.order);
      gm.add(d, c);
      out.push_back(std::move(q));
    }
  }
  return out;
}

int slot_count(const AutPair& p, const Fraction& c) {
  int slots = 0;
  if (p.g1.apply(c)) ++slots;
  if (p.g2.apply(c)) ++slots;
  if (p.g1.invert(c)) ++slots;
  if (p.g2.invert(c)) ++slots;
  return slots;
}

}  // namespace

AutPair minimize_pair(const AutPair& pair) {
  for (const LinMap* g : {&pair.g1, &pair.g2}) {
    auto ga = g->apply(pair.anchor);
    if (!ga || !(*ga < pair.anchor))
      throw std::invalid_argument("minimize_pair: both maps must move the anchor strictly down");
  }
  AutPair cur = pair;
  int guard = cost_m(cur);
  for (int round = 0; round <= guard; ++round) {
    int base = cost_m(cur);
    Fraction c = orbit_minimum(cur);
    const AutPair* better = nullptr;
    std::vector<AutPair> cands = candidate_reductions(cur, c);
    for (const AutPair& cand : cands)
      if (cost_m(cand) < base) {
        better = &cand;
        break;
      }
    if (!better) break;
    cur = *better;
  }
  if (slot_count(cur, orbit_minimum(cur)) != 1)
    throw std::logic_error("minimize_pair: minimum not in exactly one slot after reduction");
  return cur;
}

IrreconcilablePair irreconcilable_extensions(const AutPair& minimal) {
  Fraction c = orbit_minimum(minimal);
  if (slot_count(minimal, c) != 1)
    throw std::invalid_argument("irreconcilable_extensions: pair is not minimal");

  std::vector<Fraction> b_pts;
  for (const LinMap* g : {&minimal.g1, &minimal.g2})
    for (const auto& [x, y] : g->pairs) {
      b_pts.push_back(x);
      b_pts.push_back(y);
    }
  std::sort(b_pts.begin(), b_pts.end());
  b_pts.erase(std::unique(b_pts.begin(), b_pts.end()), b_pts.end());

  std::optional<Fraction> above, below;
  for (const Fraction& x : b_pts) {
    if (x < c && (!below || *below < x)) below = x;
    if (c < x && (!above || x < *above)) above = x;
  }
  if (!above) throw std::logic_error("irreconcilable_extensions: no point above the minimum");
  Fraction c_plus = Fraction::midpoint(c, *above);
  Fraction c_minus = below ? Fraction::midpoint(*below, c) : c.minus_one();

  IrreconcilablePair out;
  out.plus = minimal;
  out.minus = minimal;
  insert_point(out.plus.order, c_plus);
  insert_point(out.minus.order, c_minus);

  // the proof's case split: c sits in exactly one slot; extend the other map
  // (or the same map in the inverse direction) through c
  if (minimal.g1.invert(c)) {  // c in range(g1): extend g2 forward
    out.plus.g2.add(c, c_plus);
    out.minus.g2.add(c, c_minus);
    out.word.atom_map = 2;
    out.word.atom_inverse = false;
  } else if (minimal.g2.invert(c)) {
    out.plus.g1.add(c, c_plus);
    out.minus.g1.add(c, c_minus);
    out.word.atom_map = 1;
    out.word.atom_inverse = false;
  } else if (minimal.g1.apply(c)) {  // c in dom(g1): extend g2 backward
    out.plus.g2.add(c_plus, c);
    out.minus.g2.add(c_minus, c);
    out.word.atom_map = 2;
    out.word.atom_inverse = true;
  } else {
    out.plus.g1.add(c_plus, c);
    out.minus.g1.add(c_minus, c);
    out.word.atom_map = 1;
    out.word.atom_inverse = true;
  }

  // shortest generator word from the anchor to c (BFS, generator order 1,-1,2,-2)
  {
    struct Node {
      Fraction at;
      std::vector<int> path;
    };
    auto key = [](const Fraction& f) { return std::make_pair(f.num, f.den); };
    std::set<std::pair<long long, long long>> seen{key(minimal.anchor)};
    std::vector<Node> queue{{minimal.anchor, {}}};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      Node n = queue[qi];
      if (n.at == c) {
        out.word.word = n.path;
        break;
      }
      for (int gen : {1, -1, 2, -2}) {
        const LinMap& g = (gen == 1 || gen == -1) ? minimal.g1 : minimal.g2;
        auto next = gen > 0 ? g.apply(n.at) : g.invert(n.at);
        if (next && seen.insert(key(*next)).second) {
          Node child{*next, n.path};
          child.path.push_back(gen);
          queue.push_back(std::move(child));
        }
      }
    }
  }
  return out;
}

std::optional<bool> evaluate_word(const AutPair& pair, const DistinguishingWord& w) {
  Fraction x = pair.anchor;
  for (int gen : w.word) {
    const LinMap& g = (gen == 1 || gen == -1) ? pair.g1 : pair.g2;
    auto next = gen > 0 ? g.apply(x) : g.invert(x);
    if (!next) return std::nullopt;
    x = *next;
  }
  const LinMap& g = w.atom_map == 1 ? pair.g1 : pair.g2;
  auto val = w.atom_inverse ? g.invert(x) : g.apply(x);
  if (!val) return std::nullopt;
  return x < *val;
}

ExhaustSearchReport exhaust_no_common_extension(const IrreconcilablePair& ip, int max_size,
                                                Budget* nodes) {
  Budget local;
  Budget& b = nodes ? *nodes : local;
  ExhaustSearchReport report;
  report.max_size = max_size;

  const LinearOrder& l1 = ip.plus.order;
  const LinearOrder& l2 = ip.minus.order;
  int s1 = static_cast<int>(l1.size());
  int s2 = static_cast<int>(l2.size());
  auto index_of = [](const LinearOrder& l, const Fraction& f) {
    return static_cast<int>(std::lower_bound(l.begin(), l.end(), f) - l.begin());
  };
  int a1 = index_of(l1, ip.plus.anchor);
  int a2 = index_of(l2, ip.minus.anchor);

  // a pair's map as index pairs into its own order
  auto index_pairs = [&](const LinMap& g, const LinearOrder& l) {
    std::vector<std::pair<int, int>> out;
    for (const auto& [x, y] : g.pairs) out.emplace_back(index_of(l, x), index_of(l, y));
    return out;
  };
  auto m1a = index_pairs(ip.plus.g1, l1), m1b = index_pairs(ip.plus.g2, l1);
  auto m2a = index_pairs(ip.minus.g1, l2), m2b = index_pairs(ip.minus.g2, l2);

  for (int m = std::max(s1, s2); m <= max_size; ++m) {
    // embeddings = increasing index maps [s]->[m]; iterate subsets via combinations
    std::vector<std::vector<int>> embs1, embs2;
    std::vector<int> comb;
    std::function<void(int, int, int, std::vector<std::vector<int>>&)> gen =
        [&](int n, int k, int start, std::vector<std::vector<int>>& out_embs) {
          if (static_cast<int>(comb.size()) == k) {
            out_embs.push_back(comb);
            return;
          }
          for (int v = start; v < n; ++v) {
            comb.push_back(v);
            gen(n, k, v + 1, out_embs);
            comb.pop_back();
          }
        };
    gen(m, s1, 0, embs1);
    gen(m, s2, 0, embs2);

    for (const auto& f1 : embs1)
      for (const auto& f2 : embs2) {
        b.charge();
        report.nodes = b.used();
        if (f1[a1] != f2[a2]) continue;
        // union the conjugated maps; both components must stay functional,
        // injective and increasing
        bool ok = true;
        for (int which = 0; which < 2 && ok; ++which) {
          std::vector<int> fwd(m, -1), bwd(m, -1);
          auto feed = [&](const std::vector<std::pair<int, int>>& mp, const std::vector<int>& emb) {
            for (auto [x, y] : mp) {
              int gx = emb[x], gy = emb[y];
              if (fwd[gx] >= 0 && fwd[gx] != gy) return false;
              if (bwd[gy] >= 0 && bwd[gy] != gx) return false;
              fwd[gx] = gy;
              bwd[gy] = gx;
            }
            return true;
          };
          ok = feed(which == 0 ? m1a : m1b, f1) && feed(which == 0 ? m2a : m2b, f2);
          for (int x = 0; x < m && ok; ++x)
            for (int y = x + 1; y < m && ok; ++y)
              if (fwd[x] >= 0 && fwd[y] >= 0 && fwd[x] >= fwd[y]) ok = false;
        }
        if (ok) {
          report.common_extension_found = true;
          return report;
        }
      }
  }
  return report;
}

TreeIrreconcilable lift_to_tree(const MeetTree& m, const PartialAutomorphism& p1,
                                const PartialAutomorphism& p2, ElementId anchor) {
  if (!p1.defined(anchor) || !p2.defined(anchor) || p1.apply(anchor) != p2.apply(anchor) ||
      !m.lt(p1.apply(anchor), anchor))
    throw std::invalid_argument("lift_to_tree: need p1(a) = p2(a) < a");

  // the branch below the anchor, as a linear order of fractions
  std::vector<ElementId> branch;
  for (int x = 0; x < m.size(); ++x)
    if (m.leq(x, anchor)) branch.push_back(x);
  std::sort(branch.begin(), branch.end(), [&](ElementId a, ElementId b) { return m.lt(a, b); });

  LinearOrder order;
  std::vector<std::pair<Fraction, ElementId>> coord;  // fraction -> tree element
  for (size_t i = 0; i < branch.size(); ++i) {
    Fraction f(static_cast<long long>(i));
    order.push_back(f);
    coord.emplace_back(f, branch[i]);
  }
  auto frac_of = [&](ElementId e) {
    for (const auto& [f, x] : coord)
      if (x == e) return f;
    throw std::logic_error("element not on the branch");
  };

  AutPair pair;
  pair.order = order;
  pair.anchor = frac_of(anchor);
  for (int which = 0; which < 2; ++which) {
    const PartialAutomorphism& p = which == 0 ? p1 : p2;
    LinMap& g = which == 0 ? pair.g1 : pair.g2;
    for (ElementId x : branch)
      if (p.defined(x) && m.leq(p.apply(x), anchor)) g.add(frac_of(x), frac_of(p.apply(x)));
  }

  AutPair minimal = minimize_pair(pair);
  IrreconcilablePair lin = irreconcilable_extensions(minimal);

  // replay the fresh linear points as tree insertions, top down
  MeetTree tree = m;
  LinearOrder final_order = lin.plus.order;
  for (const Fraction& f : lin.minus.order) insert_point(final_order, f);
  std::vector<Fraction> fresh;
  for (const Fraction& f : final_order) {
    bool known = false;
    for (const auto& [g, x] : coord)
      if (g == f) known = true;
    if (!known) fresh.push_back(f);
  }
  std::sort(fresh.begin(), fresh.end(), [](const Fraction& a, const Fraction& b) { return b < a; });
  for (const Fraction& f : fresh) {
    // least existing branch point above f
    std::optional<Fraction> above;
    for (const auto& [g, x] : coord)
      if (f < g && (!above || g < *above)) above = g;
    ElementId fresh_id = -1;
    if (above) {
      ElementId target = -1;
      for (const auto& [g, x] : coord)
        if (g == *above) target = x;
      tree = tree.with_inserted_below(target, tree.fresh_label(), &fresh_id);
    } else {
      tree = tree.with_new_root(tree.fresh_label(), &fresh_id);
    }
    coord.emplace_back(f, fresh_id);
  }

  auto elem_of = [&](const Fraction& f) {
    for (const auto& [g, x] : coord)
      if (g == f) return x;
    throw std::logic_error("fraction without a tree element");
  };

  auto build_side = [&](const AutPair& side, const char* ctx) {
    auto lift_map = [&](const LinMap& g, const PartialAutomorphism& p) {
      std::vector<std::pair<ElementId, ElementId>> qpairs;
      for (const auto& [x, y] : g.pairs) qpairs.emplace_back(elem_of(x), elem_of(y));
      PautoValidation qv = validate_pauto(tree, qpairs);
      if (!qv.ok()) throw std::logic_error(std::string("lift_to_tree: branch map invalid (") + ctx + ")");
      PartialAutomorphism base_on_big = p.on_tree(tree);
      PautoValidation bv = validate_pauto(tree, base_on_big.pairs());
      if (!bv.ok()) throw std::logic_error("lift_to_tree: ambient map invalid on grown tree");
      LinearUnionResult u = linear_union(*qv.closed, *bv.closed, anchor);
      if (!u.ok()) throw std::logic_error(std::string("lift_to_tree: union failed (") + ctx + ")");
      return std::move(*u.united);
    };
    TreeAutPair out{lift_map(side.g1, p1), lift_map(side.g2, p2), anchor};
    return out;
  };

  TreeIrreconcilable out;
  out.plus = build_side(lin.plus, "plus");
  out.minus = build_side(lin.minus, "minus");
  out.word = lin.word;
  out.tree = std::move(tree);
  return out;
}

std::optional<bool> evaluate_word_on_tree(const MeetTree& t, const PartialAutomorphism& g1,
                                          const PartialAutomorphism& g2, ElementId anchor,
                                          const DistinguishingWord& w) {
  ElementId x = anchor;
  auto step = [&](const PartialAutomorphism& g, int dir, ElementId from) -> std::optional<ElementId> {
    if (dir > 0) return g.defined(from) ? std::optional<ElementId>(g.apply(from)) : std::nullopt;
    return g.preimage(from);
  };
  for (int gen : w.word) {
    auto next = step((gen == 1 || gen == -1) ? g1 : g2, gen, x);
    if (!next) return std::nullopt;
    x = *next;
  }
  auto val = step(w.atom_map == 1 ? g1 : g2, w.atom_inverse ? -1 : 1, x);
  if (!val) return std::nullopt;
  return t.lt(x, *val);
}

}  // namespace meettree

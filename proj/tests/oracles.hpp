#pragma once

// Brute-force reference implementations kept independent of the library's
// main code paths; tests compare the two.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "meettree/pautomorph.hpp"
#include "meettree/tree.hpp"

namespace oracle {

using meettree::ElementId;
using meettree::MeetTree;

// all meet-trees on n labelled points, as down-set masks, by filtering every
// reflexive relation candidate through the axioms
inline std::vector<std::vector<std::uint64_t>> labelled_meet_trees(int n) {
  std::vector<std::vector<std::uint64_t>> out;
  int pairs = n * (n - 1);
  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) idx.emplace_back(i, j);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs); ++bits) {
    std::vector<std::uint64_t> below(n);
    for (int i = 0; i < n; ++i) below[i] = std::uint64_t{1} << i;
    for (int p = 0; p < pairs; ++p)
      if ((bits >> p) & 1u) below[idx[p].second] |= std::uint64_t{1} << idx[p].first;
    // transitive?
    bool ok = true;
    for (int b = 0; b < n && ok; ++b)
      for (int a = 0; a < n && ok; ++a)
        if (a != b && ((below[b] >> a) & 1u) && (below[b] | below[a]) != below[b]) ok = false;
    // antisymmetric?
    for (int a = 0; a < n && ok; ++a)
      for (int b = a + 1; b < n && ok; ++b)
        if (((below[b] >> a) & 1u) && ((below[a] >> b) & 1u)) ok = false;
    // semilinear?
    for (int c = 0; c < n && ok; ++c)
      for (int a = 0; a < n && ok; ++a)
        for (int b = a + 1; b < n && ok; ++b)
          if (((below[c] >> a) & 1u) && ((below[c] >> b) & 1u) && !((below[b] >> a) & 1u) &&
              !((below[a] >> b) & 1u))
            ok = false;
    // common lower bounds?
    for (int a = 0; a < n && ok; ++a)
      for (int b = a + 1; b < n && ok; ++b)
        if ((below[a] & below[b]) == 0) ok = false;
    if (ok) out.push_back(std::move(below));
  }
  return out;
}

// isomorphism of labelled structures by permutation search
inline bool trees_isomorphic(const std::vector<std::uint64_t>& a,
                             const std::vector<std::uint64_t>& b) {
  int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n) return false;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        if (((a[j] >> i) & 1u) != ((b[perm[j]] >> perm[i]) & 1u)) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline int count_iso_classes(int n) {
  auto all = labelled_meet_trees(n);
  std::vector<std::vector<std::uint64_t>> reps;
  for (const auto& t : all) {
    bool fresh = true;
    for (const auto& r : reps)
      if (trees_isomorphic(t, r)) fresh = false;
    if (fresh) reps.push_back(t);
  }
  return static_cast<int>(reps.size());
}

inline bool meettrees_isomorphic(const MeetTree& a, const MeetTree& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::uint64_t> da(a.size()), db(b.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      if (a.leq(j, i)) da[i] |= std::uint64_t{1} << j;
      if (b.leq(j, i)) db[i] |= std::uint64_t{1} << j;
    }
  return trees_isomorphic(da, db);
}

// a partial map extends to an isomorphism of generated substructures — by
// searching every bijection between the two meet closures
inline bool pauto_by_search(const MeetTree& t,
                            const std::vector<std::pair<ElementId, ElementId>>& pairs) {
  if (pairs.empty()) return true;
  std::vector<ElementId> dom, rng;
  for (auto [a, b] : pairs) {
    dom.push_back(a);
    rng.push_back(b);
  }
  std::sort(dom.begin(), dom.end());
  dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
  std::sort(rng.begin(), rng.end());
  rng.erase(std::unique(rng.begin(), rng.end()), rng.end());
  for (auto [a, b] : pairs)
    for (auto [c, d] : pairs)
      if ((a == c) != (b == d)) return false;

  std::vector<ElementId> d_cl = meettree::generated_substructure(t, dom);
  std::vector<ElementId> r_cl = meettree::generated_substructure(t, rng);
  if (d_cl.size() != r_cl.size()) return false;
  int m = static_cast<int>(d_cl.size());
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (auto [a, b] : pairs) {
      int ia = static_cast<int>(std::find(d_cl.begin(), d_cl.end(), a) - d_cl.begin());
      if (r_cl[perm[ia]] != b) ok = false;
    }
    for (int i = 0; i < m && ok; ++i)
      for (int j = 0; j < m && ok; ++j) {
        if (t.leq(d_cl[i], d_cl[j]) != t.leq(r_cl[perm[i]], r_cl[perm[j]])) ok = false;
        ElementId mm = t.meet(d_cl[i], d_cl[j]);
        int im = static_cast<int>(std::find(d_cl.begin(), d_cl.end(), mm) - d_cl.begin());
        if (ok && t.meet(r_cl[perm[i]], r_cl[perm[j]]) != r_cl[perm[im]]) ok = false;
      }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// completion oracle: enumerate every downward-closed chain and order by inclusion
inline int cut_count(const MeetTree& t) {
  int n = t.size();
  int cuts = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool down = true, chain = true;
    for (int i = 0; i < n && down; ++i)
      if ((mask >> i) & 1u)
        for (int j = 0; j < n; ++j)
          if (t.lt(j, i) && !((mask >> j) & 1u)) down = false;
    for (int i = 0; i < n && chain; ++i)
      for (int j = i + 1; j < n && chain; ++j)
        if (((mask >> i) & 1u) && ((mask >> j) & 1u) && !t.comparable(i, j)) chain = false;
    if (down && chain) ++cuts;
  }
  return cuts;
}

}  // namespace oracle

#include "meettree/tree.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

namespace meettree {

std::optional<ElementId> MeetTree::find(std::string_view label) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::optional<ElementId> MeetTree::parent(ElementId e) const {
  std::uint64_t strictly_below = below_[e] & ~(std::uint64_t{1} << e);
  if (!strictly_below) return std::nullopt;
  // the down-set is a chain, so the parent is its element with the largest down-set
  ElementId best = -1;
  for (int x = 0; x < size(); ++x)
    if ((strictly_below >> x) & 1u)
      if (best < 0 || leq(best, x)) best = x;
  return best;
}

std::vector<ElementId> MeetTree::children(ElementId e) const {
  std::vector<ElementId> out;
  for (int x = 0; x < size(); ++x)
    if (x != e && parent(x) == std::optional<ElementId>(e)) out.push_back(x);
  return out;
}

void MeetTree::compute_meets_and_root() {
  int n = size();
  meets_.assign(n, std::vector<std::uint8_t>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::uint64_t common = below_[a] & below_[b];
      // max of a chain = the member whose down-set equals the intersection's closure;
      // equivalently the member with the largest down-set.
      ElementId best = -1;
      for (int x = 0; x < n; ++x)
        if ((common >> x) & 1u)
          if (best < 0 || leq(best, x)) best = x;
      meets_[a][b] = static_cast<std::uint8_t>(best);
    }
  root_ = 0;
  for (int x = 0; x < n; ++x)
    if (leq(x, root_)) root_ = x;
}

MeetTree MeetTree::from_down_masks(std::vector<std::string> labels, std::vector<std::uint64_t> below) {
  MeetTree t;
  t.labels_ = std::move(labels);
  t.below_ = std::move(below);
  t.compute_meets_and_root();
  return t;
}

MeetTree MeetTree::with_inserted_below(ElementId m, const std::string& label, ElementId* out) const {
  int n = size();
  if (n + 1 > kMaxElements) throw std::length_error("meet-tree capacity (64 elements) exceeded");
  std::vector<std::string> labels = labels_;
  labels.push_back(label);
  std::vector<std::uint64_t> below = below_;
  ElementId v = n;
  std::uint64_t vbit = std::uint64_t{1} << v;
  // below(v) = strict down-set of m, plus v itself
  below.push_back((below_[m] & ~(std::uint64_t{1} << m)) | vbit);
  // v sits below m and hence below everything above m
  for (int x = 0; x < n; ++x)
    if (leq(m, x)) below[x] |= vbit;
  if (out) *out = v;
  return from_down_masks(std::move(labels), std::move(below));
}

MeetTree MeetTree::with_fresh_branch_at(ElementId e, const std::string& label, ElementId* out) const {
  int n = size();
  if (n + 1 > kMaxElements) throw std::length_error("meet-tree capacity (64 elements) exceeded");
  std::vector<std::string> labels = labels_;
  labels.push_back(label);
  std::vector<std::uint64_t> below = below_;
  ElementId v = n;
  below.push_back(below_[e] | (std::uint64_t{1} << v));
  if (out) *out = v;
  return from_down_masks(std::move(labels), std::move(below));
}

MeetTree MeetTree::with_new_root(const std::string& label, ElementId* out) const {
  int n = size();
  if (n + 1 > kMaxElements) throw std::length_error("meet-tree capacity (64 elements) exceeded");
  std::vector<std::string> labels = labels_;
  labels.push_back(label);
  std::vector<std::uint64_t> below = below_;
  ElementId v = n;
  std::uint64_t vbit = std::uint64_t{1} << v;
  below.push_back(vbit);
  for (int x = 0; x < n; ++x) below[x] |= vbit;
  if (out) *out = v;
  return from_down_masks(std::move(labels), std::move(below));
}

std::string MeetTree::fresh_label() const {
  for (int k = size();; ++k) {
    std::string cand = "x" + std::to_string(k);
    if (!find(cand)) return cand;
  }
}

TreeValidation validate_tree(const std::vector<std::string>& labels,
                             const std::vector<std::pair<std::string, std::string>>& leq_pairs,
                             const std::vector<std::tuple<std::string, std::string, std::string>>& meet_entries) {
  TreeValidation result;
  int n = static_cast<int>(labels.size());
  if (n == 0) {
    result.violations.push_back({"empty", {}});
    return result;
  }
  if (n > MeetTree::kMaxElements) {
    result.violations.push_back({"too-large", {std::to_string(n)}});
    return result;
  }
  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) {
    if (!index.emplace(labels[i], i).second) {
      result.violations.push_back({"duplicate-label", {labels[i]}});
      return result;
    }
  }
  auto lookup = [&](const std::string& s) -> int {
    auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
  };

  // reflexive-transitive closure of the generators
  std::vector<std::uint64_t> below(n, 0);
  for (int i = 0; i < n; ++i) below[i] = std::uint64_t{1} << i;
  for (const auto& [lo, hi] : leq_pairs) {
    int a = lookup(lo), b = lookup(hi);
    if (a < 0 || b < 0) {
      result.violations.push_back({"unknown-label", {a < 0 ? lo : hi}});
      return result;
    }
    below[b] |= std::uint64_t{1} << a;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a)
        if (a != b && ((below[b] >> a) & 1u)) {
          std::uint64_t grown = below[b] | below[a];
          if (grown != below[b]) {
            below[b] = grown;
            changed = true;
          }
        }
  }

  for (int a = 0; a < n && result.violations.empty(); ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && ((below[b] >> a) & 1u) && ((below[a] >> b) & 1u)) {
        result.violations.push_back({"non-order", {labels[a], labels[b]}});
        break;
      }
  if (!result.violations.empty()) return result;

  // semilinearity: down-sets are chains
  for (int c = 0; c < n && result.violations.empty(); ++c)
    for (int a = 0; a < n && result.violations.empty(); ++a)
      for (int b = a + 1; b < n; ++b)
        if (((below[c] >> a) & 1u) && ((below[c] >> b) & 1u) &&
            !((below[b] >> a) & 1u) && !((below[a] >> b) & 1u)) {
          result.violations.push_back({"non-semilinear", {labels[a], labels[b], labels[c]}});
          break;
        }
  if (!result.violations.empty()) return result;

  // every pair needs a common lower bound; with semilinearity the bounds form
  // a chain, so the meet is their maximum
  for (int a = 0; a < n && result.violations.empty(); ++a)
    for (int b = a + 1; b < n; ++b)
      if ((below[a] & below[b]) == 0) {
        result.violations.push_back({"missing-meet", {labels[a], labels[b]}});
        break;
      }
  if (!result.violations.empty()) return result;

  MeetTree t = MeetTree::from_down_masks(labels, below);
  for (const auto& [sa, sb, sm] : meet_entries) {
    int a = lookup(sa), b = lookup(sb), m = lookup(sm);
    if (a < 0 || b < 0 || m < 0) {
      result.violations.push_back({"unknown-label", {a < 0 ? sa : (b < 0 ? sb : sm)}});
      return result;
    }
    if (t.meet(a, b) != m) {
      result.violations.push_back({"wrong-meet", {sa, sb, sm, labels[t.meet(a, b)]}});
      return result;
    }
  }
  result.tree = std::move(t);
  return result;
}

std::vector<ElementId> generated_substructure(const MeetTree& t, const std::vector<ElementId>& s) {
  if (s.empty()) throw std::invalid_argument("generated_substructure: empty generating set");
  std::uint64_t in = 0;
  for (ElementId e : s) in |= std::uint64_t{1} << e;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      in |= std::uint64_t{1} << t.meet(s[i], s[j]);
  std::vector<ElementId> out;
  for (int x = 0; x < t.size(); ++x)
    if ((in >> x) & 1u) out.push_back(x);
  return out;
}

std::vector<ElementId> downward_closure(const MeetTree& t, const std::vector<ElementId>& s) {
  std::uint64_t in = 0;
  for (ElementId e : s) in |= t.down_mask(e);
  std::vector<ElementId> out;
  for (int x = 0; x < t.size(); ++x)
    if ((in >> x) & 1u) out.push_back(x);
  return out;
}

int arity(const MeetTree& t) {
  // A witness set picks one element from each of several branches above a
  // common meet point, so the maximum is the largest child count.
  int best = 1;
  for (int e = 0; e < t.size(); ++e)
    best = std::max(best, static_cast<int>(t.children(e).size()));
  return best;
}

Completion completion(const MeetTree& t) {
  ElementId bottom = -1;
  MeetTree c = t.with_new_root(t.fresh_label(), &bottom);
  return Completion{std::move(c), bottom};
}

namespace {

std::string code_of(const MeetTree& t, ElementId v) {
  std::vector<std::string> codes;
  for (ElementId c : t.children(v)) codes.push_back(code_of(t, c));
  std::sort(codes.begin(), codes.end());
  std::string out = "(";
  for (auto& c : codes) out += c;
  out += ")";
  return out;
}

}  // namespace

std::string canonical_form(const MeetTree& t) {
  Completion c = completion(t);
  return code_of(c.tree, c.bottom);
}

MeetTree subtree_on(const MeetTree& t, const std::vector<ElementId>& ids,
                    std::vector<ElementId>* old_to_new) {
  std::vector<std::string> labels;
  std::vector<ElementId> map(t.size(), -1);
  for (size_t i = 0; i < ids.size(); ++i) {
    labels.push_back(t.label(ids[i]));
    map[ids[i]] = static_cast<ElementId>(i);
  }
  std::vector<std::uint64_t> below(ids.size(), 0);
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = 0; j < ids.size(); ++j)
      if (t.leq(ids[j], ids[i])) below[i] |= std::uint64_t{1} << j;
  // closedness under meet is the caller's obligation; from_down_masks then
  // yields the correct induced meet
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = 0; j < ids.size(); ++j) {
      ElementId m = t.meet(ids[i], ids[j]);
      if (map[m] < 0) throw std::invalid_argument("subtree_on: id set is not meet-closed");
    }
  if (old_to_new) *old_to_new = map;
  return MeetTree::from_down_masks(std::move(labels), std::move(below));
}

namespace {

// rooted trees as parent vectors (parent[0] = -1), generated up to isomorphism
void compose_children(int total, int max_part,
                      const std::vector<std::vector<std::vector<int>>>& by_size,
                      std::vector<std::pair<int, int>>& chosen,
                      std::vector<std::vector<std::pair<int, int>>>& out) {
  if (total == 0) {
    out.push_back(chosen);
    return;
  }
  for (int part = std::min(total, max_part); part >= 1; --part) {
    int max_idx = static_cast<int>(by_size[part].size()) - 1;
    int start_idx = max_idx;
    if (!chosen.empty() && chosen.back().first == part) start_idx = chosen.back().second;
    for (int idx = start_idx; idx >= 0; --idx) {
      chosen.emplace_back(part, idx);
      compose_children(total - part, part, by_size, chosen, out);
      chosen.pop_back();
    }
  }
}

}  // namespace

std::vector<MeetTree> enumerate_trees(int max_size, Budget* budget) {
  if (max_size < 1) throw std::invalid_argument("enumerate_trees: max_size must be >= 1");
  if (max_size > 12) throw std::invalid_argument("enumerate_trees: practical bound exceeded");
  Budget local;
  Budget& b = budget ? *budget : local;

  // by_size[k] = parent vectors of all rooted trees with k nodes, node 0 the root,
  // children laid out depth-first
  std::vector<std::vector<std::vector<int>>> by_size(max_size + 1);
  by_size[1] = {{-1}};
  for (int n = 2; n <= max_size; ++n) {
    std::vector<std::vector<std::pair<int, int>>> compositions;
    std::vector<std::pair<int, int>> chosen;
    compose_children(n - 1, n - 1, by_size, chosen, compositions);
    for (const auto& comp : compositions) {
      b.charge();
      std::vector<int> parent{-1};
      for (const auto& [sz, idx] : comp) {
        int base = static_cast<int>(parent.size());
        const std::vector<int>& sub = by_size[sz][idx];
        for (int v = 0; v < sz; ++v) parent.push_back(v == 0 ? 0 : base + sub[v]);
      }
      by_size[n].push_back(std::move(parent));
    }
  }

  std::vector<MeetTree> out;
  for (int n = 1; n <= max_size; ++n) {
    std::vector<std::pair<std::string, MeetTree>> keyed;
    for (const auto& parent : by_size[n]) {
      b.charge();
      std::vector<std::string> labels(n);
      for (int v = 0; v < n; ++v) labels[v] = "e" + std::to_string(v);
      std::vector<std::uint64_t> below(n, 0);
      for (int v = 0; v < n; ++v) {
        int x = v;
        while (x >= 0) {
          below[v] |= std::uint64_t{1} << x;
          x = parent[x];
        }
      }
      MeetTree t = MeetTree::from_down_masks(std::move(labels), std::move(below));
      keyed.emplace_back(canonical_form(t), std::move(t));
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < keyed.size(); ++i) {
      if (i > 0 && keyed[i].first == keyed[i - 1].first) continue;
      out.push_back(std::move(keyed[i].second));
    }
  }
  return out;
}

}  // namespace meettree

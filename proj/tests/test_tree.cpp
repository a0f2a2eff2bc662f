#include <doctest.h>

#include <set>

#include "meettree/laws.hpp"
#include "meettree/tree.hpp"
#include "oracles.hpp"

using namespace meettree;

namespace {

MeetTree chain3() {
  return *validate_tree({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}).tree;
}

MeetTree fork() {
  return *validate_tree({"r", "a", "b"}, {{"r", "a"}, {"r", "b"}}).tree;
}

}  // namespace

TEST_SUITE_BEGIN("core-tree");

TEST_CASE("chains validate with meet = min") {
  TreeValidation v = validate_tree({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  REQUIRE(v.ok());
  const MeetTree& t = *v.tree;
  CHECK(t.meet(*t.find("a"), *t.find("c")) == *t.find("a"));
  CHECK(t.root() == *t.find("a"));
}

TEST_CASE("rooted fork validates and computes the meet") {
  TreeValidation v = validate_tree({"r", "a", "b"}, {{"r", "a"}, {"r", "b"}});
  REQUIRE(v.ok());
  CHECK(v.tree->meet(*v.tree->find("a"), *v.tree->find("b")) == *v.tree->find("r"));
}

TEST_CASE("the V shape fails semilinearity") {
  TreeValidation v = validate_tree({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
  REQUIRE(!v.ok());
  CHECK(v.violations[0].kind == "non-semilinear");
  CHECK(v.violations[0].witness == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("meet table entries are cross-checked") {
  TreeValidation good = validate_tree({"r", "a", "b"}, {{"r", "a"}, {"r", "b"}}, {{"a", "b", "r"}});
  CHECK(good.ok());
  TreeValidation bad = validate_tree({"r", "a", "b"}, {{"r", "a"}, {"r", "b"}}, {{"a", "b", "a"}});
  REQUIRE(!bad.ok());
  CHECK(bad.violations[0].kind == "wrong-meet");
}

TEST_CASE("antisymmetry violations are reported as non-order") {
  TreeValidation v = validate_tree({"a", "b"}, {{"a", "b"}, {"b", "a"}});
  REQUIRE(!v.ok());
  CHECK(v.violations[0].kind == "non-order");
}

TEST_CASE("generated substructure closes under meets in one round") {
  MeetTree f = fork();
  auto ids = generated_substructure(f, {*f.find("a"), *f.find("b")});
  CHECK(ids.size() == 3);

  MeetTree c = chain3();
  auto cids = generated_substructure(c, {*c.find("a"), *c.find("c")});
  CHECK(cids.size() == 2);
}

TEST_CASE("downward closure") {
  MeetTree c = chain3();
  auto ids = downward_closure(c, {*c.find("b")});
  CHECK(ids == std::vector<ElementId>{*c.find("a"), *c.find("b")});

  MeetTree f = fork();
  CHECK(downward_closure(f, {*f.find("a")}).size() == 2);

  std::vector<ElementId> all{0, 1, 2};
  CHECK(downward_closure(f, all) == all);
}

TEST_CASE("arity of chains, forks and stars") {
  CHECK(arity(chain3()) == 1);
  CHECK(arity(fork()) == 2);
  for (int k = 2; k <= 5; ++k) {
    std::vector<std::string> labels{"b"};
    std::vector<std::pair<std::string, std::string>> leq;
    for (int i = 1; i <= k; ++i) {
      labels.push_back("c" + std::to_string(i));
      leq.emplace_back("b", labels.back());
    }
    CHECK(arity(*validate_tree(labels, leq).tree) == k);
  }
}

TEST_CASE("arity agrees with the order-language oracle on enumerated trees") {
  for (const MeetTree& t : enumerate_trees(6)) CHECK(arity(t) == arity_order_oracle(t));
}

TEST_CASE("completion adds exactly the empty cut") {
  MeetTree c = *validate_tree({"a", "b"}, {{"a", "b"}}).tree;
  Completion comp = completion(c);
  CHECK(comp.tree.size() == 3);
  CHECK(comp.tree.root() == comp.bottom);
  CHECK(comp.tree.leq(comp.bottom, *comp.tree.find("a")));

  MeetTree single = *validate_tree({"a"}, {}).tree;
  CHECK(completion(single).tree.size() == 2);

  // oracle: cuts are downward-closed chains, one more than the element count
  for (const MeetTree& t : enumerate_trees(5)) {
    CHECK(oracle::cut_count(t) == t.size() + 1);
    CHECK(completion(t).tree.size() == t.size() + 1);
  }
}

TEST_CASE("fork completion is the rooted fork with a new bottom") {
  Completion comp = completion(fork());
  TreeValidation expect = validate_tree({"x", "r", "a", "b"}, {{"x", "r"}, {"r", "a"}, {"r", "b"}});
  CHECK(oracle::meettrees_isomorphic(comp.tree, *expect.tree));
}

TEST_CASE("canonical form is relabeling-invariant and separates shapes") {
  MeetTree c1 = *validate_tree({"a", "b"}, {{"a", "b"}}).tree;
  MeetTree c2 = *validate_tree({"x", "y"}, {{"x", "y"}}).tree;
  CHECK(canonical_form(c1) == canonical_form(c2));
  CHECK(canonical_form(chain3()) != canonical_form(fork()));

  MeetTree f1 = *validate_tree({"r", "a", "b"}, {{"r", "a"}, {"r", "b"}}).tree;
  MeetTree f2 = *validate_tree({"r", "b", "a"}, {{"r", "b"}, {"r", "a"}}).tree;
  CHECK(canonical_form(f1) == canonical_form(f2));
}

TEST_CASE("canonical form respects the brute-force isomorphism oracle up to size 5") {
  std::vector<MeetTree> trees = enumerate_trees(5);
  for (size_t i = 0; i < trees.size(); ++i)
    for (size_t j = i; j < trees.size(); ++j) {
      bool same_code = canonical_form(trees[i]) == canonical_form(trees[j]);
      bool iso = oracle::meettrees_isomorphic(trees[i], trees[j]);
      CHECK(same_code == iso);
    }
}

TEST_CASE("enumeration counts match the labelled brute-force oracle") {
  CHECK(oracle::count_iso_classes(1) == 1);
  CHECK(oracle::count_iso_classes(2) == 1);
  CHECK(oracle::count_iso_classes(3) == 2);
  CHECK(oracle::count_iso_classes(4) == 4);

  std::vector<int> per_size(9, 0);
  for (const MeetTree& t : enumerate_trees(8)) per_size[t.size()] += 1;
  CHECK(per_size[1] == 1);
  CHECK(per_size[2] == 1);
  CHECK(per_size[3] == 2);
  CHECK(per_size[4] == 4);
  CHECK(per_size[5] == 9);
  CHECK(per_size[6] == 20);
  CHECK(per_size[7] == 48);
  CHECK(per_size[8] == 115);
}

TEST_CASE("enumeration is isomorph-free") {
  std::set<std::string> codes;
  for (const MeetTree& t : enumerate_trees(6)) CHECK(codes.insert(canonical_form(t)).second);
}

TEST_CASE("generated substructures are minimal meet-closed supersets") {
  for (const MeetTree& t : enumerate_trees(5)) {
    int n = t.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<ElementId> s;
      for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1u) s.push_back(i);
      auto closure = generated_substructure(t, s);
      std::uint64_t cmask = 0;
      for (ElementId x : closure) cmask |= std::uint64_t{1} << x;
      // meet-closed
      for (ElementId x : closure)
        for (ElementId y : closure) CHECK(((cmask >> t.meet(x, y)) & 1u) == 1u);
      // every closure element is a generator or a meet of two generators
      for (ElementId x : closure) {
        bool justified = (mask >> x) & 1u;
        for (size_t i = 0; i < s.size() && !justified; ++i)
          for (size_t j = 0; j < s.size() && !justified; ++j)
            if (t.meet(s[i], s[j]) == x) justified = true;
        CHECK(justified);
      }
    }
  }
}

TEST_CASE("completions are complete: every chain of cuts has a least upper bound") {
  for (const MeetTree& t : enumerate_trees(5)) {
    Completion comp = completion(t);
    const MeetTree& c = comp.tree;
    int n = c.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<ElementId> chain;
      for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1u) chain.push_back(i);
      bool is_chain = true;
      for (size_t i = 0; i < chain.size() && is_chain; ++i)
        for (size_t j = i + 1; j < chain.size(); ++j)
          if (!c.comparable(chain[i], chain[j])) is_chain = false;
      if (!is_chain) continue;
      // least upper bound: minimal element above the whole chain
      std::vector<ElementId> uppers;
      for (int x = 0; x < n; ++x) {
        bool above = true;
        for (ElementId y : chain)
          if (!c.leq(y, x)) above = false;
        if (above) uppers.push_back(x);
      }
      REQUIRE(!uppers.empty());  // the empty chain is bounded by the new bottom
      bool has_least = false;
      for (ElementId u : uppers) {
        bool below_all = true;
        for (ElementId v : uppers)
          if (!c.leq(u, v)) below_all = false;
        if (below_all) has_least = true;
      }
      CHECK(has_least);
    }
  }
}

TEST_CASE("meet laws hold on all enumerated trees up to size 7") {
  LawReport r = check_meet_laws(7);
  CHECK(r.clean());
  CHECK(r.checked > 0);
}

TEST_CASE("insertion helpers keep trees valid") {
  MeetTree f = fork();
  ElementId z = -1;
  MeetTree g = f.with_inserted_below(*f.find("a"), "z", &z);
  CHECK(g.lt(z, *g.find("a")));
  CHECK(g.lt(*g.find("r"), z));
  CHECK(g.meet(z, *g.find("b")) == *g.find("r"));

  ElementId w = -1;
  MeetTree h = g.with_fresh_branch_at(*g.find("r"), "w", &w);
  CHECK(h.meet(w, z) == *h.find("r"));
  CHECK(!h.comparable(w, *h.find("a")));
}

TEST_SUITE_END();

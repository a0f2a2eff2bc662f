#include <benchmark/benchmark.h>

#include "meettree/amalg.hpp"
#include "meettree/laws.hpp"
#include "meettree/pec.hpp"

using namespace meettree;

namespace {

void BM_EnumerateTrees(benchmark::State& state) {
  for (auto _ : state) {
    auto trees = enumerate_trees(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(trees.size());
  }
}
BENCHMARK(BM_EnumerateTrees)->Arg(6)->Arg(7)->Arg(8);

void BM_CanonicalForm(benchmark::State& state) {
  auto trees = enumerate_trees(7);
  for (auto _ : state)
    for (const MeetTree& t : trees) benchmark::DoNotOptimize(canonical_form(t));
}
BENCHMARK(BM_CanonicalForm);

void BM_ValidatePautoCorpus(benchmark::State& state) {
  auto trees = enumerate_trees(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    size_t total = 0;
    for (const MeetTree& t : trees) total += enumerate_pautos(t).size();
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_ValidatePautoCorpus)->Arg(4)->Arg(5);

void BM_PecClose(benchmark::State& state) {
  MeetTree fork = *validate_tree({"m", "a", "b"}, {{"m", "a"}, {"m", "b"}}).tree;
  PartialAutomorphism p = *validate_pauto_labels(fork, {{"a", "b"}}).closed;
  for (auto _ : state) {
    PecCloseResult r = pec_close(p, 2);
    benchmark::DoNotOptimize(r.rounds);
  }
}
BENCHMARK(BM_PecClose);

void BM_BruteForceAmalgam(benchmark::State& state) {
  AmalgProblem prob;
  TreeValidation bt = validate_tree({"b"}, {});
  prob.base = *validate_pauto_labels(*bt.tree, {{"b", "b"}}).closed;
  TreeValidation lt = validate_tree({"b", "c1", "c2"}, {{"b", "c1"}, {"b", "c2"}});
  prob.left =
      *validate_pauto_labels(*lt.tree, {{"b", "b"}, {"c1", "c2"}, {"c2", "c1"}}).closed;
  TreeValidation rt = validate_tree({"b", "c"}, {{"b", "c"}});
  prob.right = *validate_pauto_labels(*rt.tree, {{"b", "b"}, {"c", "c"}}).closed;
  for (auto _ : state) {
    BruteForceOutcome out = brute_force_amalgam_k1(prob, static_cast<int>(state.range(0)), 2);
    benchmark::DoNotOptimize(out.exhausted());
  }
}
BENCHMARK(BM_BruteForceAmalgam)->Arg(5)->Arg(6);

}  // namespace

BENCHMARK_MAIN();

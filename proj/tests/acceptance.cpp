// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Timings go to stderr; verdict lines are stable on stdout.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "meettree/amalg.hpp"
#include "meettree/cli.hpp"
#include "meettree/json_io.hpp"
#include "meettree/laws.hpp"
#include "meettree/nopair.hpp"
#include "meettree/orbitlab.hpp"
#include "meettree/pec.hpp"

using namespace meettree;

namespace {

int failures = 0;

void verdict(int criterion, bool pass, const std::string& detail) {
  std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL") << " — " << detail
            << "\n";
  if (!pass) ++failures;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

void criterion1_meet_laws() {
  Timer timer;
  LawReport r = check_meet_laws(7);
  verdict(1, r.clean() && r.checked > 0,
          "meet laws on all trees <= 7: " + std::to_string(r.checked) + " triples, " +
              std::to_string(r.violations.size()) + " violations");
  std::cerr << "criterion 1 took " << timer.ms() << " ms\n";
}

void criterion2_types() {
  Timer timer;
  bool ok = true;
  std::string why;

  MeetTree singleton = *validate_tree({"a"}, {}).tree;
  if (enumerate_one_types(singleton).size() != 4) {
    ok = false;
    why = "singleton type count != 4";
  }

  std::uint64_t roundtrips = 0;
  for (const MeetTree& a : enumerate_trees(5)) {
    std::vector<ElementId> base(a.size());
    for (int i = 0; i < a.size(); ++i) base[i] = i;
    for (const OneTypeDescriptor& ty : enumerate_one_types(a)) {
      PointedExtension ext = realize_type(a, ty);
      if (!(qf_type_of(ext.tree, ext.new_point, base) == ty)) {
        ok = false;
        why = "round-trip failed on " + canonical_form(a);
      }
      ++roundtrips;
    }
  }

  std::uint64_t completeness = 0;
  std::vector<MeetTree> hosts = enumerate_trees(6);
  for (const MeetTree& a : enumerate_trees(4)) {
    auto menu = enumerate_one_types(a);
    for (const MeetTree& t : hosts) {
      if (t.size() > a.size() + 2) continue;
      std::vector<ElementId> phi(a.size(), -1);
      std::vector<bool> used(t.size(), false);
      auto rec = [&](auto&& self, int at) -> void {
        if (at == a.size()) {
          for (int i = 0; i < a.size(); ++i)
            for (int j = 0; j < a.size(); ++j)
              if (t.meet(phi[i], phi[j]) != phi[a.meet(i, j)]) return;
          std::vector<ElementId> image(phi.begin(), phi.end());
          std::sort(image.begin(), image.end());
          for (int x = 0; x < t.size(); ++x) {
            if (std::binary_search(image.begin(), image.end(), x)) continue;
            OneTypeDescriptor d = qf_type_of(t, x, image);
            OneTypeDescriptor in_a;
            auto back = [&](ElementId y) {
              for (int i = 0; i < a.size(); ++i)
                if (phi[i] == y) return ElementId(i);
              return ElementId(-1);
            };
            in_a.strict_above = d.strict_above;
            for (ElementId y : d.cut) in_a.cut.push_back(back(y));
            std::sort(in_a.cut.begin(), in_a.cut.end());
            if (d.realized_at) in_a.realized_at = back(*d.realized_at);
            ElementId position = -1;
            if (in_a.realized_at) {
              position = *in_a.realized_at;
            } else {
              ElementId raw_anchor = back(d.anchor);
              for (int i = 0; i < a.size(); ++i) {
                if (!a.leq(i, raw_anchor)) continue;
                if (std::find(in_a.cut.begin(), in_a.cut.end(), i) != in_a.cut.end()) continue;
                if (position < 0 || a.leq(i, position)) position = i;
              }
            }
            ElementId canon = -1;
            for (int i = 0; i < a.size(); ++i)
              if (position >= 0 && a.leq(position, i) &&
                  (canon < 0 || a.label(i) < a.label(canon)))
                canon = i;
            in_a.anchor = canon;
            ++completeness;
            if (std::find(menu.begin(), menu.end(), in_a) == menu.end()) {
              ok = false;
              why = "completeness failed over " + canonical_form(a);
            }
          }
          return;
        }
        for (int img = 0; img < t.size(); ++img) {
          if (used[img]) continue;
          bool fits = true;
          for (int i = 0; i < at && fits; ++i)
            if (a.leq(i, at) != t.leq(phi[i], img) || a.leq(at, i) != t.leq(img, phi[i]))
              fits = false;
          if (!fits) continue;
          used[img] = true;
          phi[at] = img;
          self(self, at + 1);
          used[img] = false;
          phi[at] = -1;
        }
      };
      rec(rec, 0);
    }
  }

  verdict(2, ok,
          ok ? "singleton count 4, " + std::to_string(roundtrips) + " round-trips, " +
                   std::to_string(completeness) + " completeness probes"
             : why);
  std::cerr << "criterion 2 took " << timer.ms() << " ms\n";
}

void criterion3_orbit_laws() {
  Timer timer;
  LawReport enumerated = check_orbit_laws_enumerated(6);
  LawReport generated = check_orbit_laws_generated(10);
  bool ok = enumerated.clean() && generated.clean();
  verdict(3, ok,
          "orbit laws: " + std::to_string(enumerated.checked) + " enumerated + " +
              std::to_string(generated.checked) + " generated checks, " +
              std::to_string(enumerated.violations.size() + generated.violations.size()) +
              " violations");
  std::cerr << "criterion 3 took " << timer.ms() << " ms\n";
}

void criterion4_quasicycle_completion() {
  Timer timer;
  bool ok = true;
  std::string why;
  int completed = 0;
  for (const auto& [tree, pautos] : pauto_corpus(6)) {
    for (const PartialAutomorphism& p : pautos) {
      for (const Orbit& o : orbit_decomposition(p)) {
        if (o.cyclic) continue;
        OrbitClass cls = classify_orbit(tree, o);
        if (cls.kind != OrbitKind::kQuasiCycle || cls.parameter > 3) continue;
        int n = static_cast<int>(o.points.size()) - 1;
        int expected = ((n / cls.parameter) + 1) * cls.parameter;
        try {
          QuasiCycleCompletion c = complete_quasicycle_to_cycle(tree, o);
          OrbitClass got = classify_orbit(c.tree, c.cycle);
          if (!(got == OrbitClass{OrbitKind::kCycle, expected})) {
            ok = false;
            why = "wrong cycle length on " + canonical_form(tree);
          }
          ++completed;
        } catch (const std::exception& e) {
          ok = false;
          why = e.what();
        }
      }
    }
  }
  verdict(4, ok && completed > 0,
          ok ? std::to_string(completed) + " quasi-cycles completed to validated cycles" : why);
  std::cerr << "criterion 4 took " << timer.ms() << " ms\n";
}

void criterion5_random_amalgams() {
  Timer timer;
  bool ok = true;
  std::string why;
  std::mt19937_64 rng(20240801);
  int succeeded = 0;
  for (int i = 0; i < 1000 && ok; ++i) {
    try {
      AmalgProblem p = make_random_total_problem(rng, 5);
      AmalgSolution s = amalgamate_total(p);
      if (!is_total_automorphism(s.amalgam)) {
        ok = false;
        why = "amalgam failed revalidation at instance " + std::to_string(i);
      }
      ++succeeded;
    } catch (const std::exception& e) {
      ok = false;
      why = std::string("instance ") + std::to_string(i) + ": " + e.what();
    }
  }
  verdict(5, ok, ok ? std::to_string(succeeded) + "/1000 seeded problems amalgamated" : why);
  std::cerr << "criterion 5 took " << timer.ms() << " ms\n";
}

void criterion6_nonap() {
  Timer timer;
  bool ok = true;
  std::string why;
  for (int k : {2, 3}) {
    try {
      NonApWitness w = nonAP_witness(k, 8);
      if (!w.unbounded.has_value()) {
        ok = false;
        why = "no unbounded amalgam found for k=" + std::to_string(k);
      }
    } catch (const std::exception& e) {
      ok = false;
      why = e.what();
    }
  }
  verdict(6, ok,
          ok ? "arity 2 and 3 instances certified exhausted at maxsize 8, solvable unbounded"
             : why);
  std::cerr << "criterion 6 took " << timer.ms() << " ms\n";
}

void criterion7_pec_pipeline() {
  Timer timer;
  bool ok = true;
  std::string why;
  int corpus = 0;
  std::set<std::string> seen;
  for (const auto& [tree, pautos] : pauto_corpus(4)) {
    for (const PartialAutomorphism& p : pautos) {
      if (!seen.insert(canonical_pauto_key(p)).second) continue;
      ++corpus;
      try {
        PecCloseResult closed = pec_close(p, 2);
        if (!closed.reached_fixpoint) {
          ok = false;
          why = "closure missed the fixpoint on " + canonical_pauto_key(p);
          break;
        }
        if (!check_pec(closed.closed, 2).pass) {
          ok = false;
          why = "closure fails re-check on " + canonical_pauto_key(p);
          break;
        }
        DeterminismCertificate cert = determinism_certificate(closed.closed, 3);
        if (!cert.success) {
          ok = false;
          why = "determinism certificate failed on " + canonical_pauto_key(p);
          break;
        }
      } catch (const std::exception& e) {
        ok = false;
        why = e.what();
        break;
      }
    }
    if (!ok) break;
  }
  verdict(7, ok,
          ok ? std::to_string(corpus) +
                   " canonical maps on trees <= 4 closed, re-checked and certified"
             : why);
  std::cerr << "criterion 7 took " << timer.ms() << " ms\n";
}

void criterion8_negative_control() {
  Timer timer;
  MeetTree fork = *validate_tree({"m", "a", "b"}, {{"m", "a"}, {"m", "b"}}).tree;
  PartialAutomorphism p = *validate_pauto_labels(fork, {{"a", "b"}}).closed;
  DeterminedStep before = check_determined_step(p);
  PecCloseResult closed = pec_close(p, 2);
  bool steps_ok = true;
  PartialAutomorphism cur = closed.closed;
  int certified = 0;
  for (int s = 0; s < 3; ++s) {
    bool noncyclic = false;
    for (const Orbit& o : orbit_decomposition(cur))
      if (!o.cyclic) noncyclic = true;
    if (!noncyclic) break;
    DeterminedStep ds = check_determined_step(cur);
    if (ds.extension_count != 1) {
      steps_ok = false;
      break;
    }
    ++certified;
    cur = ds.extensions[0].extended;
  }
  bool ok = before.extension_count >= 2 && steps_ok && certified > 0;
  verdict(8, ok,
          "unclosed count " + std::to_string(before.extension_count) + ", closure count 1 at " +
              std::to_string(certified) + " certified steps");
  std::cerr << "criterion 8 took " << timer.ms() << " ms\n";
}

void criterion9_nopair() {
  Timer timer;
  AutPair seed;
  seed.order = {Fraction(0), Fraction(1)};
  seed.anchor = Fraction(1);
  seed.g1.add(Fraction(1), Fraction(0));
  seed.g2.add(Fraction(1), Fraction(0));
  bool ok = true;
  std::string why;
  try {
    IrreconcilablePair ip = irreconcilable_extensions(minimize_pair(seed));
    auto plus = evaluate_word(ip.plus, ip.word);
    auto minus = evaluate_word(ip.minus, ip.word);
    if (ip.word.word.size() > 6) {
      ok = false;
      why = "distinguishing word longer than 6";
    } else if (!plus || !minus || *plus == *minus) {
      ok = false;
      why = "word evaluations do not differ";
    } else {
      ExhaustSearchReport rep = exhaust_no_common_extension(ip, 9);
      if (rep.common_extension_found) {
        ok = false;
        why = "a common extension exists";
      } else {
        why = "word length " + std::to_string(ip.word.word.size()) +
              ", evaluations differ, no common extension over " + std::to_string(rep.nodes) +
              " embedding pairs up to size 9";
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    why = e.what();
  }
  verdict(9, ok, why);
  std::cerr << "criterion 9 took " << timer.ms() << " ms\n";
}

void criterion10_determinism() {
  Timer timer;
  // every CLI verdict byte-identical across two runs with the same seed
  std::string pair_path = "acceptance_pair.json";
  {
    std::ofstream f(pair_path);
    f << R"({"tree": {"elements": ["b","a"], "leq": [["b","a"]]}, "map": [["a","b"]]})";
  }
  std::vector<std::vector<std::string>> commands = {
      {"enumerate", "--max-size", "6"},
      {"check-laws", "--max-size", "5"},
      {"nonap", "--arity", "2", "--max-size", "6"},
      {"nopair-demo"},
      {"nopair-exhaust", "--max-size", "8"},
      {"pec-check", "--in", pair_path, "--depth", "2"},
      {"pec-close", "--in", pair_path, "--depth", "2"},
      {"certify-determined", "--in", pair_path, "--steps", "2"},
  };
  bool ok = true;
  std::string why = "all CLI verdicts byte-identical across two runs";
  for (const auto& cmd : commands) {
    std::ostringstream out1, out2, err;
    int c1 = dispatch(cmd, out1, err);
    int c2 = dispatch(cmd, out2, err);
    if (c1 != c2 || out1.str() != out2.str()) {
      ok = false;
      why = "divergent output for verb " + cmd[0];
    }
    if (c1 != 0) {
      ok = false;
      why = "verb " + cmd[0] + " exited " + std::to_string(c1);
    }
  }
  std::remove(pair_path.c_str());
  verdict(10, ok, why);
  std::cerr << "criterion 10 took " << timer.ms() << " ms\n";
}

}  // namespace

int main() {
  criterion1_meet_laws();
  criterion2_types();
  criterion3_orbit_laws();
  criterion4_quasicycle_completion();
  criterion5_random_amalgams();
  criterion6_nonap();
  criterion7_pec_pipeline();
  criterion8_negative_control();
  criterion9_nopair();
  criterion10_determinism();
  if (failures == 0)
    std::cout << "all acceptance criteria passed\n";
  else
    std::cout << failures << " criteria failed\n";
  return failures == 0 ? 0 : 1;
}

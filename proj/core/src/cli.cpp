#include "meettree/cli.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "meettree/json_io.hpp"
#include "meettree/laws.hpp"
#include "meettree/orbitlab.hpp"

namespace meettree {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240801;

struct Args {
  std::string verb;
  std::map<std::string, std::string> flags;
  std::uint64_t seed = kDefaultSeed;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Args parse_args(const std::vector<std::string>& argv) {
  if (argv.empty()) throw UsageError("missing verb");
  Args a;
  a.verb = argv[0];
  for (size_t i = 1; i < argv.size(); ++i) {
    const std::string& s = argv[i];
    if (s.rfind("--", 0) != 0) throw UsageError("unexpected argument: " + s);
    if (i + 1 >= argv.size()) throw UsageError("flag needs a value: " + s);
    a.flags[s.substr(2)] = argv[++i];
  }
  if (a.flags.count("seed")) a.seed = std::stoull(a.flags.at("seed"));
  return a;
}

std::string need(const Args& a, const std::string& flag) {
  auto it = a.flags.find(flag);
  if (it == a.flags.end()) throw UsageError("missing --" + flag);
  return it->second;
}

int need_int(const Args& a, const std::string& flag) { return std::stoi(need(a, flag)); }

int opt_int(const Args& a, const std::string& flag, int fallback) {
  auto it = a.flags.find(flag);
  return it == a.flags.end() ? fallback : std::stoi(it->second);
}

struct Input {
  std::string path;
  std::string bytes;
  Json json;
};

Input load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Input f;
  f.path = path;
  f.bytes = buf.str();
  try {
    f.json = Json::parse(f.bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("malformed JSON in " + path + " at byte " + std::to_string(e.byte));
  }
  return f;
}

Json run_verb(const Args& a, Budget& budget, Json& inputs) {
  Json v;
  if (a.verb == "enumerate") {
    int n = need_int(a, "max-size");
    auto trees = enumerate_trees(n, &budget);
    std::map<int, int> counts;
    Json forms = Json::array();
    for (const MeetTree& t : trees) {
      counts[t.size()] += 1;
      forms.push_back(canonical_form(t));
    }
    v["max_size"] = n;
    v["counts_by_size"] = Json::object();
    for (auto [size, count] : counts) v["counts_by_size"][std::to_string(size)] = count;
    v["total"] = trees.size();
    v["canonical_forms"] = std::move(forms);
    return v;
  }

  if (a.verb == "classify") {
    Input tree_file = load(need(a, "in"));
    Input map_file = load(need(a, "map"));
    inputs[tree_file.path] = fnv1a_hex(tree_file.bytes);
    inputs[map_file.path] = fnv1a_hex(map_file.bytes);
    MeetTree t = tree_from_json(tree_file.json);
    std::vector<std::pair<std::string, std::string>> pairs;
    const Json& mf = map_file.json.contains("map") ? map_file.json.at("map") : map_file.json;
    for (const auto& pr : mf)
      pairs.emplace_back(pr.at(0).get<std::string>(), pr.at(1).get<std::string>());
    PautoValidation pv = validate_pauto_labels(t, pairs);
    if (!pv.ok()) {
      v["valid"] = false;
      v["violation"] = pv.witness->kind;
      Json w = Json::array();
      for (const std::string& s : pv.witness->witness) w.push_back(s);
      v["witness"] = std::move(w);
      return v;
    }
    v["valid"] = true;
    v["orbits"] = Json::array();
    for (const Orbit& o : orbit_decomposition(*pv.closed))
      v["orbits"].push_back(orbit_report_json(t, o));
    v["initial_points"] = Json::array();
    for (ElementId x : initial_points(*pv.closed)) v["initial_points"].push_back(t.label(x));
    return v;
  }

  if (a.verb == "amalgamate") {
    Input base = load(need(a, "base")), left = load(need(a, "left")), right = load(need(a, "right"));
    inputs[base.path] = fnv1a_hex(base.bytes);
    inputs[left.path] = fnv1a_hex(left.bytes);
    inputs[right.path] = fnv1a_hex(right.bytes);
    AmalgProblem prob{pauto_from_json(base.json), pauto_from_json(left.json),
                      pauto_from_json(right.json)};
    AmalgSolution sol = amalgamate_total(prob);
    v = amalg_solution_json(sol);
    v["validated"] = is_total_automorphism(sol.amalgam);
    return v;
  }

  if (a.verb == "pec-check" || a.verb == "pec-close" || a.verb == "certify-determined") {
    Input in = load(need(a, "in"));
    inputs[in.path] = fnv1a_hex(in.bytes);
    PartialAutomorphism p = pauto_from_json(in.json);
    if (a.verb == "pec-check") {
      PecCheckResult r = check_pec(p, need_int(a, "depth"), &budget);
      v["depth"] = need_int(a, "depth");
      v["pass"] = r.pass;
      if (!r.pass) v["counterexample"] = pec_query_to_json(*r.counterexample);
      return v;
    }
    if (a.verb == "pec-close") {
      int depth = need_int(a, "depth");
      PecCloseResult r = pec_close(p, depth, opt_int(a, "cap", 64), &budget);
      v["depth"] = depth;
      v["rounds"] = r.rounds;
      v["reached_fixpoint"] = r.reached_fixpoint;
      v["closed"] = pauto_to_json(r.closed);
      v["passes_check"] = r.reached_fixpoint;
      v["quasi_cycle_orbits_remaining"] = count_quasicycle_orbits(r.closed);
      if (r.surviving) v["surviving_counterexample"] = pec_query_to_json(*r.surviving);
      return v;
    }
    DeterminismCertificate cert = determinism_certificate(p, need_int(a, "steps"));
    v = certificate_to_json(cert);
    v["replayed"] = cert.success ? replay_certificate(p, cert) : false;
    return v;
  }

  if (a.verb == "nopair-demo" || a.verb == "nopair-exhaust") {
    // the canonical seed: one pair (a,b) with b < a, shared by both maps
    LinearOrder l{Fraction(0), Fraction(1)};
    AutPair seed;
    seed.order = l;
    seed.anchor = Fraction(1);
    seed.g1.add(Fraction(1), Fraction(0));
    seed.g2.add(Fraction(1), Fraction(0));
    AutPair minimal = minimize_pair(seed);
    IrreconcilablePair ip = irreconcilable_extensions(minimal);
    auto ev_plus = evaluate_word(ip.plus, ip.word);
    auto ev_minus = evaluate_word(ip.minus, ip.word);
    if (a.verb == "nopair-demo") {
      v["pair_plus"] = autpair_to_json(ip.plus);
      v["pair_minus"] = autpair_to_json(ip.minus);
      v["certificate"] = word_to_json(ip.word);
      Json table;
      table["plus"] = ev_plus ? Json(*ev_plus) : Json(nullptr);
      table["minus"] = ev_minus ? Json(*ev_minus) : Json(nullptr);
      v["evaluations"] = std::move(table);
      v["irreconcilable"] = ev_plus && ev_minus && *ev_plus != *ev_minus;
      return v;
    }
    int n = need_int(a, "max-size");
    ExhaustSearchReport rep = exhaust_no_common_extension(ip, n, &budget);
    v["max_size"] = n;
    v["common_extension_found"] = rep.common_extension_found;
    v["nodes"] = rep.nodes;
    v["word_evaluations_differ"] = ev_plus && ev_minus && *ev_plus != *ev_minus;
    return v;
  }

  if (a.verb == "check-laws") {
    int n = need_int(a, "max-size");
    LawReport meets = check_meet_laws(n, &budget);
    LawReport orbits = check_orbit_laws_enumerated(std::min(n, 6), &budget);
    LawReport generated = check_orbit_laws_generated(10, &budget);
    auto pack = [](const LawReport& r) {
      Json j;
      j["checked"] = r.checked;
      j["violations"] = Json::array();
      for (const std::string& s : r.violations) j["violations"].push_back(s);
      return j;
    };
    v["meet_laws"] = pack(meets);
    v["orbit_laws_enumerated"] = pack(orbits);
    v["orbit_laws_generated"] = pack(generated);
    v["clean"] = meets.clean() && orbits.clean() && generated.clean();
    return v;
  }

  if (a.verb == "nonap") {
    int k = need_int(a, "arity");
    int n = need_int(a, "max-size");
    NonApWitness w = nonAP_witness(k, n, &budget);
    v["arity"] = k;
    v["bounded"] = exhaustion_report_json(w.bounded);
    v["bounded"]["solution_found"] = false;
    v["verdict"] = "no amalgam";
    if (w.unbounded) {
      v["unbounded_solution"] = amalg_solution_json(*w.unbounded);
      v["unbounded_solution"]["size"] = w.unbounded->amalgam.tree().size();
    }
    return v;
  }

  throw UsageError("unknown verb: " + a.verb);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto started = std::chrono::steady_clock::now();
  Json report;
  Args a;
  try {
    a = parse_args(args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n"
        << "verbs: enumerate classify amalgamate pec-check pec-close certify-determined "
           "nopair-demo nopair-exhaust check-laws nonap\n";
    return 1;
  }
  Budget budget;
  Json inputs = Json::object();
  try {
    Json verdicts = run_verb(a, budget, inputs);
    report["command"] = a.verb;
    report["inputs"] = std::move(inputs);
    report["seed"] = a.seed;
    report["verdicts"] = std::move(verdicts);
    report["budget_used"] = budget.used();
    out << report.dump(2) << "\n";
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - started)
                  .count();
    err << a.verb << ": done in " << ms << " ms\n";
    return 0;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const JsonError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace meettree

#include "meettree/json_io.hpp"

#include <algorithm>

namespace meettree {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[h & 0xf];
    h >>= 4;
  }
  return s;
}

MeetTree tree_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("elements"))
    throw JsonError("tree JSON needs an \"elements\" array");
  std::vector<std::string> labels;
  for (const auto& e : j.at("elements")) {
    std::string l = e.get<std::string>();
    if (l.find(',') != std::string::npos)
      throw JsonError("element labels must not contain commas: " + l);
    labels.push_back(std::move(l));
  }
  std::vector<std::pair<std::string, std::string>> leq;
  if (j.contains("leq"))
    for (const auto& pr : j.at("leq"))
      leq.emplace_back(pr.at(0).get<std::string>(), pr.at(1).get<std::string>());
  std::vector<std::tuple<std::string, std::string, std::string>> meets;
  if (j.contains("meet"))
    for (const auto& [key, val] : j.at("meet").items()) {
      auto comma = key.find(',');
      if (comma == std::string::npos) throw JsonError("meet keys look like \"a,b\"");
      meets.emplace_back(key.substr(0, comma), key.substr(comma + 1), val.get<std::string>());
    }
  TreeValidation v = validate_tree(labels, leq, meets);
  if (!v.ok()) {
    std::string msg = "not a meet-tree:";
    for (const Violation& viol : v.violations) {
      msg += " " + viol.kind + "(";
      for (size_t i = 0; i < viol.witness.size(); ++i)
        msg += (i ? "," : "") + viol.witness[i];
      msg += ")";
    }
    throw JsonError(msg);
  }
  return std::move(*v.tree);
}

Json tree_to_json(const MeetTree& t) {
  Json j;
  j["elements"] = Json::array();
  for (int i = 0; i < t.size(); ++i) j["elements"].push_back(t.label(i));
  j["leq"] = Json::array();
  for (int i = 0; i < t.size(); ++i) {
    auto p = t.parent(i);
    if (p) j["leq"].push_back(Json::array({t.label(*p), t.label(i)}));
  }
  return j;
}

PartialAutomorphism pauto_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("tree") || !j.contains("map"))
    throw JsonError("automorphism JSON needs \"tree\" and \"map\"");
  MeetTree t = tree_from_json(j.at("tree"));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& pr : j.at("map"))
    pairs.emplace_back(pr.at(0).get<std::string>(), pr.at(1).get<std::string>());
  PautoValidation v = validate_pauto_labels(t, pairs);
  if (!v.ok())
    throw JsonError("not a partial automorphism: " + v.witness->kind);
  return std::move(*v.closed);
}

Json pauto_to_json(const PartialAutomorphism& p) {
  Json j;
  j["tree"] = tree_to_json(p.tree());
  j["map"] = Json::array();
  for (auto [a, b] : p.pairs())
    j["map"].push_back(Json::array({p.tree().label(a), p.tree().label(b)}));
  return j;
}

Json orbit_report_json(const MeetTree& t, const Orbit& o) {
  OrbitClass cls = classify_orbit(t, o);
  Json j;
  j["points"] = Json::array();
  for (ElementId x : o.points) j["points"].push_back(t.label(x));
  j["cyclic"] = o.cyclic;
  j["class"] = to_string(cls.kind);
  j["parameter"] = cls.parameter;
  return j;
}

Json type_to_json(const MeetTree& t, const OneTypeDescriptor& d) {
  Json j;
  j["anchor"] = t.label(d.anchor);
  j["strict_above"] = d.strict_above;
  j["cut"] = Json::array();
  for (ElementId x : d.cut) j["cut"].push_back(t.label(x));
  if (d.realized_at) j["realized_at"] = t.label(*d.realized_at);
  return j;
}

Json certificate_to_json(const DeterminismCertificate& cert) {
  Json j;
  j["success"] = cert.success;
  j["steps"] = Json::array();
  // trees only grow along the certificate, so ids stay valid in the final tree
  for (const CertificateStep& s : cert.per_step) {
    Json step;
    step["endpoint"] = s.endpoint;
    step["type"] = type_to_json(cert.final_map.tree(), s.type);
    j["steps"].push_back(std::move(step));
  }
  if (!cert.success) {
    j["failed_at"] = cert.failed_at;
    j["extension_count_at_failure"] = cert.failure_count;
  }
  j["final"] = pauto_to_json(cert.final_map);
  return j;
}

Json pec_query_to_json(const PecWitnessQuery& q) {
  Json j;
  j["eta0"] = q.eta0;
  j["mu0"] = q.mu0;
  j["zeta0"] = q.zeta0;
  j["m1"] = q.m1;
  j["m2"] = q.m2;
  j["triple_type"] = q.triple;
  if (q.residue) {
    j["residue"] = q.residue->first;
    j["k"] = q.residue->second;
  }
  return j;
}

Json exhaustion_report_json(const ExhaustionReport& r) {
  Json j;
  j["maxsize"] = r.maxsize;
  if (r.arity_bound) j["arity_bound"] = *r.arity_bound;
  j["nodes"] = r.nodes;
  j["frontier_digest"] = r.frontier_digest;
  return j;
}

Json amalg_solution_json(const AmalgSolution& s) {
  Json j;
  j["amalgam"] = pauto_to_json(s.amalgam);
  j["left_embedding"] = Json::array();
  for (const auto& [a, b] : s.left_embedding) j["left_embedding"].push_back(Json::array({a, b}));
  j["right_embedding"] = Json::array();
  for (const auto& [a, b] : s.right_embedding) j["right_embedding"].push_back(Json::array({a, b}));
  return j;
}

Json linmap_to_json(const LinMap& g) {
  Json j = Json::array();
  for (const auto& [a, b] : g.pairs) j.push_back(Json::array({a.str(), b.str()}));
  return j;
}

Json autpair_to_json(const AutPair& p) {
  Json j;
  j["points"] = Json::array();
  for (const Fraction& f : p.order) j["points"].push_back(f.str());
  j["g1"] = linmap_to_json(p.g1);
  j["g2"] = linmap_to_json(p.g2);
  j["anchor"] = p.anchor.str();
  return j;
}

Json word_to_json(const DistinguishingWord& w) {
  Json j;
  j["word"] = Json::array();
  for (int gen : w.word) {
    std::string name = (gen == 1 || gen == -1) ? "g1" : "g2";
    if (gen < 0) name += "^-1";
    j["word"].push_back(name);
  }
  std::string atom = w.atom_map == 1 ? "g1" : "g2";
  if (w.atom_inverse) atom += "^-1";
  j["atom"] = atom + "(w(a)) > w(a)";
  return j;
}

}  // namespace meettree

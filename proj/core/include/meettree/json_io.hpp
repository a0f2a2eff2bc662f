#pragma once

#include <string>

#include <json.hpp>

#include "meettree/amalg.hpp"
#include "meettree/nopair.hpp"
#include "meettree/pautomorph.hpp"
#include "meettree/pec.hpp"

namespace meettree {

using Json = nlohmann::ordered_json;

struct JsonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// {"elements": [...], "leq": [[lo,hi],...], "meet": {"a,b": "m"}} -- leq are
/// generators of the order, meet entries are optional and cross-checked.
MeetTree tree_from_json(const Json& j);
Json tree_to_json(const MeetTree& t);

/// {"tree": <tree>, "map": [[x,y],...]}
PartialAutomorphism pauto_from_json(const Json& j);
Json pauto_to_json(const PartialAutomorphism& p);

Json orbit_report_json(const MeetTree& t, const Orbit& o);
Json type_to_json(const MeetTree& t, const OneTypeDescriptor& d);
Json certificate_to_json(const DeterminismCertificate& cert);
Json pec_query_to_json(const PecWitnessQuery& q);
Json exhaustion_report_json(const ExhaustionReport& r);
Json amalg_solution_json(const AmalgSolution& s);
Json linmap_to_json(const LinMap& g);
Json autpair_to_json(const AutPair& p);
Json word_to_json(const DistinguishingWord& w);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace meettree

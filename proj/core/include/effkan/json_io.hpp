#pragma once

#include <memory>
#include <optional>

#include <json.hpp>

#include "effkan/awfs.hpp"
#include "effkan/kan.hpp"
#include "effkan/report.hpp"
#include "effkan/sieve.hpp"
#include "effkan/simplicial.hpp"

namespace effkan {

using json = nlohmann::json;

// Sieves serialize with each member as an ascending vertex list and the
// member list sorted lexicographically, so reports diff bit-exactly.
json to_json(const Sieve& s);
Sieve sieve_from_json(const json& j);

json to_json(const MonotoneMap& f);
MonotoneMap monotone_map_from_json(const json& j);

json to_json(const TruncatedSimplicialSet& X);
TruncatedSimplicialSet complex_from_json(const json& j);

json to_json(const CheckReport& report);

json to_json(const ValidationReport& report, const std::string& checker);

json to_json(const HornPushoutSequence& seq);
HornPushoutSequence sequence_from_json(const json& j);

json to_json(const SequenceSquare& sq);
SequenceSquare square_from_json(const json& j);

json problem_to_json(const SimplicialMap& alpha, const LiftingProblem& p);
LiftingProblem problem_from_json(const SimplicialMap& alpha, const json& j);

// A loaded fibration: either a bare complex (taken over the terminal object
// with the section through its first vertex) or an explicit
// {"source", "target", "map", "section"?} document. The sets are owned here;
// `map` points into them.
struct LoadedInstance {
    std::unique_ptr<TruncatedSimplicialSet> source;
    std::unique_ptr<TruncatedSimplicialSet> target;
    SimplicialMap map;
    std::optional<DegeneracySection> section;
};

LoadedInstance instance_from_json(const json& j);

}  // namespace effkan

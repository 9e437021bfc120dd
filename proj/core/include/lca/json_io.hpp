#pragma once

#include <json.hpp>

#include "lca/classify.hpp"
#include "lca/fgab.hpp"
#include "lca/invariants.hpp"
#include "lca/lattice.hpp"
#include "lca/witness.hpp"

namespace lca {

// All reports use the ordered flavour so emission order is fixed by the
// code below and output is byte-stable run to run.
using Json = nlohmann::ordered_json;

// Cardinals and ranks serialize as a number, or the string "inf".
Json json_of(const Cardinal& c);
Json json_of(const ExtNat& v);

// Expressions serialize as their grammar rendering, which parses back.
Json json_of(const GroupExpr& e);

Json json_of(const Clause& c);
Json json_of(const Verdict& v);
Json json_of(const PrimeClassSet& s);
Json json_of(const PeriodicPartition& p);
Json json_of(const Decomposition& d);

Json json_of(const PerPrimeRanks& r);
Json json_of(const InvariantRecord& r);
Json json_of(const CarinTuple& t);
Json json_of(const CanonicalForm& f);

Json json_of(const FgAbGroup& g);
Json json_of(const Subgroup& s);
Json json_of(const Lattice& l);

Json json_of(const EscapeCertificate& c);
Json json_of(const ExactMeetResult& m);
Json json_of(const PentagonInstance& p);
Json json_of(const DensityWitness& w);

}  // namespace lca

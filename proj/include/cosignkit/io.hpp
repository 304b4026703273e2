#pragma once

#include <string>

#include <json.hpp>

#include "cosignkit/circle.hpp"
#include "cosignkit/core.hpp"
#include "cosignkit/dijoin.hpp"
#include "cosignkit/oracle.hpp"

namespace cosignkit::io {

using json = nlohmann::json;

// Canonical form: set elements ascending, arc arrays sorted by id,
// objects with fixed key layout. parse(serialize(x)) == x.

json family_to_json(const Family& f);
Family family_from_json(const json& j);

json signing_to_json(const PartialSigning& s);
PartialSigning signing_from_json(const json& j);

json circle_to_json(const CircleInstance& inst);
CircleInstance circle_from_json(const json& j);

json arcset_to_json(const ArcSet& a);
ArcSet arcset_from_json(const json& j);

json plane_to_json(const PlaneDigraph& d);
PlaneDigraph plane_from_json(const json& j);

json lattice_to_json(const LatticeFamily& lat);
LatticeFamily lattice_from_json(const json& j);

json dijoin_pair_to_json(const DijoinPair& p);
DijoinPair dijoin_pair_from_json(const json& j);

json load_file(const std::string& path);
void save_file(const std::string& path, const json& j);

std::string plane_to_dot(const PlaneDigraph& d);

}  // namespace cosignkit::io

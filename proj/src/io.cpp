#include "cosignkit/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cosignkit::io {

namespace {

Bits bits_from_indices(int n, const json& arr) {
  Bits b(n);
  for (const auto& e : arr) {
    int v = e.get<int>();
    if (v < 0 || v >= n) throw Error("element index " + std::to_string(v) + " out of range");
    b.set(v);
  }
  return b;
}

json indices_of(const Bits& b) {
  json arr = json::array();
  for (int e : b.elements()) arr.push_back(e);
  return arr;
}

}  // namespace

json family_to_json(const Family& f) {
  json j;
  j["n"] = f.ground.n;
  if (!f.ground.names.empty()) j["names"] = f.ground.names;
  json sets = json::array();
  for (const Bits& s : f.sets) sets.push_back(indices_of(s));
  j["sets"] = sets;
  return j;
}

Family family_from_json(const json& j) {
  Family f;
  f.ground.n = j.at("n").get<int>();
  if (f.ground.n < 1) throw Error("ground set needs n >= 1");
  if (j.contains("names")) {
    f.ground.names = j.at("names").get<std::vector<std::string>>();
    if (static_cast<int>(f.ground.names.size()) != f.ground.n) throw Error("names length must equal n");
    auto sorted = f.ground.names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error("names must be unique");
  }
  for (const auto& s : j.at("sets")) f.add(bits_from_indices(f.ground.n, s));
  return f;
}

json signing_to_json(const PartialSigning& s) {
  json arr = json::array();
  for (Sign v : s.state) arr.push_back(v == Sign::positive ? "+" : (v == Sign::negative ? "-" : "?"));
  return json{{"signs", arr}};
}

PartialSigning signing_from_json(const json& j) {
  PartialSigning s;
  for (const auto& e : j.at("signs")) {
    std::string v = e.get<std::string>();
    if (v == "+")
      s.state.push_back(Sign::positive);
    else if (v == "-")
      s.state.push_back(Sign::negative);
    else if (v == "?")
      s.state.push_back(Sign::unsigned_);
    else
      throw Error("sign must be '+', '-' or '?'");
  }
  return s;
}

json circle_to_json(const CircleInstance& inst) {
  json j;
  j["n"] = inst.n;
  j["signs"] = signing_to_json(inst.signing)["signs"];
  json sets = json::array();
  for (const Bits& s : inst.family.sets) sets.push_back(indices_of(s));
  j["sets"] = sets;
  return j;
}

CircleInstance circle_from_json(const json& j) {
  CircleInstance inst;
  inst.n = j.at("n").get<int>();
  inst.signing = signing_from_json(json{{"signs", j.at("signs")}});
  if (inst.signing.size() != inst.n) throw Error("signs length must equal n");
  if (!inst.signing.complete()) throw Error("circle instance needs a complete signing");
  inst.family.ground.n = inst.n;
  for (const auto& s : j.at("sets")) inst.family.add(bits_from_indices(inst.n, s));
  return inst;
}

json arcset_to_json(const ArcSet& a) {
  std::vector<Arc> arcs = a.arcs;
  std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
    return x.tail != y.tail ? x.tail < y.tail : x.head < y.head;
  });
  json arr = json::array();
  for (const Arc& x : arcs) arr.push_back(json::array({x.tail, x.head}));
  return json{{"arcs", arr}};
}

ArcSet arcset_from_json(const json& j) {
  ArcSet a;
  for (const auto& e : j.at("arcs")) {
    if (!e.is_array() || e.size() != 2) throw Error("arc must be a [tail, head] pair");
    a.arcs.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return a;
}

json plane_to_json(const PlaneDigraph& d) {
  json j;
  j["vertices"] = d.n;
  std::vector<PlaneArc> arcs = d.arcs;
  std::sort(arcs.begin(), arcs.end(), [](const PlaneArc& a, const PlaneArc& b) { return a.id < b.id; });
  json arr = json::array();
  for (const PlaneArc& a : arcs)
    arr.push_back(json{{"id", a.id}, {"tail", a.tail}, {"head", a.head}, {"w", a.weight}});
  j["arcs"] = arr;
  json rot = json::array();
  for (const auto& r : d.rotation) rot.push_back(r);
  j["rotation"] = rot;
  return j;
}

PlaneDigraph plane_from_json(const json& j) {
  PlaneDigraph d;
  d.n = j.at("vertices").get<int>();
  for (const auto& a : j.at("arcs"))
    d.arcs.push_back({a.at("id").get<int>(), a.at("tail").get<int>(), a.at("head").get<int>(), a.at("w").get<int>()});
  for (const auto& r : j.at("rotation")) d.rotation.push_back(r.get<std::vector<int>>());
  if (static_cast<int>(d.rotation.size()) != d.n) throw Error("rotation table size must equal vertex count");
  return d;
}

json lattice_to_json(const LatticeFamily& lat) {
  json j;
  j["n"] = lat.n;
  j["min"] = indices_of(lat.min_set);
  j["max"] = indices_of(lat.max_set);
  json pre = json::array();
  std::vector<std::pair<int, int>> edges = lat.preorder;
  std::sort(edges.begin(), edges.end());
  for (auto [x, y] : edges) pre.push_back(json::array({x, y}));
  j["preorder"] = pre;
  return j;
}

LatticeFamily lattice_from_json(const json& j) {
  LatticeFamily lat;
  lat.n = j.at("n").get<int>();
  lat.min_set = bits_from_indices(lat.n, j.at("min"));
  lat.max_set = bits_from_indices(lat.n, j.at("max"));
  for (const auto& e : j.at("preorder")) {
    if (!e.is_array() || e.size() != 2) throw Error("preorder entry must be [x, y]");
    lat.preorder.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return lat;
}

json dijoin_pair_to_json(const DijoinPair& p) {
  std::vector<int> j1 = p.j1, j2 = p.j2;
  std::sort(j1.begin(), j1.end());
  std::sort(j2.begin(), j2.end());
  return json{{"j1", j1}, {"j2", j2}};
}

DijoinPair dijoin_pair_from_json(const json& j) {
  DijoinPair p;
  p.j1 = j.at("j1").get<std::vector<int>>();
  p.j2 = j.at("j2").get<std::vector<int>>();
  return p;
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string plane_to_dot(const PlaneDigraph& d) {
  std::ostringstream os;
  os << "digraph plane {\n";
  for (int v = 0; v < d.n; ++v) os << "  v" << v << ";\n";
  for (const PlaneArc& a : d.arcs)
    os << "  v" << a.tail << " -> v" << a.head << " [label=\"" << a.id << (a.weight ? ":1" : ":0") << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace cosignkit::io

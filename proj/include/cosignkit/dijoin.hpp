#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosignkit/circle.hpp"
#include "cosignkit/core.hpp"

namespace cosignkit {

// 0,1-weighted directed plane multigraph given by a rotation system.
// Arc ids are stable across reductions; contractions keep surviving ids.
struct PlaneArc {
  int id = -1;
  int tail = -1;
  int head = -1;
  int weight = 1;  // 0 or 1
};

struct PlaneDigraph {
  int n = 0;
  std::vector<PlaneArc> arcs;
  std::vector<std::vector<int>> rotation;  // per vertex, incident arc ids, clockwise

  const PlaneArc& arc_by_id(int id) const;
  int max_arc_id() const;
  bool weight0_vertex(int v) const;
  std::vector<int> in_neighbors(int v) const;
  std::vector<int> out_neighbors(int v) const;
};

struct PlaneViolation {
  std::string what;
};
std::optional<PlaneViolation> validate_plane(const PlaneDigraph& d);

int face_count(const PlaneDigraph& d);           // via rotation-system face tracing
int weak_component_count(const PlaneDigraph& d);

// ---- dicuts -----------------------------------------------------------

struct Dicut {
  Bits shore;
  std::vector<int> cut_arcs;  // ids of delta+(shore)
  long long weight = 0;
};

// All shores U with no entering arc, ∅ ≠ U ≠ V, ascending by lex order.
std::vector<Dicut> enumerate_dicuts(const PlaneDigraph& d, int cap = 24);
std::optional<Dicut> min_weight_dicut(const PlaneDigraph& d, int cap = 24);

bool is_proper(const PlaneDigraph& d, int cap = 24);

enum class AProperty : std::uint8_t { A1, A2, A3, A4, A5 };
struct SuperProperViolation {
  AProperty which;
  std::string detail;
  std::vector<int> witness;  // cycle vertices / shore / vertex ids as applicable
};
std::optional<SuperProperViolation> is_super_proper(const PlaneDigraph& d, int cap = 24);

struct DijoinPair {
  std::vector<int> j1, j2;  // disjoint arc-id sets within the weight-1 arcs
};

struct DijoinVerify {
  bool ok = true;
  std::string reason;
  std::optional<Bits> unhit_shore;
};
DijoinVerify verify_dijoin_pair(const PlaneDigraph& d, const DijoinPair& pair, int cap = 24);

// ---- reductions -------------------------------------------------------

struct ReductionRecord {
  std::string kind;  // contract_cycle | split_min_dicut | cut_vertex | two_cut_set |
                     // near_source_sink | bridge_eliminate | undirected_cycle_contract
  int vertex = -1;               // the vertex the reduction pivots on, if any
  std::vector<int> arcs_a;       // kind-specific (e.g. C1 / {e}, added bridge arcs)
  std::vector<int> arcs_b;       // kind-specific (e.g. C2 / {f})
  int vertices_after = 0;
  int arcs_after = 0;
};

struct Reduced {
  PlaneDigraph graph;
  ReductionRecord record;
};
struct SplitReduced {
  PlaneDigraph d1, d2;
  int e_id = -1, f_id = -1;  // the two weight-1 cut arcs shared by both parts
  ReductionRecord record;
};

// planar edge contraction; parallel arcs that become loops are deleted
PlaneDigraph contract_arc(const PlaneDigraph& d, int arc_id);

Reduced reduce_acyclic_once(const PlaneDigraph& d);               // throws ConfigurationAbsent when acyclic
PlaneDigraph reduce_acyclic(const PlaneDigraph& d, std::vector<ReductionRecord>* records = nullptr);
SplitReduced reduce_min_dicut_split(const PlaneDigraph& d, int cap = 24);  // throws NoSuchDicut
Reduced reduce_cut_vertex(const PlaneDigraph& d, int x);
// A4: either a single contracted instance (>2 components) or a split
std::optional<Reduced> reduce_two_cut_set_contract(const PlaneDigraph& d, int x, int v);
SplitReduced reduce_two_cut_set_split(const PlaneDigraph& d, int x, int v);
Reduced reduce_near_source_sink(const PlaneDigraph& d, int v);

struct CircleBuild {
  CircleInstance instance;
  std::vector<int> circle_to_vertex;  // circle position -> graph vertex
  std::vector<Bits> member_shores;    // one representative shore per member
};
CircleBuild build_circle_instance(const PlaneDigraph& d, int v, int cap = 24);

struct DijoinOptions {
  int dicut_cap = 24;
  int base_cap = 24;
  bool debug = false;          // verify properness/planarity/lifts at every stage
  bool circle_debug = false;   // step-wise revalidation inside bridge eliminations
};

Reduced bridge_eliminate(const PlaneDigraph& d, int v, const DijoinOptions& opts = {});

// contract one undirected cycle of the weight-1 subgraph; record carries
// the orientation split (C1 in arcs_a, C2 in arcs_b)
Reduced contract_undirected_cycle_once(const PlaneDigraph& d);  // throws ConfigurationAbsent
// repeat until the weight-1 arcs form a forest
PlaneDigraph contract_undirected_cycles(const PlaneDigraph& d, std::vector<ReductionRecord>* records = nullptr);

// lift of a split reduction: aligns both pairs on the shared weight-1 cut
// arcs e, f and merges them
DijoinPair merge_aligned(DijoinPair a, DijoinPair b, int e, int f);

DijoinPair base_solve_spanning(const PlaneDigraph& d, int cap = 24);

struct DecomposeResult {
  DijoinPair pair;
  std::vector<ReductionRecord> records;
};
DecomposeResult decompose_dijoins(const PlaneDigraph& d, const DijoinOptions& opts = {});

}  // namespace cosignkit

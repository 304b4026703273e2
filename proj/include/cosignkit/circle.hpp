#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cosignkit/core.hpp"

namespace cosignkit {

// Vertices 0..n-1 sit around a circle in index order; the family members
// are circular intervals. Validity is P0..P4 plus no complementary pair.
struct CircleInstance {
  int n = 0;
  PartialSigning signing;  // complete
  Family family;
};

CircleInstance dual(const CircleInstance& inst);

enum class CircleProperty : std::uint8_t { P0, P1, P2, P3, P4, complementary };
const char* to_string(CircleProperty p);

struct CircleViolation {
  CircleProperty property;
  int set_a = -1;
  int set_b = -1;
};

std::optional<CircleViolation> validate_instance(const CircleInstance& inst);

struct ArcSet {
  std::vector<Arc> arcs;
};

// Chords cross iff their endpoint pairs strictly interleave around the
// circle; shared endpoints never cross.
std::optional<std::pair<int, int>> outer_planar_violation(const ArcSet& a, int n);
inline bool is_outer_planar(const ArcSet& a, int n) { return !outer_planar_violation(a, n).has_value(); }

bool arc_set_covers(const ArcSet& a, const Family& f);

// ---- solver ----------------------------------------------------------

struct SolveRecord {
  std::string step;  // "step1", "step2a", "step2b", "step3a", "step3b", "step3c", "step4", "step5"
  std::vector<Arc> arcs_added;
  std::vector<int> vertices_deleted;   // original indices
  std::vector<Bits> sets_covered;      // removed members, original coordinates
};

struct SolveTrace {
  std::vector<SolveRecord> records;
  ArcSet arcs;
};

struct SolveOptions {
  bool revalidate = false;           // re-check P0..P4 after every step
  std::size_t* op_counter = nullptr; // unit = one member/pair/vertex visit
};

// Reduction state over the original coordinates. Members of `family` are
// stored restricted to `live`; deletions are always contiguous intervals
// of the live circle.
struct CircleState {
  int n = 0;
  std::vector<Sign> sign;
  Bits live;
  std::vector<Bits> family;
  std::vector<Arc> arcs;
  std::vector<SolveRecord> records;
  SolveOptions opts;

  static CircleState start(const CircleInstance& inst, const SolveOptions& opts = {});

  int next_live(int v) const;
  int prev_live(int v) const;
  std::vector<int> live_order() const;
  bool is_positive(int v) const { return sign[static_cast<std::size_t>(v)] == Sign::positive; }

  // residual instance on compact coordinates (for validation / inspection)
  CircleInstance compact() const;
};

struct DangerousWitness {
  int vertex = -1;
  bool is_pair = false;
  Bits set_a;
  Bits set_b;
};

std::vector<DangerousWitness> find_dangerous(int v, const CircleState& st);
bool is_removable(int v, const CircleState& st);

// Individual reduction steps; each returns whether it applied.
void step1_adjacent(CircleState& st);
bool step2_minus_end(CircleState& st);
bool step3_mmpp(CircleState& st);
bool step4_mmpm(CircleState& st);
bool step5_ppmp(CircleState& st);

SolveTrace solve_circle(const CircleInstance& inst, const SolveOptions& opts = {});

// Exhaustive covering search with outer-planarity pruning; nullopt
// certifies infeasibility. Throws TooLarge beyond the caps.
struct BruteCircleCaps {
  int max_n = 10;
  int max_candidates = 24;
};
std::optional<ArcSet> brute_force_circle(const CircleInstance& inst, const BruteCircleCaps& caps = {});

// ---- interval / block helpers ---------------------------------------

// Circular interval {start, start+1, ..., start+len-1} mod n.
Bits make_interval(int n, int start, int len);
bool is_circular_interval(const Bits& s, int n);

enum class BlockKind : std::uint8_t { one_block, two_block, co_two_block, other };
struct BlockView {
  BlockKind kind = BlockKind::other;
};
BlockView classify_member(const Bits& u, const CircleState& st);
std::vector<int> sign_block(int v, const CircleState& st);  // live vertices, circle order

}  // namespace cosignkit

#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "cosignkit/core.hpp"

namespace cosignkit {

enum class ForcedSign : std::uint8_t { positive, negative };

// One forcing event: `element` is pinned to `sign` by one witness set
// (plain forcing) or an ordered pair (cc forcing, pair_witness).
struct ForcingWitness {
  int element = -1;
  ForcedSign sign = ForcedSign::positive;
  int set_a = -1;
  int set_b = -1;  // second member of the pair, -1 for plain forcing
  bool pair_witness = false;
  bool trivial = false;
};

enum class ViolationKind : std::uint8_t { missing_u, missing_v, cc_missing_u, cc_missing_v };

struct ConditionViolation {
  ViolationKind kind = ViolationKind::missing_u;
  int set_a = -1;
  int set_b = -1;  // cc kinds carry a pair
};

struct RunStats {
  long long iterations = 0;   // signing events; equals n at completion
  long long set_scans = 0;    // members visited by plain forcing scans
  long long pair_scans = 0;   // pairs visited by cc forcing scans
  long long forced_count = 0;
  long long free_count = 0;
  // cc forcing-witness shapes, one per applied forcing (proof-case coverage)
  long long pos_union_proper = 0;
  long long pos_union_full = 0;
  long long neg_inter_empty = 0;
  long long neg_inter_nonempty = 0;
};

struct CosignResult {
  PartialSigning signing;
  RunStats stats;
};
using CosignOutcome = std::variant<CosignResult, ConditionViolation>;

// Feasibility of plain cosigning: every member needs an element u whose
// co-singleton is absent and an excluded v whose singleton is absent.
// Throws NotCrossing when F is not a crossing family.
std::optional<ConditionViolation> check_cosign_condition(const Family& f);

// Scans F in family order; returns the first forced unsigned element.
// Throws ConflictError if one scan forces some element both ways.
std::optional<ForcingWitness> find_forced(const Family& f, const PartialSigning& s, RunStats* stats = nullptr);

CosignOutcome cosign(const Family& f);

// Feasibility of the pairwise-closed variant, quantified over set pairs.
std::optional<ConditionViolation> check_cc_condition(const Family& f);

// Pair scan, (i,j) with i <= j in lexicographic order (diagonal first per i).
std::optional<ForcingWitness> cc_find_forced(const Family& f, const PartialSigning& s, RunStats* stats = nullptr);

CosignOutcome cc_cosign(const Family& f);

// Exhaustive testing oracles; lexicographically first valid signing
// (element order, '-' before '+'). Throw TooLarge beyond max_n.
std::optional<PartialSigning> brute_force_cosign(const Family& f, int max_n = 20);
std::optional<PartialSigning> brute_force_cc_cosign(const Family& f, int max_n = 20);

}  // namespace cosignkit

#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "cosignkit/core.hpp"
#include "cosignkit/cosign.hpp"

namespace cosignkit {

// Compact representation of a nonempty intersection/union-closed family:
// members are exactly the preorder-closed sets between min_set and max_set.
struct LatticeFamily {
  int n = 0;
  Bits min_set;
  Bits max_set;
  std::vector<std::pair<int, int>> preorder;  // edge x -> y: members holding x hold y

  // preorder closure of s
  Bits closure(const Bits& s) const;
  bool contains(const Bits& u) const;
  std::vector<Bits> enumerate(std::size_t cap = 1u << 20) const;
};

struct ModularWeights {
  std::vector<long long> a;
};

struct LatticeMinResult {
  long long value = 0;
  Bits minimizer;
};

// min of the modular f(U) = sum of a over U, over the represented family.
// Nonnegative weights resolve to the closure of min_set; general integer
// weights go through the closure/min-cut (project selection) reduction.
LatticeMinResult lattice_min_modular(const LatticeFamily& lat, const ModularWeights& a);

// F accessed through sub-family representations F_uv plus a membership
// oracle. co_sub carries the complement family's representations so
// negative-sign forcing reuses the positive path.
struct WellProvidedFamily {
  int n = 0;
  std::vector<std::optional<LatticeFamily>> sub;     // index u*n+v: F_uv
  std::vector<std::optional<LatticeFamily>> co_sub;  // complement family's F̄_uv
  std::function<bool(const Bits&)> member;

  const std::optional<LatticeFamily>& at(int u, int v) const { return sub[static_cast<std::size_t>(u) * n + v]; }
  const std::optional<LatticeFamily>& co_at(int u, int v) const {
    return co_sub[static_cast<std::size_t>(u) * n + v];
  }
};

WellProvidedFamily explicit_to_well_provided(const Family& f);

struct OracleStats {
  long long lattice_calls = 0;
  long long max_calls_per_iteration = 0;
  long long iterations = 0;
};

// Witness set per the plain forcing definitions: positive returns a member
// containing u whose other elements are all negative; negative returns a
// member excluding u whose outside is otherwise all positive.
std::optional<Bits> oracle_is_forced(int u, ForcedSign sign, const PartialSigning& s, const WellProvidedFamily& w,
                                     OracleStats* stats = nullptr);

PartialSigning oracle_cosign(const WellProvidedFamily& w, OracleStats* stats = nullptr);

}  // namespace cosignkit

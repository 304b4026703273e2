#include "cosignkit/core.hpp"

#include <algorithm>

namespace cosignkit {

std::optional<CrossingWitness> crossing_violation(const Family& f) {
  const int m = f.size();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Bits& u = f.at(i);
      const Bits& w = f.at(j);
      Bits inter = u & w;
      if (inter.none()) continue;
      Bits uni = u | w;
      if (uni.is_full()) continue;
      if (!f.contains(inter) || !f.contains(uni)) return CrossingWitness{i, j};
    }
  }
  return std::nullopt;
}

Family crossing_closure(const Family& generators, std::size_t max_members) {
  Family out;
  out.ground = generators.ground;
  out.sets = generators.sets;
  bool changed = true;
  while (changed) {
    changed = false;
    const int m = out.size();
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        Bits inter = out.at(i) & out.at(j);
        if (inter.none()) continue;
        Bits uni = out.at(i) | out.at(j);
        if (uni.is_full()) continue;
        if (!out.contains(inter)) {
          out.add(inter);
          changed = true;
        }
        if (!out.contains(uni)) {
          out.add(uni);
          changed = true;
        }
        if (out.sets.size() > max_members)
          throw CapacityExceeded("crossing closure exceeded " + std::to_string(max_members) + " members");
      }
    }
  }
  return out;
}

RestrictResult restrict_family(const Family& f, const Bits& ground_subset, bool keep_full) {
  if (ground_subset.none()) throw EmptyGround("restriction to an empty ground set");
  RestrictResult r;
  r.index_map = ground_subset.elements();
  const int k = static_cast<int>(r.index_map.size());
  r.family.ground.n = k;
  if (!f.ground.names.empty()) {
    for (int old : r.index_map) r.family.ground.names.push_back(f.ground.names[static_cast<std::size_t>(old)]);
  }
  std::vector<int> old_to_new(static_cast<std::size_t>(f.n()), -1);
  for (int idx = 0; idx < k; ++idx) old_to_new[static_cast<std::size_t>(r.index_map[static_cast<std::size_t>(idx)])] = idx;

  auto seen = [](const std::vector<Bits>& v, const Bits& b) {
    return std::find(v.begin(), v.end(), b) != v.end();
  };
  for (const Bits& u : f.sets) {
    Bits cut = u & ground_subset;
    if (cut.none()) continue;
    Bits mapped(k);
    for (int e : cut.elements()) mapped.set(old_to_new[static_cast<std::size_t>(e)]);
    if (keep_full && !seen(r.raw_sets, mapped)) r.raw_sets.push_back(mapped);
    if (mapped.is_full()) {
      r.dropped_full++;
      continue;
    }
    if (!r.family.contains(mapped)) r.family.sets.push_back(mapped);
  }
  return r;
}

std::pair<Family, PartialSigning> dual(const Family& f, const PartialSigning& signing) {
  Family out;
  out.ground = f.ground;
  for (const Bits& u : f.sets) out.sets.push_back(u.complement());
  return {out, signing.flipped()};
}

std::vector<int> covered_indices(const Family& f, const std::vector<Arc>& arcs) {
  std::vector<int> out;
  for (int i = 0; i < f.size(); ++i) {
    for (const Arc& a : arcs) {
      if (covers(a, f.at(i))) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

Family covered_sets(const Family& f, const std::vector<Arc>& arcs) {
  Family out;
  out.ground = f.ground;
  for (int i : covered_indices(f, arcs)) out.sets.push_back(f.at(i));
  return out;
}

std::optional<std::pair<int, int>> has_complementary_pair(const Family& f) {
  for (int i = 0; i < f.size(); ++i) {
    Bits comp = f.at(i).complement();
    for (int j = 0; j < f.size(); ++j) {
      if (i != j && f.at(j) == comp) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

std::optional<int> cosigning_violation(const Family& f, const PartialSigning& s) {
  Bits pos = s.positives();
  Bits neg = s.negatives();
  for (int i = 0; i < f.size(); ++i) {
    const Bits& u = f.at(i);
    if (!(u & pos).any()) return i;
    if (!(u.complement() & neg).any()) return i;
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> cc_cosigning_violation(const Family& f, const PartialSigning& s) {
  Bits pos = s.positives();
  Bits neg = s.negatives();
  for (int i = 0; i < f.size(); ++i) {
    for (int j = i; j < f.size(); ++j) {
      Bits inter = f.at(i) & f.at(j);
      if (inter.any() && !(inter & pos).any()) return std::make_pair(i, j);
      Bits uni = f.at(i) | f.at(j);
      if (!uni.is_full() && !(uni.complement() & neg).any()) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

}  // namespace cosignkit

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cosignkit/bits.hpp"
#include "cosignkit/errors.hpp"

namespace cosignkit {

struct GroundSet {
  int n = 0;
  std::vector<std::string> names;  // optional; when present, size n, unique

  std::string label(int i) const {
    if (i >= 0 && i < static_cast<int>(names.size())) return names[i];
    return "v" + std::to_string(i + 1);
  }
};

enum class Sign : std::uint8_t { negative, unsigned_, positive };

// Per-element sign state; a completed signing has no unsigned entries.
struct PartialSigning {
  std::vector<Sign> state;

  static PartialSigning all_unsigned(int n) { return {std::vector<Sign>(static_cast<std::size_t>(n), Sign::unsigned_)}; }
  static PartialSigning from_positives(int n, const Bits& pos) {
    PartialSigning s = all_unsigned(n);
    for (int i = 0; i < n; ++i) s.state[static_cast<std::size_t>(i)] = pos.test(i) ? Sign::positive : Sign::negative;
    return s;
  }

  int size() const { return static_cast<int>(state.size()); }
  Sign at(int i) const { return state[static_cast<std::size_t>(i)]; }
  void assign(int i, Sign s) { state[static_cast<std::size_t>(i)] = s; }
  bool complete() const {
    for (Sign s : state)
      if (s == Sign::unsigned_) return false;
    return true;
  }
  Bits positives() const { return mask(Sign::positive); }
  Bits negatives() const { return mask(Sign::negative); }
  PartialSigning flipped() const {
    PartialSigning r = *this;
    for (Sign& s : r.state) {
      if (s == Sign::positive)
        s = Sign::negative;
      else if (s == Sign::negative)
        s = Sign::positive;
    }
    return r;
  }

 private:
  Bits mask(Sign which) const {
    Bits b(size());
    for (int i = 0; i < size(); ++i)
      if (state[static_cast<std::size_t>(i)] == which) b.set(i);
    return b;
  }
};

// Directed arc from a negative vertex to a positive one.
struct Arc {
  int tail = -1;
  int head = -1;
  bool operator==(const Arc& o) const { return tail == o.tail && head == o.head; }
};

// Ordered collection of distinct nonempty proper subsets of the ground set.
// Insertion order is the family order; all first-witness results follow it.
struct Family {
  GroundSet ground;
  std::vector<Bits> sets;

  int n() const { return ground.n; }
  int size() const { return static_cast<int>(sets.size()); }
  const Bits& at(int i) const { return sets[static_cast<std::size_t>(i)]; }

  bool contains(const Bits& s) const {
    for (const Bits& m : sets)
      if (m == s) return true;
    return false;
  }

  // Appends unless duplicate; rejects empty and full sets.
  void add(const Bits& s) {
    if (s.none()) throw Error("family member must be nonempty");
    if (s.count() == ground.n) throw Error("family member must be a proper subset");
    if (!contains(s)) sets.push_back(s);
  }

  static Family over(int n, std::vector<Bits> members) {
    Family f;
    f.ground.n = n;
    for (Bits& m : members) f.add(m);
    return f;
  }
  static Family over(int n, std::initializer_list<std::initializer_list<int>> members) {
    Family f;
    f.ground.n = n;
    for (const auto& m : members) f.add(Bits::of(n, m));
    return f;
  }
};

// ---- core operations -------------------------------------------------

struct CrossingWitness {
  int i = -1, j = -1;  // first violating pair in family order
};

std::optional<CrossingWitness> crossing_violation(const Family& f);
inline bool is_crossing_family(const Family& f) { return !crossing_violation(f).has_value(); }

// Smallest crossing family containing the generators.
Family crossing_closure(const Family& generators, std::size_t max_members = 4096);

struct RestrictResult {
  Family family;                  // over the compact ground set V'; never holds V'
  std::vector<int> index_map;     // new index -> old index
  int dropped_full = 0;           // members equal to V' removed from `family`
  std::vector<Bits> raw_sets;     // literal F[V'] incl. full members; only with keep_full
};
RestrictResult restrict_family(const Family& f, const Bits& ground_subset, bool keep_full = false);

std::pair<Family, PartialSigning> dual(const Family& f, const PartialSigning& signing);

inline bool covers(const Arc& a, const Bits& u) { return !u.test(a.tail) && u.test(a.head); }
std::vector<int> covered_indices(const Family& f, const std::vector<Arc>& arcs);
Family covered_sets(const Family& f, const std::vector<Arc>& arcs);

std::optional<std::pair<int, int>> has_complementary_pair(const Family& f);

// true iff every member holds a positive element and excludes a negative one;
// on failure the first violating member index.
std::optional<int> cosigning_violation(const Family& f, const PartialSigning& s);
inline bool verify_cosigning(const Family& f, const PartialSigning& s) { return !cosigning_violation(f, s).has_value(); }

// The pairwise strengthening; the diagonal pair is included, so a
// cc-cosigning is in particular a cosigning.
std::optional<std::pair<int, int>> cc_cosigning_violation(const Family& f, const PartialSigning& s);
inline bool verify_cc_cosigning(const Family& f, const PartialSigning& s) { return !cc_cosigning_violation(f, s).has_value(); }

}  // namespace cosignkit

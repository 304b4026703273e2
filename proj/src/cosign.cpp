#include "cosignkit/cosign.hpp"

#include <algorithm>

namespace cosignkit {
namespace {

void require_crossing(const Family& f) {
  if (auto w = crossing_violation(f))
    throw NotCrossing("family is not crossing; first violating pair (" + std::to_string(w->i) + "," +
                      std::to_string(w->j) + ")");
}

// Positive forcing inside `region`: all elements but one are negative and
// that one is unsigned.
std::optional<int> forced_positive_in(const Bits& region, const Bits& neg, const Bits& pos) {
  Bits undecided = region.minus(neg);
  if (undecided.count() != 1) return std::nullopt;
  int e = undecided.first();
  if (pos.test(e)) return std::nullopt;  // already satisfied
  return e;
}

// Negative forcing outside `region`: region is the member; all elements
// outside it but one are positive and that one is unsigned.
std::optional<int> forced_negative_out(const Bits& member, const Bits& neg, const Bits& pos) {
  Bits outside = member.complement();
  Bits undecided = outside.minus(pos);
  if (undecided.count() != 1) return std::nullopt;
  int e = undecided.first();
  if (neg.test(e)) return std::nullopt;
  return e;
}

struct ScanCollector {
  // first witness in scan order plus per-element sign tracking for
  // conflict detection
  std::optional<ForcingWitness> first;
  std::vector<std::uint8_t> seen_pos, seen_neg;

  explicit ScanCollector(int n) : seen_pos(static_cast<std::size_t>(n), 0), seen_neg(static_cast<std::size_t>(n), 0) {}

  void offer(const ForcingWitness& w) {
    auto& same = w.sign == ForcedSign::positive ? seen_pos : seen_neg;
    auto& other = w.sign == ForcedSign::positive ? seen_neg : seen_pos;
    if (other[static_cast<std::size_t>(w.element)]) throw ConflictError(w.element);
    same[static_cast<std::size_t>(w.element)] = 1;
    if (!first) first = w;
  }
};

int lowest_unsigned(const PartialSigning& s) {
  for (int i = 0; i < s.size(); ++i)
    if (s.at(i) == Sign::unsigned_) return i;
  return -1;
}

void record_shape(RunStats& st, const ForcingWitness& w, const Family& f) {
  if (!w.pair_witness) return;
  Bits a = f.at(w.set_a);
  Bits b = f.at(w.set_b);
  if (w.sign == ForcedSign::positive) {
    if ((a | b).is_full())
      st.pos_union_full++;
    else
      st.pos_union_proper++;
  } else {
    if ((a & b).none())
      st.neg_inter_empty++;
    else
      st.neg_inter_nonempty++;
  }
}

}  // namespace

std::optional<ConditionViolation> check_cosign_condition(const Family& f) {
  require_crossing(f);
  const int n = f.n();
  Bits singles(n), co_singles(n);
  for (const Bits& u : f.sets) {
    if (u.count() == 1) singles.set(u.first());
    if (u.count() == n - 1) co_singles.set(u.complement().first());
  }
  for (int i = 0; i < f.size(); ++i) {
    const Bits& u = f.at(i);
    if (u.minus(co_singles).none()) return ConditionViolation{ViolationKind::missing_u, i, -1};
    if (u.complement().minus(singles).none()) return ConditionViolation{ViolationKind::missing_v, i, -1};
  }
  return std::nullopt;
}

std::optional<ForcingWitness> find_forced(const Family& f, const PartialSigning& s, RunStats* stats) {
  const int n = f.n();
  Bits pos = s.positives();
  Bits neg = s.negatives();
  ScanCollector scan(n);
  for (int i = 0; i < f.size(); ++i) {
    if (stats) stats->set_scans++;
    const Bits& u = f.at(i);
    if (auto e = forced_positive_in(u, neg, pos))
      scan.offer({*e, ForcedSign::positive, i, -1, false, u.count() == 1});
    if (auto e = forced_negative_out(u, neg, pos))
      scan.offer({*e, ForcedSign::negative, i, -1, false, u.count() == n - 1});
  }
  return scan.first;
}

CosignOutcome cosign(const Family& f) {
  require_crossing(f);
  if (auto v = check_cosign_condition(f)) return *v;
  const int n = f.n();
  RunStats st;
  PartialSigning s = PartialSigning::all_unsigned(n);

  // pre-pass: all trivially forced elements, one walk over F
  {
    ScanCollector scan(n);
    for (int i = 0; i < f.size(); ++i) {
      st.set_scans++;
      const Bits& u = f.at(i);
      if (u.count() == 1) scan.offer({u.first(), ForcedSign::positive, i, -1, false, true});
      if (u.count() == n - 1) scan.offer({u.complement().first(), ForcedSign::negative, i, -1, false, true});
    }
    for (int e = 0; e < n; ++e) {
      if (scan.seen_pos[static_cast<std::size_t>(e)]) s.assign(e, Sign::positive);
      if (scan.seen_neg[static_cast<std::size_t>(e)]) s.assign(e, Sign::negative);
      if (s.at(e) != Sign::unsigned_) {
        st.iterations++;
        st.forced_count++;
      }
    }
  }

  while (!s.complete()) {
    auto w = find_forced(f, s, &st);
    if (w) {
      s.assign(w->element, w->sign == ForcedSign::positive ? Sign::positive : Sign::negative);
      st.forced_count++;
    } else {
      s.assign(lowest_unsigned(s), Sign::positive);
      st.free_count++;
    }
    st.iterations++;
  }
  if (!verify_cosigning(f, s)) throw InternalInvariantBreach("cosign output failed verification");
  return CosignResult{std::move(s), st};
}

std::optional<ConditionViolation> check_cc_condition(const Family& f) {
  require_crossing(f);
  const int n = f.n();
  const int m = f.size();
  // elements u with V\{u} realizable as a pairwise union, and v with {v}
  // realizable as a pairwise intersection
  Bits bad_pos(n), bad_neg(n);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      Bits uni = f.at(i) | f.at(j);
      if (uni.count() == n - 1) bad_pos.set(uni.complement().first());
      Bits inter = f.at(i) & f.at(j);
      if (inter.count() == 1) bad_neg.set(inter.first());
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      Bits inter = f.at(i) & f.at(j);
      if (inter.any() && inter.minus(bad_pos).none())
        return ConditionViolation{ViolationKind::cc_missing_u, i, j};
      Bits uni = f.at(i) | f.at(j);
      if (!uni.is_full() && uni.complement().minus(bad_neg).none())
        return ConditionViolation{ViolationKind::cc_missing_v, i, j};
    }
  }
  return std::nullopt;
}

std::optional<ForcingWitness> cc_find_forced(const Family& f, const PartialSigning& s, RunStats* stats) {
  const int n = f.n();
  Bits pos = s.positives();
  Bits neg = s.negatives();
  ScanCollector scan(n);
  for (int i = 0; i < f.size(); ++i) {
    for (int j = i; j < f.size(); ++j) {
      if (stats) stats->pair_scans++;
      Bits inter = f.at(i) & f.at(j);
      if (inter.any()) {
        if (auto e = forced_positive_in(inter, neg, pos))
          scan.offer({*e, ForcedSign::positive, i, j, true, inter.count() == 1});
      }
      Bits uni = f.at(i) | f.at(j);
      if (!uni.is_full()) {
        Bits outside = uni.complement();
        Bits undecided = outside.minus(pos);
        if (undecided.count() == 1) {
          int e = undecided.first();
          if (!neg.test(e)) scan.offer({e, ForcedSign::negative, i, j, true, outside.count() == 1});
        }
      }
    }
  }
  return scan.first;
}

CosignOutcome cc_cosign(const Family& f) {
  require_crossing(f);
  if (auto v = check_cc_condition(f)) return *v;
  const int n = f.n();
  RunStats st;
  PartialSigning s = PartialSigning::all_unsigned(n);

  // pre-pass: trivial forcings (singleton intersections, co-singleton unions)
  {
    ScanCollector scan(n);
    std::vector<ForcingWitness> applied(static_cast<std::size_t>(n));
    for (int i = 0; i < f.size(); ++i) {
      for (int j = i; j < f.size(); ++j) {
        st.pair_scans++;
        Bits inter = f.at(i) & f.at(j);
        if (inter.count() == 1) {
          ForcingWitness w{inter.first(), ForcedSign::positive, i, j, true, true};
          bool fresh = !scan.seen_pos[static_cast<std::size_t>(w.element)];
          scan.offer(w);
          if (fresh) applied[static_cast<std::size_t>(w.element)] = w;
        }
        Bits uni = f.at(i) | f.at(j);
        if (uni.count() == n - 1) {
          ForcingWitness w{uni.complement().first(), ForcedSign::negative, i, j, true, true};
          bool fresh = !scan.seen_neg[static_cast<std::size_t>(w.element)];
          scan.offer(w);
          if (fresh) applied[static_cast<std::size_t>(w.element)] = w;
        }
      }
    }
    for (int e = 0; e < n; ++e) {
      if (scan.seen_pos[static_cast<std::size_t>(e)] || scan.seen_neg[static_cast<std::size_t>(e)]) {
        s.assign(e, scan.seen_pos[static_cast<std::size_t>(e)] ? Sign::positive : Sign::negative);
        st.iterations++;
        st.forced_count++;
        record_shape(st, applied[static_cast<std::size_t>(e)], f);
      }
    }
  }

  while (!s.complete()) {
    auto w = cc_find_forced(f, s, &st);
    if (w) {
      s.assign(w->element, w->sign == ForcedSign::positive ? Sign::positive : Sign::negative);
      st.forced_count++;
      record_shape(st, *w, f);
    } else {
      s.assign(lowest_unsigned(s), Sign::positive);
      st.free_count++;
    }
    st.iterations++;
  }
  if (!verify_cc_cosigning(f, s)) throw InternalInvariantBreach("cc_cosign output failed verification");
  return CosignResult{std::move(s), st};
}

namespace {

template <class Check>
std::optional<PartialSigning> brute_force(const Family& f, int max_n, Check valid) {
  const int n = f.n();
  if (n > max_n) throw TooLarge("brute force capped at n = " + std::to_string(max_n));
  // element 0 is the most significant position: lexicographic order with
  // '-' < '+'
  for (std::uint64_t k = 0; k < (1ull << n); ++k) {
    Bits pos(n);
    for (int i = 0; i < n; ++i)
      if ((k >> (n - 1 - i)) & 1ull) pos.set(i);
    PartialSigning s = PartialSigning::from_positives(n, pos);
    if (valid(s)) return s;
  }
  return std::nullopt;
}

}  // namespace

std::optional<PartialSigning> brute_force_cosign(const Family& f, int max_n) {
  return brute_force(f, max_n, [&](const PartialSigning& s) { return verify_cosigning(f, s); });
}

std::optional<PartialSigning> brute_force_cc_cosign(const Family& f, int max_n) {
  return brute_force(f, max_n, [&](const PartialSigning& s) { return verify_cc_cosigning(f, s); });
}

}  // namespace cosignkit

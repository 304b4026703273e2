#include "cosignkit/circle.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

namespace cosignkit {

namespace {

void bump(const SolveOptions& opts, std::size_t k) {
  if (opts.op_counter) *opts.op_counter += k;
}

}  // namespace

const char* to_string(CircleProperty p) {
  switch (p) {
    case CircleProperty::P0: return "P0";
    case CircleProperty::P1: return "P1";
    case CircleProperty::P2: return "P2";
    case CircleProperty::P3: return "P3";
    case CircleProperty::P4: return "P4";
    case CircleProperty::complementary: return "complementary";
  }
  return "?";
}

Bits make_interval(int n, int start, int len) {
  Bits b(n);
  for (int i = 0; i < len; ++i) b.set((start + i) % n);
  return b;
}

bool is_circular_interval(const Bits& s, int n) {
  if (s.none()) return false;
  if (s.count() == n) return true;
  int boundaries = 0;
  for (int i = 0; i < n; ++i)
    if (s.test(i) && !s.test((i + 1) % n)) boundaries++;
  return boundaries == 1;
}

CircleInstance dual(const CircleInstance& inst) {
  CircleInstance d;
  d.n = inst.n;
  auto [fam, sig] = dual(inst.family, inst.signing);
  d.family = std::move(fam);
  d.signing = std::move(sig);
  return d;
}

std::optional<CircleViolation> validate_instance(const CircleInstance& inst) {
  const Family& f = inst.family;
  const int n = inst.n;
  Bits pos = inst.signing.positives();
  Bits neg = inst.signing.negatives();

  for (int i = 0; i < f.size(); ++i)
    if (!is_circular_interval(f.at(i), n)) return CircleViolation{CircleProperty::P0, i, -1};
  if (auto w = crossing_violation(f)) return CircleViolation{CircleProperty::P1, w->i, w->j};
  for (int i = 0; i < f.size(); ++i) {
    if (!(f.at(i) & pos).any()) return CircleViolation{CircleProperty::P2, i, -1};
    if (!(f.at(i).complement() & neg).any()) return CircleViolation{CircleProperty::P2, i, -1};
  }
  // complementary pairs violate P3 and P4 at once; name them first
  if (auto p = has_complementary_pair(f)) return CircleViolation{CircleProperty::complementary, p->first, p->second};
  for (int i = 0; i < f.size(); ++i) {
    for (int j = i + 1; j < f.size(); ++j) {
      if ((f.at(i) & f.at(j)).any()) continue;
      Bits outside = (f.at(i) | f.at(j)).complement();
      if (!(outside & neg).any()) return CircleViolation{CircleProperty::P3, i, j};
    }
  }
  for (int i = 0; i < f.size(); ++i) {
    for (int j = i + 1; j < f.size(); ++j) {
      if (!(f.at(i) | f.at(j)).is_full()) continue;
      if (!(f.at(i) & f.at(j) & pos).any()) return CircleViolation{CircleProperty::P4, i, j};
    }
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> outer_planar_violation(const ArcSet& a, int n) {
  auto cw = [n](int from, int to) { return ((to - from) % n + n) % n; };
  auto strictly_inside = [&](int x, int lo, int hi) {
    int d = cw(lo, x);
    return d > 0 && d < cw(lo, hi);
  };
  const auto& arcs = a.arcs;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      int a1 = arcs[i].tail, b1 = arcs[i].head;
      int a2 = arcs[j].tail, b2 = arcs[j].head;
      if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2) continue;
      if (strictly_inside(a2, a1, b1) != strictly_inside(b2, a1, b1))
        return std::make_pair(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return std::nullopt;
}

bool arc_set_covers(const ArcSet& a, const Family& f) {
  return static_cast<int>(covered_indices(f, a.arcs).size()) == f.size();
}

// ---- state ------------------------------------------------------------

CircleState CircleState::start(const CircleInstance& inst, const SolveOptions& opts) {
  CircleState st;
  st.n = inst.n;
  st.sign = inst.signing.state;
  st.live = Bits::full_set(inst.n);
  st.family = inst.family.sets;
  st.opts = opts;
  return st;
}

int CircleState::next_live(int v) const {
  for (int s = 1; s <= n; ++s) {
    int w = (v + s) % n;
    if (live.test(w)) return w;
  }
  return v;
}

int CircleState::prev_live(int v) const {
  for (int s = 1; s <= n; ++s) {
    int w = (v - s % n + n) % n;
    if (live.test(w)) return w;
  }
  return v;
}

std::vector<int> CircleState::live_order() const { return live.elements(); }

CircleInstance CircleState::compact() const {
  std::vector<int> order = live.elements();
  const int k = static_cast<int>(order.size());
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < k; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  CircleInstance out;
  out.n = k;
  out.signing = PartialSigning::all_unsigned(k);
  for (int i = 0; i < k; ++i) out.signing.assign(i, sign[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
  out.family.ground.n = k;
  for (const Bits& u : family) {
    Bits m(k);
    for (int e : u.elements()) m.set(pos[static_cast<std::size_t>(e)]);
    out.family.sets.push_back(m);
  }
  return out;
}

namespace {

struct LiveView {
  std::vector<int> order;
  std::vector<int> pos;
  int k = 0;

  explicit LiveView(const CircleState& st) {
    order = st.live.elements();
    k = static_cast<int>(order.size());
    pos.assign(static_cast<std::size_t>(st.n), -1);
    for (int i = 0; i < k; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  }

  // contiguous run on the live circle
  bool contiguous(const Bits& s) const {
    int c = s.count();
    if (c == 0) return false;
    if (c == k) return true;
    int boundaries = 0;
    for (int i = 0; i < k; ++i) {
      int a = order[static_cast<std::size_t>(i)];
      int b = order[static_cast<std::size_t>((i + 1) % k)];
      if (s.test(a) && !s.test(b)) boundaries++;
    }
    return boundaries == 1;
  }
};

Bits live_positives(const CircleState& st) {
  Bits b(st.n);
  for (int v : st.live.elements())
    if (st.is_positive(v)) b.set(v);
  return b;
}

Bits live_negatives(const CircleState& st) {
  Bits b(st.n);
  for (int v : st.live.elements())
    if (!st.is_positive(v)) b.set(v);
  return b;
}

// coverage removal against freshly added arcs; returns removed members
std::vector<Bits> remove_covered(CircleState& st, const std::vector<Arc>& fresh) {
  std::vector<Bits> removed;
  std::vector<Bits> kept;
  for (const Bits& u : st.family) {
    bool hit = false;
    for (const Arc& a : fresh) {
      if (covers(a, u)) {
        hit = true;
        break;
      }
    }
    bump(st.opts, 1);
    if (hit)
      removed.push_back(u);
    else
      kept.push_back(u);
  }
  st.family = std::move(kept);
  return removed;
}

void delete_vertices(CircleState& st, const std::vector<int>& del) {
  for (int v : del) st.live.reset(v);
  std::vector<Bits> next;
  for (Bits u : st.family) {
    bump(st.opts, 1);
    u = u & st.live;
    if (u.none()) continue;
    if (u == st.live) throw InternalInvariantBreach("restriction produced the full ground set");
    if (std::find(next.begin(), next.end(), u) == next.end()) next.push_back(u);
  }
  st.family = std::move(next);
}

std::vector<Arc> add_arcs(CircleState& st, const std::vector<Arc>& fresh) {
  std::vector<Arc> added;
  for (const Arc& a : fresh) {
    if (st.is_positive(a.tail) || !st.is_positive(a.head))
      throw InternalInvariantBreach("arc must run negative to positive");
    if (std::find(st.arcs.begin(), st.arcs.end(), a) == st.arcs.end()) {
      st.arcs.push_back(a);
      added.push_back(a);
    }
  }
  return added;
}

void record(CircleState& st, const char* step, std::vector<Arc> arcs, std::vector<int> deleted,
            std::vector<Bits> covered) {
  st.records.push_back({step, std::move(arcs), std::move(deleted), std::move(covered)});
}

// ends of an interval member on the live circle; (end vertex, out-neighbor)
std::vector<std::pair<int, int>> member_ends(const CircleState& st, const Bits& u) {
  std::vector<std::pair<int, int>> out;
  for (int e : u.elements()) {
    int nxt = st.next_live(e);
    int prv = st.prev_live(e);
    if (!u.test(prv) && prv != e) out.emplace_back(e, prv);
    if (!u.test(nxt) && nxt != e) out.emplace_back(e, nxt);
  }
  return out;
}

std::vector<int> walk_block(const CircleState& st, int from, bool forward) {
  std::vector<int> out{from};
  bool positive = st.is_positive(from);
  int cur = from;
  int guard = st.live.count();
  while (static_cast<int>(out.size()) < guard) {
    int nxt = forward ? st.next_live(cur) : st.prev_live(cur);
    if (nxt == from || st.is_positive(nxt) != positive) break;
    out.push_back(nxt);
    cur = nxt;
  }
  return out;
}

}  // namespace

std::vector<int> sign_block(int v, const CircleState& st) {
  std::vector<int> back = walk_block(st, v, false);
  std::vector<int> fwd = walk_block(st, v, true);
  std::vector<int> out(back.rbegin(), back.rend());
  // guard against the all-one-sign circle where both walks meet
  for (std::size_t i = 1; i < fwd.size(); ++i) {
    if (std::find(out.begin(), out.end(), fwd[i]) != out.end()) break;
    out.push_back(fwd[i]);
  }
  return out;
}

namespace {

// the complement splits into one positive and one negative block
bool is_co_two_block(const Bits& u, const CircleState& st) {
  LiveView view(st);
  Bits comp = st.live.minus(u);
  Bits cp = comp & live_positives(st);
  Bits cn = comp & live_negatives(st);
  return cp.any() && cn.any() && view.contiguous(cp) && view.contiguous(cn);
}

}  // namespace

BlockView classify_member(const Bits& u, const CircleState& st) {
  LiveView view(st);
  Bits pos = live_positives(st);
  Bits neg = live_negatives(st);
  Bits up = u & pos;
  Bits un = u & neg;
  if (un.none() || up.none()) return {BlockKind::one_block};
  if (view.contiguous(up) && view.contiguous(un)) return {BlockKind::two_block};
  if (is_co_two_block(u, st)) return {BlockKind::co_two_block};
  return {BlockKind::other};
}

std::vector<DangerousWitness> find_dangerous(int v, const CircleState& st) {
  std::vector<DangerousWitness> out;
  Bits pos = live_positives(st);
  Bits neg = live_negatives(st);
  Bits only_v = Bits::single(st.n, v);
  const auto& fam = st.family;
  if (st.is_positive(v)) {
    for (const Bits& u : fam) {
      bump(st.opts, 1);
      if ((u & pos) == only_v) out.push_back({v, false, u, Bits()});
    }
    for (std::size_t i = 0; i < fam.size(); ++i) {
      for (std::size_t j = i + 1; j < fam.size(); ++j) {
        bump(st.opts, 1);
        if ((fam[i] | fam[j]) != st.live) continue;
        if ((fam[i] & fam[j] & pos) == only_v) out.push_back({v, true, fam[i], fam[j]});
      }
    }
  } else {
    for (const Bits& u : fam) {
      bump(st.opts, 1);
      if ((st.live.minus(u) & neg) == only_v) out.push_back({v, false, u, Bits()});
    }
    for (std::size_t i = 0; i < fam.size(); ++i) {
      for (std::size_t j = i + 1; j < fam.size(); ++j) {
        bump(st.opts, 1);
        if ((fam[i] & fam[j]).any()) continue;
        if ((st.live.minus(fam[i] | fam[j]) & neg) == only_v) out.push_back({v, true, fam[i], fam[j]});
      }
    }
  }
  return out;
}

bool is_removable(int v, const CircleState& st) { return find_dangerous(v, st).empty(); }

// ---- steps ------------------------------------------------------------

void step1_adjacent(CircleState& st) {
  std::vector<Arc> fresh;
  for (int v : st.live_order()) {
    bump(st.opts, 1);
    int w = st.next_live(v);
    if (w == v) continue;
    if (st.is_positive(v) == st.is_positive(w)) continue;
    Arc a = st.is_positive(w) ? Arc{v, w} : Arc{w, v};
    if (std::find(fresh.begin(), fresh.end(), a) == fresh.end()) fresh.push_back(a);
  }
  auto added = add_arcs(st, fresh);
  auto covered = remove_covered(st, fresh);
  record(st, "step1", added, {}, covered);
}

bool step2_minus_end(CircleState& st) {
  // first member in family order with a negative end vertex whose
  // adjacent out-neighbor is positive
  int m = -1, p1 = -1;
  for (const Bits& w : st.family) {
    bump(st.opts, 1);
    for (auto [end, out] : member_ends(st, w)) {
      if (!st.is_positive(end) && st.is_positive(out)) {
        m = end;
        p1 = out;
        break;
      }
    }
    if (m >= 0) break;
  }
  if (m < 0) return false;

  // normalize to the inclusion-smallest member with end m excluding p1;
  // candidates are nested intervals sharing the end m
  const Bits* wstar = nullptr;
  for (const Bits& x : st.family) {
    bump(st.opts, 1);
    if (!x.test(m) || x.test(p1)) continue;
    if (!wstar || x.count() < wstar->count()) wstar = &x;
  }
  if (!wstar) throw InternalInvariantBreach("step 2 candidate vanished");

  bool forward = st.next_live(m) == p1;  // direction from m toward p1
  if (!is_co_two_block(*wstar, st)) {
    // fan from m across the positive block, closed by the far negative
    std::vector<int> block = walk_block(st, p1, forward);
    int mprime = forward ? st.next_live(block.back()) : st.prev_live(block.back());
    if (mprime == m || st.is_positive(mprime))
      throw InternalInvariantBreach("step 2a lacks a closing negative vertex");
    std::vector<Arc> fresh;
    for (int p : block) fresh.push_back({m, p});
    fresh.push_back({mprime, block.back()});
    auto added = add_arcs(st, fresh);
    auto covered = remove_covered(st, fresh);
    delete_vertices(st, block);
    record(st, "step2a", added, block, covered);
  } else {
    // dual fan: the negative block of m into p1, closed at the far end
    std::vector<int> block = walk_block(st, m, !forward);
    int pprime = !forward ? st.next_live(block.back()) : st.prev_live(block.back());
    if (pprime == p1 || !st.is_positive(pprime))
      throw InternalInvariantBreach("step 2b lacks a closing positive vertex");
    std::vector<Arc> fresh;
    for (int mi : block) fresh.push_back({mi, p1});
    fresh.push_back({block.back(), pprime});
    auto added = add_arcs(st, fresh);
    auto covered = remove_covered(st, fresh);
    delete_vertices(st, block);
    record(st, "step2b", added, block, covered);
  }
  return true;
}

namespace {

// first clockwise quadruple of live vertices matching the sign pattern
std::optional<std::array<int, 4>> find_pattern(const CircleState& st, bool s0, bool s1, bool s2, bool s3) {
  std::vector<int> order = st.live_order();
  const int k = static_cast<int>(order.size());
  if (k < 4) return std::nullopt;
  for (int i = 0; i < k; ++i) {
    bump(st.opts, 1);
    int a = order[static_cast<std::size_t>(i)];
    int b = order[static_cast<std::size_t>((i + 1) % k)];
    int c = order[static_cast<std::size_t>((i + 2) % k)];
    int d = order[static_cast<std::size_t>((i + 3) % k)];
    if (st.is_positive(a) == s0 && st.is_positive(b) == s1 && st.is_positive(c) == s2 && st.is_positive(d) == s3)
      return std::array<int, 4>{a, b, c, d};
  }
  return std::nullopt;
}

}  // namespace

bool step3_mmpp(CircleState& st) {
  auto q = find_pattern(st, false, false, true, true);
  if (!q) return false;
  auto [m2, m1, p1, p2] = *q;

  if (is_removable(m1, st)) {
    delete_vertices(st, {m1});
    std::vector<Arc> fresh{{m2, p1}};
    auto added = add_arcs(st, fresh);
    auto covered = remove_covered(st, fresh);
    record(st, "step3a", added, {m1}, covered);
    return true;
  }
  if (is_removable(p1, st)) {
    delete_vertices(st, {p1});
    std::vector<Arc> fresh{{m1, p2}};
    auto added = add_arcs(st, fresh);
    auto covered = remove_covered(st, fresh);
    record(st, "step3a", added, {p1}, covered);
    return true;
  }

  Bits pair_set = Bits::of(st.n, {m1, p1});
  Bits pair_comp = st.live.minus(pair_set);
  Bits neg = live_negatives(st);
  Bits pos = live_positives(st);
  bool has_pair = std::find(st.family.begin(), st.family.end(), pair_set) != st.family.end();
  bool has_comp = std::find(st.family.begin(), st.family.end(), pair_comp) != st.family.end();
  if (has_pair && has_comp) throw InternalInvariantBreach("complementary pair inside a valid state");

  if (has_pair) {
    // 2-block case: fan from m2 into the positive block, depth = max f;
    // the block of p1 extends forward, through p2
    std::vector<int> block = walk_block(st, p1, true);
    const int t = static_cast<int>(block.size());
    Bits m1_only = Bits::single(st.n, m1);
    int best_j = -1;
    for (std::size_t i = 0; i < st.family.size(); ++i) {
      for (std::size_t j2 = i + 1; j2 < st.family.size(); ++j2) {
        bump(st.opts, 1);
        const Bits& u = st.family[i];
        const Bits& w = st.family[j2];
        if ((u & w).any()) continue;
        if ((st.live.minus(u | w) & neg) != m1_only) continue;
        if (u.test(m2) == w.test(m2)) throw InternalInvariantBreach("exactly one pair set must contain m2");
        const Bits& side = u.test(m2) ? w : u;  // the set excluding m2
        int f = -1;
        for (int idx = 1; idx < t; ++idx) {
          bump(st.opts, 1);
          if (side.test(block[static_cast<std::size_t>(idx)]) && !side.test(block[static_cast<std::size_t>(idx - 1)])) {
            f = idx + 1;  // 1-based block position
            break;
          }
        }
        if (f < 0) throw InternalInvariantBreach("step 3b pair does not enter the positive block");
        best_j = std::max(best_j, f);
      }
    }
    if (best_j < 0) throw InternalInvariantBreach("step 3b has no dangerous pair");
    std::vector<Arc> fresh;
    for (int k2 = 0; k2 < best_j; ++k2) fresh.push_back({m2, block[static_cast<std::size_t>(k2)]});
    fresh.push_back({m1, p1});
    auto added = add_arcs(st, fresh);
    auto covered = remove_covered(st, fresh);
    std::vector<int> del{m1};
    for (int k2 = 0; k2 + 1 < best_j; ++k2) del.push_back(block[static_cast<std::size_t>(k2)]);
    del.push_back(p1);  // p1 == block[0]; keep the list duplicate-free
    std::sort(del.begin(), del.end());
    del.erase(std::unique(del.begin(), del.end()), del.end());
    delete_vertices(st, del);
    record(st, "step3b", added, del, covered);
    return true;
  }

  if (has_comp) {
    // co-2-block case: fan from the negative block into p2, depth = min f;
    // the block of m1 extends backward, away from p1
    std::vector<int> block = walk_block(st, m1, false);
    const int ell = static_cast<int>(block.size());
    Bits p1_only = Bits::single(st.n, p1);
    int best_j = -1;
    for (std::size_t i = 0; i < st.family.size(); ++i) {
      for (std::size_t j2 = i + 1; j2 < st.family.size(); ++j2) {
        bump(st.opts, 1);
        const Bits& u = st.family[i];
        const Bits& w = st.family[j2];
        if ((u | w) != st.live) continue;
        if ((u & w & pos) != p1_only) continue;
        if (u.test(p2) == w.test(p2)) throw InternalInvariantBreach("exactly one pair set must contain p2");
        const Bits& side = u.test(p2) ? u : w;  // the set containing p2
        int f = -1;
        for (int idx = 1; idx < ell; ++idx) {
          bump(st.opts, 1);
          if (side.test(block[static_cast<std::size_t>(idx - 1)]) && !side.test(block[static_cast<std::size_t>(idx)])) {
            f = idx + 1;
            break;
          }
        }
        if (f < 0) throw InternalInvariantBreach("step 3c pair does not leave the negative block");
        if (best_j < 0 || f < best_j) best_j = f;
      }
    }
    if (best_j < 0) throw InternalInvariantBreach("step 3c has no dangerous pair");
    std::vector<Arc> fresh;
    for (int k2 = 0; k2 < best_j; ++k2) fresh.push_back({block[static_cast<std::size_t>(k2)], p2});
    fresh.push_back({m1, p1});
    auto added = add_arcs(st, fresh);
    auto covered = remove_covered(st, fresh);
    std::vector<int> del{p1};
    for (int k2 = 0; k2 + 1 < best_j; ++k2) del.push_back(block[static_cast<std::size_t>(k2)]);
    del.push_back(m1);
    std::sort(del.begin(), del.end());
    del.erase(std::unique(del.begin(), del.end()), del.end());
    delete_vertices(st, del);
    record(st, "step3c", added, del, covered);
    return true;
  }

  throw InternalInvariantBreach("pattern --++ with neither vertex removable and no 2-block sets");
}

bool step4_mmpm(CircleState& st) {
  auto q = find_pattern(st, false, false, true, false);
  if (!q) return false;
  auto [m2, m1, p, m3] = *q;
  (void)m3;
  delete_vertices(st, {m1});
  std::vector<Arc> fresh{{m2, p}};
  auto added = add_arcs(st, fresh);
  auto covered = remove_covered(st, fresh);
  record(st, "step4", added, {m1}, covered);
  return true;
}

bool step5_ppmp(CircleState& st) {
  auto q = find_pattern(st, true, true, false, true);
  if (!q) return false;
  auto [p2, p1, m, p3] = *q;
  (void)p3;
  delete_vertices(st, {p1});
  std::vector<Arc> fresh{{m, p2}};
  auto added = add_arcs(st, fresh);
  auto covered = remove_covered(st, fresh);
  record(st, "step5", added, {p1}, covered);
  return true;
}

// ---- driver -----------------------------------------------------------

namespace {

void revalidate(const CircleState& st, const char* where) {
  if (!st.opts.revalidate) return;
  if (auto v = validate_instance(st.compact()))
    throw InternalInvariantBreach(std::string("residual instance invalid after ") + where + ": " +
                                  to_string(v->property));
  ArcSet sofar{st.arcs};
  if (!is_outer_planar(sofar, st.n)) throw InternalInvariantBreach(std::string("arcs cross after ") + where);
}

}  // namespace

SolveTrace solve_circle(const CircleInstance& inst, const SolveOptions& opts) {
  if (auto v = validate_instance(inst))
    throw InvalidInstance(std::string("instance violates ") + to_string(v->property));
  if (inst.family.sets.empty()) return {};

  CircleState st = CircleState::start(inst, opts);
  step1_adjacent(st);
  revalidate(st, "step1");

  int guard = 4 * inst.n + 16;
  while (!st.family.empty()) {
    if (--guard < 0) throw InternalInvariantBreach("circle solver failed to make progress");
    if (step2_minus_end(st)) {
      revalidate(st, "step2");
      continue;
    }
    if (st.family.empty()) break;
    if (step3_mmpp(st)) {
      revalidate(st, "step3");
      continue;
    }
    if (step4_mmpm(st)) {
      revalidate(st, "step4");
      continue;
    }
    if (step5_ppmp(st)) {
      revalidate(st, "step5");
      continue;
    }
    // signs alternate once no step applies; a valid alternating instance
    // cannot hold any set
    throw InternalInvariantBreach("no reduction applies but sets remain uncovered");
  }

  SolveTrace out;
  out.arcs.arcs = st.arcs;
  out.records = std::move(st.records);
  if (!arc_set_covers(out.arcs, inst.family)) throw InternalInvariantBreach("solution misses a set");
  if (!is_outer_planar(out.arcs, inst.n)) throw InternalInvariantBreach("solution is not outer-planar");
  return out;
}

// ---- brute force ------------------------------------------------------

namespace {

bool brute_extend(const Family& f, const std::vector<Arc>& candidates, int n, std::vector<Arc>& chosen) {
  int target = -1;
  for (int i = 0; i < f.size(); ++i) {
    bool hit = false;
    for (const Arc& a : chosen)
      if (covers(a, f.at(i))) {
        hit = true;
        break;
      }
    if (!hit) {
      target = i;
      break;
    }
  }
  if (target < 0) return true;
  for (const Arc& cand : candidates) {
    if (!covers(cand, f.at(target))) continue;
    ArcSet trial{chosen};
    trial.arcs.push_back(cand);
    if (!is_outer_planar(trial, n)) continue;
    chosen.push_back(cand);
    if (brute_extend(f, candidates, n, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::optional<ArcSet> brute_force_circle(const CircleInstance& inst, const BruteCircleCaps& caps) {
  if (inst.n > caps.max_n) throw TooLarge("brute-force circle capped at n = " + std::to_string(caps.max_n));
  Bits pos = inst.signing.positives();
  Bits neg = inst.signing.negatives();
  std::vector<Arc> candidates;
  for (int m : neg.elements())
    for (int p : pos.elements()) candidates.push_back({m, p});
  if (static_cast<int>(candidates.size()) > caps.max_candidates)
    throw TooLarge("brute-force circle capped at " + std::to_string(caps.max_candidates) + " candidate arcs");
  std::vector<Arc> chosen;
  if (brute_extend(inst.family, candidates, inst.n, chosen)) return ArcSet{chosen};
  return std::nullopt;
}

}  // namespace cosignkit

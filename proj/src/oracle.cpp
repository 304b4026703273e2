#include "cosignkit/oracle.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace cosignkit {

Bits LatticeFamily::closure(const Bits& s) const {
  Bits cur = s;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [x, y] : preorder) {
      if (cur.test(x) && !cur.test(y)) {
        cur.set(y);
        changed = true;
      }
    }
  }
  return cur;
}

bool LatticeFamily::contains(const Bits& u) const {
  if (!min_set.subset_of(u) || !u.subset_of(max_set)) return false;
  for (auto [x, y] : preorder)
    if (u.test(x) && !u.test(y)) return false;
  return true;
}

std::vector<Bits> LatticeFamily::enumerate(std::size_t cap) const {
  std::vector<int> free = max_set.minus(min_set).elements();
  if (free.size() > 30) throw TooLarge("lattice enumeration over too many free elements");
  std::vector<Bits> out;
  for (std::uint64_t mask = 0; mask < (1ull << free.size()); ++mask) {
    Bits u = min_set;
    for (std::size_t i = 0; i < free.size(); ++i)
      if ((mask >> i) & 1ull) u.set(free[i]);
    if (contains(u)) {
      out.push_back(u);
      if (out.size() > cap) throw CapacityExceeded("lattice enumeration exceeded cap");
    }
  }
  return out;
}

namespace {

// Small Dinic max-flow for the project-selection reduction.
struct FlowNet {
  struct Edge {
    int to;
    long long cap;
    int rev;
  };
  std::vector<std::vector<Edge>> g;
  std::vector<int> level, iter;

  explicit FlowNet(int n) : g(static_cast<std::size_t>(n)) {}

  void add(int a, int b, long long cap) {
    g[static_cast<std::size_t>(a)].push_back({b, cap, static_cast<int>(g[static_cast<std::size_t>(b)].size())});
    g[static_cast<std::size_t>(b)].push_back({a, 0, static_cast<int>(g[static_cast<std::size_t>(a)].size()) - 1});
  }

  bool bfs(int s, int t) {
    level.assign(g.size(), -1);
    std::queue<int> q;
    level[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Edge& e : g[static_cast<std::size_t>(v)]) {
        if (e.cap > 0 && level[static_cast<std::size_t>(e.to)] < 0) {
          level[static_cast<std::size_t>(e.to)] = level[static_cast<std::size_t>(v)] + 1;
          q.push(e.to);
        }
      }
    }
    return level[static_cast<std::size_t>(t)] >= 0;
  }

  long long dfs(int v, int t, long long f) {
    if (v == t) return f;
    for (int& i = iter[static_cast<std::size_t>(v)]; i < static_cast<int>(g[static_cast<std::size_t>(v)].size()); ++i) {
      Edge& e = g[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)];
      if (e.cap > 0 && level[static_cast<std::size_t>(v)] < level[static_cast<std::size_t>(e.to)]) {
        long long d = dfs(e.to, t, std::min(f, e.cap));
        if (d > 0) {
          e.cap -= d;
          g[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(e.rev)].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  long long max_flow(int s, int t) {
    long long flow = 0;
    while (bfs(s, t)) {
      iter.assign(g.size(), 0);
      long long f;
      while ((f = dfs(s, t, std::numeric_limits<long long>::max())) > 0) flow += f;
    }
    return flow;
  }

  // source side of the min cut (residual reachability)
  std::vector<bool> source_side(int s) {
    std::vector<bool> vis(g.size(), false);
    std::queue<int> q;
    vis[static_cast<std::size_t>(s)] = true;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Edge& e : g[static_cast<std::size_t>(v)]) {
        if (e.cap > 0 && !vis[static_cast<std::size_t>(e.to)]) {
          vis[static_cast<std::size_t>(e.to)] = true;
          q.push(e.to);
        }
      }
    }
    return vis;
  }
};

}  // namespace

LatticeMinResult lattice_min_modular(const LatticeFamily& lat, const ModularWeights& weights) {
  if (!lat.min_set.subset_of(lat.max_set)) throw Inconsistent("lattice min_set exceeds max_set");
  Bits base = lat.closure(lat.min_set);
  if (!base.subset_of(lat.max_set)) throw Inconsistent("closure of min_set escapes max_set");

  const auto& a = weights.a;
  auto value_of = [&](const Bits& u) {
    long long v = 0;
    for (int e : u.elements()) v += a[static_cast<std::size_t>(e)];
    return v;
  };

  bool nonneg = std::all_of(a.begin(), a.end(), [](long long x) { return x >= 0; });
  if (nonneg) return {value_of(base), base};

  // project selection over the free range: minimize sum a over closed
  // S ⊆ free; elements whose closure escapes max_set are forced out.
  std::vector<int> free = lat.max_set.minus(base).elements();
  std::vector<int> node(static_cast<std::size_t>(lat.n), -1);
  for (std::size_t i = 0; i < free.size(); ++i) node[static_cast<std::size_t>(free[i])] = static_cast<int>(i);

  const int S = static_cast<int>(free.size());
  const int src = S, snk = S + 1;
  long long inf = 1;
  for (long long x : a) inf += (x < 0 ? -x : x);

  FlowNet net(S + 2);
  long long positive_profit = 0;
  for (int i = 0; i < S; ++i) {
    long long profit = -a[static_cast<std::size_t>(free[static_cast<std::size_t>(i)])];
    if (profit > 0) {
      net.add(src, i, profit);
      positive_profit += profit;
    } else if (profit < 0) {
      net.add(i, snk, -profit);
    }
  }
  for (auto [x, y] : lat.preorder) {
    int nx = node[static_cast<std::size_t>(x)];
    if (nx < 0) continue;  // x forced in or out; constraint vacuous or handled below
    if (base.test(y)) continue;
    int ny = node[static_cast<std::size_t>(y)];
    if (ny < 0) {
      net.add(nx, snk, inf);  // y unavailable: picking x is impossible
    } else {
      net.add(nx, ny, inf);
    }
  }
  long long cut = net.max_flow(src, snk);
  auto side = net.source_side(src);
  Bits u = base;
  for (int i = 0; i < S; ++i)
    if (side[static_cast<std::size_t>(i)]) u.set(free[static_cast<std::size_t>(i)]);
  if (!lat.contains(u)) throw InternalInvariantBreach("lattice minimizer not a member");
  LatticeMinResult r{value_of(base) - (positive_profit - cut), u};
  if (r.value != value_of(u)) throw InternalInvariantBreach("lattice minimizer value mismatch");
  return r;
}

WellProvidedFamily explicit_to_well_provided(const Family& f) {
  if (auto w = crossing_violation(f)) throw NotCrossing("well-provided representation needs a crossing family");
  const int n = f.n();

  auto extract = [n](const Family& fam) {
    std::vector<std::optional<LatticeFamily>> sub(static_cast<std::size_t>(n) * n);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (u == v) continue;
        std::vector<const Bits*> members;
        for (const Bits& m : fam.sets)
          if (m.test(u) && !m.test(v)) members.push_back(&m);
        if (members.empty()) continue;
        LatticeFamily lat;
        lat.n = n;
        lat.min_set = *members[0];
        lat.max_set = *members[0];
        for (const Bits* m : members) {
          lat.min_set = lat.min_set & *m;
          lat.max_set = lat.max_set | *m;
        }
        for (int x : lat.max_set.elements()) {
          for (int y : lat.max_set.elements()) {
            if (x == y) continue;
            bool implied = true;
            for (const Bits* m : members) {
              if (m->test(x) && !m->test(y)) {
                implied = false;
                break;
              }
            }
            if (implied) lat.preorder.emplace_back(x, y);
          }
        }
        sub[static_cast<std::size_t>(u) * n + v] = std::move(lat);
      }
    }
    return sub;
  };

  WellProvidedFamily w;
  w.n = n;
  w.sub = extract(f);
  Family co;
  co.ground = f.ground;
  for (const Bits& m : f.sets) co.sets.push_back(m.complement());
  w.co_sub = extract(co);
  Family copy = f;
  w.member = [copy](const Bits& u) { return copy.contains(u); };
  return w;
}

namespace {

// Positive-forcing probe on a representation: does some represented member
// containing u consist only of zero-weight elements?
std::optional<Bits> probe(int u, const Bits& zero,
                          const std::vector<std::optional<LatticeFamily>>& sub, int n, OracleStats* stats) {
  ModularWeights a;
  a.a.assign(static_cast<std::size_t>(n), 1);
  for (int e : zero.elements()) a.a[static_cast<std::size_t>(e)] = 0;
  for (int v = 0; v < n; ++v) {
    if (v == u) continue;
    const auto& lat = sub[static_cast<std::size_t>(u) * n + v];
    if (!lat) continue;
    auto r = lattice_min_modular(*lat, a);
    if (stats) stats->lattice_calls++;
    if (r.value == 0) return r.minimizer;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Bits> oracle_is_forced(int u, ForcedSign sign, const PartialSigning& s, const WellProvidedFamily& w,
                                     OracleStats* stats) {
  const int n = w.n;
  if (sign == ForcedSign::positive) {
    Bits zero = s.negatives();
    zero.set(u);  // sign u negatively and look for an all-negative member
    return probe(u, zero, w.sub, n, stats);
  }
  Bits zero = s.positives();
  zero.set(u);
  auto m = probe(u, zero, w.co_sub, n, stats);
  if (!m) return std::nullopt;
  return m->complement();  // report the member of F itself
}

PartialSigning oracle_cosign(const WellProvidedFamily& w, OracleStats* stats) {
  const int n = w.n;
  PartialSigning s = PartialSigning::all_unsigned(n);
  OracleStats local;
  OracleStats& st = stats ? *stats : local;
  while (!s.complete()) {
    long long calls_before = st.lattice_calls;
    st.iterations++;
    int chosen = -1;
    Sign chosen_sign = Sign::positive;
    for (int u = 0; u < n && chosen < 0; ++u) {
      if (s.at(u) != Sign::unsigned_) continue;
      auto wpos = oracle_is_forced(u, ForcedSign::positive, s, w, &st);
      if (wpos) {
        if (oracle_is_forced(u, ForcedSign::negative, s, w, &st)) throw ConflictError(u);
        chosen = u;
        chosen_sign = Sign::positive;
        break;
      }
      auto wneg = oracle_is_forced(u, ForcedSign::negative, s, w, &st);
      if (wneg) {
        chosen = u;
        chosen_sign = Sign::negative;
        break;
      }
    }
    if (chosen < 0) {
      for (int u = 0; u < n; ++u) {
        if (s.at(u) == Sign::unsigned_) {
          chosen = u;
          chosen_sign = Sign::positive;
          break;
        }
      }
    }
    s.assign(chosen, chosen_sign);
    long long used = st.lattice_calls - calls_before;
    st.max_calls_per_iteration = std::max(st.max_calls_per_iteration, used);
    if (used > 2ll * n * (n - 1))
      throw InternalInvariantBreach("oracle iteration exceeded 2n(n-1) lattice minimizations");
  }
  return s;
}

}  // namespace cosignkit

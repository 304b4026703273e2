#include "cosignkit/testkit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cosignkit {

namespace {

// modulo draws keep instances identical across standard libraries
int draw(std::mt19937_64& rng, int k) { return static_cast<int>(rng() % static_cast<std::uint64_t>(k)); }

Bits random_subset(std::mt19937_64& rng, int n) {
  Bits b(n);
  for (int i = 0; i < n; ++i)
    if (draw(rng, 2)) b.set(i);
  return b;
}

}  // namespace

Family gen_crossing_family(const GeneratorConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  for (int attempt = 0; attempt < cfg.attempts; ++attempt) {
    Family gen;
    gen.ground.n = cfg.n;
    for (int i = 0; i < cfg.generators; ++i) {
      // mix in singletons and co-singletons; they drive the boundary of
      // the cosigning conditions
      Bits s(cfg.n);
      switch (draw(rng, 6)) {
        case 0: s = Bits::single(cfg.n, draw(rng, cfg.n)); break;
        case 1: s = Bits::single(cfg.n, draw(rng, cfg.n)).complement(); break;
        default: s = random_subset(rng, cfg.n); break;
      }
      if (s.none() || s.is_full()) continue;
      gen.add(s);
    }
    try {
      Family closed = crossing_closure(gen, cfg.max_members);
      return closed;
    } catch (const CapacityExceeded&) {
      continue;
    }
  }
  throw GenerationFailed("no crossing family within " + std::to_string(cfg.attempts) + " attempts");
}

CircleInstance gen_circle_instance(const GeneratorConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  for (int attempt = 0; attempt < cfg.attempts; ++attempt) {
    CircleInstance inst;
    inst.n = cfg.n;
    Bits pos = random_subset(rng, cfg.n);
    if (pos.none() || pos.is_full()) continue;
    inst.signing = PartialSigning::from_positives(cfg.n, pos);

    Family gen;
    gen.ground.n = cfg.n;
    int k = 1 + draw(rng, std::max(1, cfg.generators));
    for (int i = 0; i < k; ++i) {
      int len = 1 + draw(rng, std::max(1, cfg.n - 2));
      gen.add(make_interval(cfg.n, draw(rng, cfg.n), len));
    }
    try {
      inst.family = crossing_closure(gen, cfg.max_members);
    } catch (const CapacityExceeded&) {
      continue;
    }
    if (!validate_instance(inst)) return inst;
  }
  throw GenerationFailed("no valid circle instance within " + std::to_string(cfg.attempts) + " attempts");
}

// ---- plane templates ---------------------------------------------------

namespace {

struct TemplateBuilder {
  int n = 0;
  std::vector<std::pair<double, double>> coord;
  std::vector<std::pair<int, int>> edges;  // undirected, as drawn

  int add_vertex(double x, double y) {
    coord.emplace_back(x, y);
    return n++;
  }
  void add_edge(int a, int b) { edges.emplace_back(a, b); }

  // orient acyclically by a random vertex order, then emit rotations by
  // clockwise angle around each vertex; mixed >= 0 re-ranks that vertex so
  // at least two neighbors land on each side
  PlaneDigraph orient(std::mt19937_64& rng, int mixed = -1) const {
    std::vector<double> rank(static_cast<std::size_t>(n));
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(draw(rng, i + 1))]);
    for (int i = 0; i < n; ++i) rank[static_cast<std::size_t>(i)] = perm[static_cast<std::size_t>(i)];

    if (mixed >= 0) {
      std::vector<double> nbr;
      for (auto [a, b] : edges) {
        if (a == mixed) nbr.push_back(rank[static_cast<std::size_t>(b)]);
        if (b == mixed) nbr.push_back(rank[static_cast<std::size_t>(a)]);
      }
      std::sort(nbr.begin(), nbr.end());
      if (nbr.size() >= 4) rank[static_cast<std::size_t>(mixed)] = (nbr[1] + nbr[2]) / 2.0;
    }

    PlaneDigraph d;
    d.n = n;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto [a, b] = edges[i];
      if (rank[static_cast<std::size_t>(a)] > rank[static_cast<std::size_t>(b)]) std::swap(a, b);
      d.arcs.push_back({static_cast<int>(i), a, b, 1});
    }
    d.rotation.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      std::vector<std::pair<double, int>> inc;
      for (const PlaneArc& a : d.arcs) {
        if (a.tail != v && a.head != v) continue;
        int other = a.tail == v ? a.head : a.tail;
        double dx = coord[static_cast<std::size_t>(other)].first - coord[static_cast<std::size_t>(v)].first;
        double dy = coord[static_cast<std::size_t>(other)].second - coord[static_cast<std::size_t>(v)].second;
        inc.emplace_back(-std::atan2(dy, dx), a.id);  // clockwise sweep
      }
      std::sort(inc.begin(), inc.end());
      for (auto [angle, id] : inc) {
        (void)angle;
        d.rotation[static_cast<std::size_t>(v)].push_back(id);
      }
    }
    return d;
  }
};

TemplateBuilder grid_builder(int rows, int cols) {
  TemplateBuilder t;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) t.add_vertex(c, -r);
  auto at = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) t.add_edge(at(r, c), at(r, c + 1));
      if (r + 1 < rows) t.add_edge(at(r, c), at(r + 1, c));
    }
  }
  return t;
}

TemplateBuilder wheel_builder(int rim) {
  TemplateBuilder t;
  t.add_vertex(0, 0);  // hub
  for (int i = 0; i < rim; ++i) {
    double a = 2.0 * M_PI * i / rim;
    t.add_vertex(std::cos(a), std::sin(a));
  }
  for (int i = 0; i < rim; ++i) {
    t.add_edge(0, 1 + i);
    t.add_edge(1 + i, 1 + (i + 1) % rim);
  }
  return t;
}

TemplateBuilder fan_builder(int path) {
  TemplateBuilder t;
  t.add_vertex(0, -1);  // hub below the path
  for (int i = 0; i < path; ++i) t.add_vertex(i - (path - 1) / 2.0, 0);
  for (int i = 0; i < path; ++i) {
    t.add_edge(0, 1 + i);
    if (i + 1 < path) t.add_edge(1 + i, 2 + i);
  }
  return t;
}

}  // namespace

PlaneDigraph plane_grid(int rows, int cols) {
  std::mt19937_64 rng(1);
  return grid_builder(rows, cols).orient(rng);
}
PlaneDigraph plane_wheel(int rim) {
  std::mt19937_64 rng(1);
  return wheel_builder(rim).orient(rng);
}
PlaneDigraph plane_fan(int path) {
  std::mt19937_64 rng(1);
  return fan_builder(path).orient(rng);
}

PlaneDigraph plane_from_coords(const std::vector<std::pair<double, double>>& coords,
                               const std::vector<std::array<int, 3>>& arcs) {
  PlaneDigraph d;
  d.n = static_cast<int>(coords.size());
  for (std::size_t i = 0; i < arcs.size(); ++i)
    d.arcs.push_back({static_cast<int>(i), arcs[i][0], arcs[i][1], arcs[i][2]});
  d.rotation.resize(static_cast<std::size_t>(d.n));
  for (int v = 0; v < d.n; ++v) {
    std::vector<std::pair<double, int>> inc;
    for (const PlaneArc& a : d.arcs) {
      if (a.tail != v && a.head != v) continue;
      int other = a.tail == v ? a.head : a.tail;
      double dx = coords[static_cast<std::size_t>(other)].first - coords[static_cast<std::size_t>(v)].first;
      double dy = coords[static_cast<std::size_t>(other)].second - coords[static_cast<std::size_t>(v)].second;
      inc.emplace_back(-std::atan2(dy, dx), a.id);
    }
    std::sort(inc.begin(), inc.end());
    for (auto [angle, id] : inc) {
      (void)angle;
      d.rotation[static_cast<std::size_t>(v)].push_back(id);
    }
  }
  return d;
}

PlaneDigraph gen_plane_digraph(const GeneratorConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  for (int attempt = 0; attempt < cfg.attempts; ++attempt) {
    TemplateBuilder t;
    switch (draw(rng, 4)) {
      case 0: t = grid_builder(3, 3); break;
      case 1: t = grid_builder(3, 4); break;
      case 2: t = wheel_builder(5 + draw(rng, 5)); break;
      default: t = fan_builder(5 + draw(rng, 5)); break;
    }
    int pivot = -1;
    if (cfg.want_weight0) {
      // vertices of degree >= 4 can survive the A1..A5 reductions and
      // reach the bridge stage
      std::vector<int> deg(static_cast<std::size_t>(t.n), 0);
      for (auto [a, b] : t.edges) {
        deg[static_cast<std::size_t>(a)]++;
        deg[static_cast<std::size_t>(b)]++;
      }
      std::vector<int> cand;
      for (int v = 0; v < t.n; ++v)
        if (deg[static_cast<std::size_t>(v)] >= 4) cand.push_back(v);
      if (cand.empty()) continue;
      pivot = cand[static_cast<std::size_t>(draw(rng, static_cast<int>(cand.size())))];
    }
    PlaneDigraph d = t.orient(rng, pivot);

    if (pivot >= 0) {
      for (PlaneArc& a : d.arcs)
        if (a.tail == pivot || a.head == pivot) a.weight = 0;
    }
    for (PlaneArc& a : d.arcs)
      if (draw(rng, 8) == 0) a.weight = 0;

    if (validate_plane(d)) continue;
    if (!is_proper(d)) continue;
    bool has_w0 = false;
    for (int v = 0; v < d.n; ++v)
      if (d.weight0_vertex(v)) has_w0 = true;
    if (cfg.want_weight0 != has_w0) continue;
    bool any_w1 = std::any_of(d.arcs.begin(), d.arcs.end(), [](const PlaneArc& a) { return a.weight == 1; });
    if (!any_w1) continue;
    return d;
  }
  throw GenerationFailed("no proper plane digraph within " + std::to_string(cfg.attempts) + " attempts");
}

// ---- fixtures ------------------------------------------------------------

namespace {

CircleInstance make_instance(int n, std::initializer_list<int> negatives,
                             std::initializer_list<std::initializer_list<int>> sets) {
  CircleInstance inst;
  inst.n = n;
  Bits neg = Bits::of(n, negatives);
  inst.signing = PartialSigning::from_positives(n, neg.complement());
  inst.family = Family::over(n, sets);
  return inst;
}

}  // namespace

std::vector<CircleFixture> reference_fixtures() {
  std::vector<CircleFixture> out;

  // 9-vertex worked example (negatives v3, v6, v9); solved by the two
  // arcs (v6,v1) and (v3,v5)
  {
    CircleFixture fx;
    fx.id = "circle_main";
    fx.instance = make_instance(9, {2, 5, 8}, {{0, 1}, {0, 1, 2}, {3, 4, 5}, {3, 4, 5, 6, 7}});
    fx.feasible = true;
    fx.reference_solution = ArcSet{{{5, 0}, {2, 4}}};
    out.push_back(std::move(fx));
  }

  // intervals dropped: U2 = {v2, v5} is no interval
  {
    CircleFixture fx;
    fx.id = "fig5_p0";
    fx.instance = make_instance(6, {3, 4, 5}, {{0, 5}, {1, 4}, {2, 3}});
    fx.violated = CircleProperty::P0;
    out.push_back(std::move(fx));
  }

  // crossing dropped: the two sets overlap in v1 but no closure sets exist
  {
    CircleFixture fx;
    fx.id = "fig6_p1";
    fx.instance = make_instance(6, {0, 2, 4}, {{0, 1, 2}, {0, 4, 5}});
    fx.violated = CircleProperty::P1;
    out.push_back(std::move(fx));
  }

  // P3 dropped, small example
  {
    CircleFixture fx;
    fx.id = "fig7_p3";
    fx.instance = make_instance(5, {0, 4}, {{0, 1}, {3, 4}});
    fx.violated = CircleProperty::P3;
    out.push_back(std::move(fx));
  }

  // P3 dropped, k = 2 series at six vertices; the free positive vertex sits
  // between p_k and p_0
  {
    CircleFixture fx;
    fx.id = "fig8_k2_a";
    fx.instance = make_instance(6, {0, 1, 2}, {{0, 5}, {1, 2, 3}, {2, 3}});
    fx.violated = CircleProperty::P3;
    out.push_back(std::move(fx));
  }

  // same series, free positive vertex between m_0 and m_1
  {
    CircleFixture fx;
    fx.id = "fig8_k2_b";
    fx.instance = make_instance(6, {0, 2, 3}, {{0, 5}, {2, 3, 4}, {3, 4}});
    fx.violated = CircleProperty::P3;
    out.push_back(std::move(fx));
  }

  // P4 dropped: the dual of fig8_k2_a
  {
    CircleFixture fx;
    fx.id = "p4_dual";
    fx.instance = make_instance(6, {3, 4, 5}, {{1, 2, 3, 4}, {0, 4, 5}, {0, 1, 4, 5}});
    fx.violated = CircleProperty::P4;
    out.push_back(std::move(fx));
  }

  // four vertices, complementary pair
  {
    CircleFixture fx;
    fx.id = "complementary_quad";
    fx.instance = make_instance(4, {0, 3}, {{0, 1}, {2, 3}});
    fx.violated = CircleProperty::complementary;
    out.push_back(std::move(fx));
  }

  return out;
}

const CircleFixture& golden_circle_fixture() {
  static const std::vector<CircleFixture> all = reference_fixtures();
  return all.front();
}

}  // namespace cosignkit

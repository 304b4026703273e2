#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cosignkit/circle.hpp"
#include "cosignkit/core.hpp"
#include "cosignkit/dijoin.hpp"

namespace cosignkit {

// Deterministic pseudo-random instance generators: identical config,
// identical instance. Rejection caps fail loudly.
struct GeneratorConfig {
  std::uint64_t seed = 1;
  int n = 8;
  int generators = 3;       // seed sets for family closure / intervals for circle
  std::size_t max_members = 40;
  int attempts = 400;
  bool want_weight0 = false;  // plane digraphs: require a weight-0 vertex
};

Family gen_crossing_family(const GeneratorConfig& cfg);
CircleInstance gen_circle_instance(const GeneratorConfig& cfg);
PlaneDigraph gen_plane_digraph(const GeneratorConfig& cfg);

// The worked 9-vertex instance plus every necessity counterexample, with
// the verdicts the oracles re-derive.
struct CircleFixture {
  std::string id;
  CircleInstance instance;
  std::optional<CircleProperty> violated;  // nullopt: valid instance
  bool feasible = false;
  std::optional<ArcSet> reference_solution;
};

std::vector<CircleFixture> reference_fixtures();
const CircleFixture& golden_circle_fixture();  // the 9-vertex worked example

// plane-digraph templates (coordinates -> clockwise rotations)
PlaneDigraph plane_grid(int rows, int cols);
PlaneDigraph plane_wheel(int rim);
PlaneDigraph plane_fan(int path);

// straight-line drawing to rotation system; arcs as (tail, head, weight)
PlaneDigraph plane_from_coords(const std::vector<std::pair<double, double>>& coords,
                               const std::vector<std::array<int, 3>>& arcs);

}  // namespace cosignkit

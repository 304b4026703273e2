// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, in code.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cosignkit/cosign.hpp"
#include "cosignkit/io.hpp"
#include "cosignkit/oracle.hpp"
#include "cosignkit/testkit.hpp"

using namespace cosignkit;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
  int id;
  std::string detail;
  bool ok = true;
  Clock::time_point t0 = Clock::now();

  explicit Criterion(int id) : id(id) {}
  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
  double seconds() const { return std::chrono::duration<double>(Clock::now() - t0).count(); }
  void finish(double budget_s) {
    double t = seconds();
    if (t > budget_s) fail("exceeded " + std::to_string(budget_s) + " s budget");
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (ok ? "PASS" : "FAIL") << " criterion " << id << " (" << t << " s)";
    if (!detail.empty()) line << ": " << detail;
    std::cout << line.str() << "\n";
    if (!ok) failures++;
  }
};

std::vector<Family> cosign_corpus(int count, int max_n, std::uint64_t salt) {
  std::vector<Family> out;
  std::uint64_t seed = 1;
  while (static_cast<int>(out.size()) < count) {
    GeneratorConfig cfg;
    cfg.seed = seed * salt + 3;
    cfg.n = 5 + static_cast<int>(seed % static_cast<std::uint64_t>(max_n - 4));
    cfg.max_members = 40;
    seed++;
    try {
      out.push_back(gen_crossing_family(cfg));
    } catch (const GenerationFailed&) {
    }
    if (seed > 100000) break;
  }
  return out;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(CK_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  return WEXITSTATUS(std::system(cmd.c_str()));
}

// 1. Cosigning equivalence: condition <=> brute force <=> algorithm; every
//    success verifies; no conflicts.
void criterion1() {
  Criterion c(1);
  auto corpus = cosign_corpus(500, 12, 97);
  if (corpus.size() < 500) c.fail("corpus came up short");
  int feasible = 0;
  try {
    for (const Family& f : corpus) {
      bool cond = !check_cosign_condition(f).has_value();
      bool brute = brute_force_cosign(f).has_value();
      if (cond != brute) {
        c.fail("condition and brute force disagree");
        break;
      }
      auto r = cosign(f);
      bool algo = std::holds_alternative<CosignResult>(r);
      if (algo != cond) {
        c.fail("algorithm and condition disagree");
        break;
      }
      if (algo) {
        feasible++;
        if (!verify_cosigning(f, std::get<CosignResult>(r).signing)) {
          c.fail("output failed verification");
          break;
        }
      }
    }
  } catch (const ConflictError& e) {
    c.fail(std::string("conflict event: ") + e.what());
  }
  if (feasible == 0 || feasible == static_cast<int>(corpus.size())) c.fail("corpus lacks one of the two outcomes");
  c.note(std::to_string(corpus.size()) + " families, " + std::to_string(feasible) + " feasible, 0 conflicts");
  c.finish(30.0);
}

// 2. cc-cosigning equivalence with all four forcing-witness shapes hit.
void criterion2() {
  Criterion c(2);
  auto corpus = cosign_corpus(500, 10, 61);
  if (corpus.size() < 500) c.fail("corpus came up short");
  // deterministic mini-families pinning each forcing-witness shape
  corpus.push_back(Family::over(3, {{0, 1}, {1, 2}}));  // full-union positive, nonempty-inter negative
  corpus.push_back(Family::over(2, {{0}}));             // proper-union positive
  corpus.push_back(Family::over(3, {{0}, {2}}));        // empty-intersection negative
  RunStats shapes;
  int feasible = 0;
  try {
    for (const Family& f : corpus) {
      bool cond = !check_cc_condition(f).has_value();
      bool brute = brute_force_cc_cosign(f).has_value();
      if (cond != brute) {
        c.fail("condition and brute force disagree");
        break;
      }
      auto r = cc_cosign(f);
      bool algo = std::holds_alternative<CosignResult>(r);
      if (algo != cond) {
        c.fail("algorithm and condition disagree");
        break;
      }
      if (algo) {
        feasible++;
        auto& res = std::get<CosignResult>(r);
        if (!verify_cc_cosigning(f, res.signing)) {
          c.fail("output failed verification");
          break;
        }
        shapes.pos_union_proper += res.stats.pos_union_proper;
        shapes.pos_union_full += res.stats.pos_union_full;
        shapes.neg_inter_empty += res.stats.neg_inter_empty;
        shapes.neg_inter_nonempty += res.stats.neg_inter_nonempty;
      }
    }
  } catch (const ConflictError& e) {
    c.fail(std::string("conflict event: ") + e.what());
  }
  if (feasible == 0 || feasible == static_cast<int>(corpus.size())) c.fail("corpus lacks one of the two outcomes");
  if (shapes.pos_union_proper == 0 || shapes.pos_union_full == 0 || shapes.neg_inter_empty == 0 ||
      shapes.neg_inter_nonempty == 0)
    c.fail("some forcing-witness shape never fired");
  c.note("case-shape hits " + std::to_string(shapes.pos_union_proper) + "/" + std::to_string(shapes.pos_union_full) +
         "/" + std::to_string(shapes.neg_inter_empty) + "/" + std::to_string(shapes.neg_inter_nonempty));
  c.finish(30.0);
}

// 3. Work bounds from the running-time analyses hold on every instance.
void criterion3() {
  Criterion c(3);
  auto plain = cosign_corpus(250, 12, 97);
  auto cc = cosign_corpus(250, 10, 61);
  long long checked = 0;
  for (const Family& f : plain) {
    auto r = cosign(f);
    if (auto* res = std::get_if<CosignResult>(&r)) {
      long long n = f.n(), m = f.size();
      if (res->stats.set_scans > m * (n * (n + 1) / 2)) {
        c.fail("plain scan bound violated");
        break;
      }
      if (res->stats.iterations != n || res->stats.forced_count + res->stats.free_count != n) {
        c.fail("stats invariants violated");
        break;
      }
      checked++;
    }
  }
  for (const Family& f : cc) {
    auto r = cc_cosign(f);
    if (auto* res = std::get_if<CosignResult>(&r)) {
      long long n = f.n(), m = f.size();
      long long bound = 2 * (m * (m - 1) / 2) * (n * (n + 1) / 2) + m * (n * (n + 1) / 2);
      if (res->stats.pair_scans > bound) {
        c.fail("cc pair-scan bound violated");
        break;
      }
      checked++;
    }
  }
  c.note(std::to_string(checked) + " bounded runs");
  c.finish(30.0);
}

// 4. Oracle model: exact representations, valid outputs, call bound.
void criterion4() {
  Criterion c(4);
  auto corpus = cosign_corpus(200, 9, 41);
  if (corpus.size() < 200) c.fail("corpus came up short");
  int solved = 0;
  for (const Family& f : corpus) {
    WellProvidedFamily w = explicit_to_well_provided(f);
    bool exact = true;
    for (int u = 0; u < f.n() && exact; ++u) {
      for (int v = 0; v < f.n() && exact; ++v) {
        if (u == v) continue;
        std::vector<Bits> expect;
        for (const Bits& m : f.sets)
          if (m.test(u) && !m.test(v)) expect.push_back(m);
        const auto& lat = w.at(u, v);
        if (expect.empty()) {
          exact = !lat.has_value();
          continue;
        }
        if (!lat) {
          exact = false;
          break;
        }
        auto got = lat->enumerate();
        if (got.size() != expect.size()) exact = false;
        for (const Bits& m : expect)
          if (std::find(got.begin(), got.end(), m) == got.end()) exact = false;
      }
    }
    if (!exact) {
      c.fail("representation not exact");
      break;
    }
    if (check_cosign_condition(f).has_value()) continue;
    OracleStats st;
    PartialSigning s = oracle_cosign(w, &st);
    if (!verify_cosigning(f, s)) {
      c.fail("oracle output failed verification");
      break;
    }
    long long n = f.n();
    if (st.max_calls_per_iteration > 2 * n * (n - 1)) {
      c.fail("lattice-call bound violated");
      break;
    }
    solved++;
  }
  if (solved < 50) c.fail("too few feasible oracle runs (" + std::to_string(solved) + ")");
  c.note(std::to_string(corpus.size()) + " representations exact, " + std::to_string(solved) + " oracle runs");
  c.finish(60.0);
}

// 5. Golden circle fixture: solvable, and the reference arc set verifies
//    through the CLI verify path.
void criterion5() {
  Criterion c(5);
  const CircleFixture& fx = golden_circle_fixture();
  if (validate_instance(fx.instance)) c.fail("golden instance fails validation");
  SolveOptions opts;
  opts.revalidate = true;
  try {
    SolveTrace tr = solve_circle(fx.instance, opts);
    if (!is_outer_planar(tr.arcs, fx.instance.n)) c.fail("solver output crosses");
    if (!arc_set_covers(tr.arcs, fx.instance.family)) c.fail("solver output misses a set");
  } catch (const std::exception& e) {
    c.fail(std::string("solver threw: ") + e.what());
  }
  if (!fx.reference_solution || !is_outer_planar(*fx.reference_solution, fx.instance.n) ||
      !arc_set_covers(*fx.reference_solution, fx.instance.family))
    c.fail("reference arcs (v6,v1),(v3,v5) do not verify in-process");
  std::string fixture_dir = CK_FIXTURE_DIR;
  if (run_cli("verify circle " + fixture_dir + "/circle_main.json " + fixture_dir + "/circle_main.solution.json") != 0)
    c.fail("reference arcs fail cmd_verify");
  c.finish(10.0);
}

// 6. Necessity fixtures: the named property is flagged and brute force
//    certifies infeasibility.
void criterion6() {
  Criterion c(6);
  int checked = 0;
  for (const CircleFixture& fx : reference_fixtures()) {
    if (!fx.violated) continue;
    auto v = validate_instance(fx.instance);
    if (!v || v->property != *fx.violated) {
      c.fail(fx.id + " flags the wrong property");
      continue;
    }
    if (brute_force_circle(fx.instance).has_value()) c.fail(fx.id + " unexpectedly feasible");
    checked++;
  }
  if (checked != 7) c.fail("expected 7 infeasible fixtures, saw " + std::to_string(checked));
  c.note("7 fixtures certified infeasible");
  c.finish(10.0);
}

// 7. Circle property suite: valid instances solve; every intermediate state
//    revalidates; operation counter stays polynomial.
void criterion7() {
  Criterion c(7);
  int solved = 0;
  std::uint64_t seed = 1;
  while (solved < 500 && seed < 40000) {
    GeneratorConfig cfg;
    cfg.seed = seed * 193 + 9;
    cfg.n = 5 + static_cast<int>(seed % 8);
    seed++;
    CircleInstance inst;
    try {
      inst = gen_circle_instance(cfg);
    } catch (const GenerationFailed&) {
      continue;
    }
    SolveOptions opts;
    opts.revalidate = true;
    std::size_t ops = 0;
    opts.op_counter = &ops;
    try {
      SolveTrace tr = solve_circle(inst, opts);
      if (!is_outer_planar(tr.arcs, inst.n) || !arc_set_covers(tr.arcs, inst.family)) {
        c.fail("invalid solver output at seed " + std::to_string(cfg.seed));
        break;
      }
      std::size_t n = static_cast<std::size_t>(inst.n);
      std::size_t m = static_cast<std::size_t>(inst.family.size());
      if (ops > 16 * (n + 1) * (n + 1) * (m + 1) * (m + 1) + 1000) {
        c.fail("operation counter exceeded the n^2 m^2 envelope");
        break;
      }
      solved++;
    } catch (const std::exception& e) {
      c.fail(std::string("solver threw: ") + e.what());
      break;
    }
  }
  if (solved < 500) c.fail("only " + std::to_string(solved) + " instances solved");
  c.note(std::to_string(solved) + " instances, stepwise revalidation on");
  c.finish(60.0);
}

// 8. Dijoin pipeline: verified decompositions with per-stage properness,
//    planarity, lift and bridge checks; the Infeasible alarm never fires.
void criterion8() {
  Criterion c(8);
  int solved = 0, with_w0 = 0, bridges = 0;
  std::uint64_t seed = 1;
  while (solved < 200 && seed < 20000) {
    GeneratorConfig cfg;
    cfg.seed = seed * 131 + 17;
    cfg.want_weight0 = (seed % 2 == 0);
    seed++;
    PlaneDigraph d;
    try {
      d = gen_plane_digraph(cfg);
    } catch (const GenerationFailed&) {
      continue;
    }
    if (d.n > 12 || static_cast<int>(d.arcs.size()) > 26) continue;
    DijoinOptions opts;
    opts.debug = true;
    opts.circle_debug = true;
    try {
      auto r = decompose_dijoins(d, opts);
      if (!verify_dijoin_pair(d, r.pair).ok) {
        c.fail("pipeline output failed verification at seed " + std::to_string(cfg.seed));
        break;
      }
      for (const ReductionRecord& rec : r.records)
        if (rec.kind == "bridge_eliminate") bridges++;
    } catch (const Infeasible& e) {
      c.fail(std::string("base-solver alarm fired: ") + e.what());
      break;
    } catch (const std::exception& e) {
      c.fail(std::string("pipeline threw: ") + e.what());
      break;
    }
    bool w0 = false;
    for (int v = 0; v < d.n; ++v)
      if (d.weight0_vertex(v)) w0 = true;
    if (w0) with_w0++;
    solved++;
  }
  if (solved < 200) c.fail("only " + std::to_string(solved) + " instances decomposed");
  if (with_w0 < solved / 2) c.fail("fewer than half the instances carry a weight-0 vertex");
  if (bridges == 0) c.fail("bridge eliminations never exercised");
  c.note(std::to_string(solved) + " instances, " + std::to_string(with_w0) + " with weight-0 vertices, " +
         std::to_string(bridges) + " bridge eliminations");
  c.finish(120.0);
}

// 9. Duality: involution on families and instances; reversed primal
//    solutions solve the dual.
void criterion9() {
  Criterion c(9);
  int involutions = 0, dual_solves = 0;
  std::uint64_t seed = 1;
  while ((involutions < 100 || dual_solves < 100) && seed < 20000) {
    GeneratorConfig cfg;
    cfg.seed = seed * 59 + 29;
    cfg.n = 5 + static_cast<int>(seed % 7);
    seed++;
    CircleInstance inst;
    try {
      inst = gen_circle_instance(cfg);
    } catch (const GenerationFailed&) {
      continue;
    }
    CircleInstance d = dual(inst);
    CircleInstance dd = dual(d);
    if (dd.family.sets != inst.family.sets || dd.signing.state != inst.signing.state) {
      c.fail("dual is not an involution");
      break;
    }
    involutions++;
    if (validate_instance(d)) {
      c.fail("dual of a valid instance fails validation");
      break;
    }
    if (dual_solves < 100) {
      SolveTrace tr = solve_circle(inst);
      ArcSet reversed;
      for (const Arc& a : tr.arcs.arcs) reversed.arcs.push_back({a.head, a.tail});
      if (!is_outer_planar(reversed, d.n) || !arc_set_covers(reversed, d.family)) {
        c.fail("reversed solution does not solve the dual");
        break;
      }
      dual_solves++;
    }
  }
  if (involutions < 100 || dual_solves < 100)
    c.fail("coverage short: " + std::to_string(involutions) + " involutions, " + std::to_string(dual_solves) +
           " dual solves");
  c.note(std::to_string(involutions) + " involutions, " + std::to_string(dual_solves) + " dual solves");
  c.finish(60.0);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (failures == 0)
    std::cout << "all acceptance criteria passed\n";
  else
    std::cout << failures << " criteria failed\n";
  return failures == 0 ? 0 : 1;
}

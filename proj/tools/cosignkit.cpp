#include <algorithm>
#include <cstdlib>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cosignkit/cosign.hpp"
#include "cosignkit/io.hpp"
#include "cosignkit/oracle.hpp"
#include "cosignkit/testkit.hpp"

namespace ck = cosignkit;
using ck::io::json;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;    // operational: I/O, schema, caps
constexpr int kNegative = 2; // domain-level: violation / infeasible / condition fails

struct Output {
  bool as_json = false;

  void emit(const json& report, const std::string& prose) const {
    if (as_json)
      std::cout << report.dump(2) << "\n";
    else
      std::cout << prose << "\n";
  }
};

std::string set_names(const ck::Family& f, int idx) {
  std::string out = "{";
  bool first = true;
  for (int e : f.at(idx).elements()) {
    if (!first) out += ",";
    out += f.ground.label(e);
    first = false;
  }
  return out + "}";
}

bool debug_enabled() {
  const char* v = std::getenv("COSIGN_KIT_DEBUG");
  return v && std::string(v) == "1";
}

int cmd_validate(const std::string& kind, const std::string& path, const Output& out) {
  json j = ck::io::load_file(path);
  if (kind == "family") {
    ck::Family f = ck::io::family_from_json(j);
    if (auto w = ck::crossing_violation(f)) {
      out.emit(json{{"verdict", "violation"},
                    {"property", "crossing"},
                    {"sets", {w->i, w->j}}},
               "not a crossing family: sets " + set_names(f, w->i) + " and " + set_names(f, w->j) +
                   " cross but closure sets are missing");
      return kNegative;
    }
    out.emit(json{{"verdict", "ok"}, {"members", f.size()}}, "crossing family with " + std::to_string(f.size()) + " members");
    return kOk;
  }
  if (kind == "circle") {
    ck::CircleInstance inst = ck::io::circle_from_json(j);
    if (auto v = ck::validate_instance(inst)) {
      json witness = json::array();
      witness.push_back(v->set_a);
      if (v->set_b >= 0) witness.push_back(v->set_b);
      out.emit(json{{"verdict", "violation"}, {"property", ck::to_string(v->property)}, {"sets", witness}},
               std::string("instance violates ") + ck::to_string(v->property) + " (set index " +
                   std::to_string(v->set_a) + (v->set_b >= 0 ? ", " + std::to_string(v->set_b) : "") + ")");
      return kNegative;
    }
    out.emit(json{{"verdict", "ok"}}, "valid circle instance");
    return kOk;
  }
  if (kind == "plane") {
    ck::PlaneDigraph d = ck::io::plane_from_json(j);
    if (auto v = ck::validate_plane(d)) {
      out.emit(json{{"verdict", "violation"}, {"detail", v->what}}, "not a plane digraph: " + v->what);
      return kNegative;
    }
    bool proper = ck::is_proper(d);
    json rep{{"verdict", proper ? "ok" : "violation"}, {"plane", true}, {"proper", proper}};
    out.emit(rep, proper ? "plane and proper" : "plane but not proper (light dicut or disconnected weight-1 arcs)");
    return proper ? kOk : kNegative;
  }
  if (kind == "lattice") {
    ck::LatticeFamily lat = ck::io::lattice_from_json(j);
    if (!lat.min_set.subset_of(lat.max_set) || !lat.closure(lat.min_set).subset_of(lat.max_set)) {
      out.emit(json{{"verdict", "violation"}, {"detail", "min/max/preorder inconsistent"}},
               "lattice family inconsistent: closure of min escapes max");
      return kNegative;
    }
    out.emit(json{{"verdict", "ok"}}, "well-formed lattice family");
    return kOk;
  }
  throw ck::Error("unknown kind '" + kind + "' (family|circle|plane|lattice)");
}

int cmd_cosign(const std::string& path, bool cc, bool oracle, const std::string& out_path, const Output& out) {
  ck::Family f = ck::io::family_from_json(ck::io::load_file(path));
  ck::PartialSigning signing;
  ck::RunStats stats;

  if (oracle) {
    ck::WellProvidedFamily w = ck::explicit_to_well_provided(f);
    ck::OracleStats ost;
    signing = ck::oracle_cosign(w, &ost);
    out.emit(json{{"verdict", "ok"},
                  {"signs", ck::io::signing_to_json(signing)["signs"]},
                  {"lattice_calls", ost.lattice_calls}},
             "cosigning found (oracle model, " + std::to_string(ost.lattice_calls) + " lattice minimizations)");
  } else {
    ck::CosignOutcome r = cc ? ck::cc_cosign(f) : ck::cosign(f);
    if (auto* v = std::get_if<ck::ConditionViolation>(&r)) {
      json witness = json::array();
      witness.push_back(v->set_a);
      if (v->set_b >= 0) witness.push_back(v->set_b);
      std::string what = v->kind == ck::ViolationKind::missing_u ? "missing_u"
                         : v->kind == ck::ViolationKind::missing_v ? "missing_v"
                         : v->kind == ck::ViolationKind::cc_missing_u ? "cc_missing_u"
                                                                      : "cc_missing_v";
      out.emit(json{{"verdict", "infeasible"}, {"kind", what}, {"sets", witness}},
               "no " + std::string(cc ? "cap-cup-closed " : "") + "cosigning: condition fails (" + what +
                   ") at set " + set_names(f, v->set_a) +
                   (v->set_b >= 0 ? " with " + set_names(f, v->set_b) : ""));
      return kNegative;
    }
    auto& res = std::get<ck::CosignResult>(r);
    signing = res.signing;
    stats = res.stats;
    out.emit(json{{"verdict", "ok"},
                  {"signs", ck::io::signing_to_json(signing)["signs"]},
                  {"stats",
                   {{"iterations", stats.iterations},
                    {"set_scans", stats.set_scans},
                    {"pair_scans", stats.pair_scans},
                    {"forced", stats.forced_count},
                    {"free", stats.free_count}}}},
             "cosigning found (" + std::to_string(stats.forced_count) + " forced, " +
                 std::to_string(stats.free_count) + " free)");
  }
  if (!out_path.empty()) ck::io::save_file(out_path, ck::io::signing_to_json(signing));
  return kOk;
}

int cmd_circle(const std::string& path, const std::string& out_path, bool trace, const Output& out) {
  ck::CircleInstance inst = ck::io::circle_from_json(ck::io::load_file(path));
  if (auto v = ck::validate_instance(inst)) {
    out.emit(json{{"verdict", "invalid"}, {"property", ck::to_string(v->property)}},
             std::string("instance violates ") + ck::to_string(v->property));
    return kNegative;
  }
  ck::SolveOptions opts;
  opts.revalidate = debug_enabled();
  ck::SolveTrace result = ck::solve_circle(inst, opts);
  json rep{{"verdict", "ok"}, {"arcs", ck::io::arcset_to_json(result.arcs)["arcs"]}};
  if (trace) {
    json steps = json::array();
    for (const auto& r : result.records) {
      json arcs = json::array();
      for (const auto& a : r.arcs_added) arcs.push_back(json::array({a.tail, a.head}));
      steps.push_back(json{{"step", r.step}, {"arcs", arcs}, {"deleted", r.vertices_deleted}});
    }
    rep["trace"] = steps;
  }
  out.emit(rep, "outer-planar covering with " + std::to_string(result.arcs.arcs.size()) + " arcs");
  if (!out_path.empty()) ck::io::save_file(out_path, ck::io::arcset_to_json(result.arcs));
  return kOk;
}

int cmd_dijoin(const std::string& path, const std::string& out_path, bool trace, const Output& out) {
  ck::PlaneDigraph d = ck::io::plane_from_json(ck::io::load_file(path));
  ck::DijoinOptions opts;
  opts.debug = debug_enabled();
  opts.circle_debug = opts.debug;
  ck::DecomposeResult r = ck::decompose_dijoins(d, opts);
  json rep = ck::io::dijoin_pair_to_json(r.pair);
  rep["verdict"] = "ok";
  if (trace) {
    json steps = json::array();
    for (const auto& rec : r.records)
      steps.push_back(json{{"kind", rec.kind}, {"vertex", rec.vertex}, {"vertices_after", rec.vertices_after}});
    rep["trace"] = steps;
  }
  out.emit(rep, "two disjoint dijoins: |J1| = " + std::to_string(r.pair.j1.size()) +
                    ", |J2| = " + std::to_string(r.pair.j2.size()) + " (" + std::to_string(r.records.size()) +
                    " reductions)");
  if (!out_path.empty()) ck::io::save_file(out_path, ck::io::dijoin_pair_to_json(r.pair));
  return kOk;
}

int cmd_gen(const std::string& kind, std::uint64_t seed, int n, const std::string& out_path, const Output& out) {
  ck::GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.n = n;
  json j;
  if (kind == "family") {
    j = ck::io::family_to_json(ck::gen_crossing_family(cfg));
  } else if (kind == "circle") {
    j = ck::io::circle_to_json(ck::gen_circle_instance(cfg));
  } else if (kind == "plane") {
    j = ck::io::plane_to_json(ck::gen_plane_digraph(cfg));
  } else if (kind == "plane0") {
    cfg.want_weight0 = true;
    j = ck::io::plane_to_json(ck::gen_plane_digraph(cfg));
  } else {
    throw ck::Error("unknown kind '" + kind + "' (family|circle|plane|plane0)");
  }
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    ck::io::save_file(out_path, j);
  out.emit(json{{"verdict", "ok"}}, "generated " + kind + " instance (seed " + std::to_string(seed) + ")");
  return kOk;
}

int verify_one(const std::string& kind, const std::string& instance_path, const std::string& solution_path,
               const Output& out) {
  json ji = ck::io::load_file(instance_path);
  json js = ck::io::load_file(solution_path);
  if (kind == "cosign" || kind == "cc-cosign") {
    ck::Family f = ck::io::family_from_json(ji);
    ck::PartialSigning s = ck::io::signing_from_json(js);
    if (s.size() != f.n() || !s.complete()) throw ck::Error("signing incomplete or wrong length");
    bool ok = kind == "cosign" ? ck::verify_cosigning(f, s) : ck::verify_cc_cosigning(f, s);
    if (!ok) {
      out.emit(json{{"verdict", "invalid"}}, "signing is not a valid " + kind + " for the family");
      return kNegative;
    }
    out.emit(json{{"verdict", "ok"}}, "signing verifies");
    return kOk;
  }
  if (kind == "circle") {
    ck::CircleInstance inst = ck::io::circle_from_json(ji);
    ck::ArcSet arcs = ck::io::arcset_from_json(js);
    for (const ck::Arc& a : arcs.arcs)
      if (a.tail < 0 || a.tail >= inst.n || a.head < 0 || a.head >= inst.n) throw ck::Error("arc endpoint out of range");
    if (auto cross = ck::outer_planar_violation(arcs, inst.n)) {
      out.emit(json{{"verdict", "invalid"}, {"crossing_arcs", {cross->first, cross->second}}},
               "arcs " + std::to_string(cross->first) + " and " + std::to_string(cross->second) + " cross");
      return kNegative;
    }
    auto covered = ck::covered_indices(inst.family, arcs.arcs);
    if (static_cast<int>(covered.size()) != inst.family.size()) {
      int missing = -1;
      for (int i = 0; i < inst.family.size(); ++i)
        if (std::find(covered.begin(), covered.end(), i) == covered.end()) {
          missing = i;
          break;
        }
      out.emit(json{{"verdict", "invalid"}, {"uncovered_set", missing}},
               "set " + set_names(inst.family, missing) + " receives no arc");
      return kNegative;
    }
    out.emit(json{{"verdict", "ok"}}, "outer-planar and covers every set");
    return kOk;
  }
  if (kind == "dijoin") {
    ck::PlaneDigraph d = ck::io::plane_from_json(ji);
    if (auto bad = ck::validate_plane(d)) throw ck::Error("instance is not a plane digraph: " + bad->what);
    ck::DijoinPair p = ck::io::dijoin_pair_from_json(js);
    ck::DijoinVerify v = ck::verify_dijoin_pair(d, p);
    if (!v.ok) {
      json rep{{"verdict", "invalid"}, {"reason", v.reason}};
      if (v.unhit_shore) rep["unhit_shore"] = v.unhit_shore->elements();
      out.emit(rep, "invalid dijoin pair: " + v.reason);
      return kNegative;
    }
    out.emit(json{{"verdict", "ok"}}, "two disjoint dijoins verified");
    return kOk;
  }
  throw ck::Error("unknown kind '" + kind + "' (cosign|cc-cosign|circle|dijoin)");
}

int cmd_verify(const std::string& kind, const std::vector<std::string>& paths, int jobs, const Output& out) {
  if (paths.size() % 2 != 0 || paths.empty())
    throw ck::Error("verify expects instance/solution path pairs");
  const std::size_t pairs = paths.size() / 2;
  if (pairs == 1 || jobs <= 1) {
    int worst = kOk;
    for (std::size_t i = 0; i < pairs; ++i)
      worst = std::max(worst, verify_one(kind, paths[2 * i], paths[2 * i + 1], out));
    return worst;
  }
  std::vector<std::future<int>> futs;
  for (std::size_t i = 0; i < pairs; ++i) {
    futs.push_back(std::async(std::launch::async, [&paths, &kind, i]() {
      // verification only; workers report through the summary line
      try {
        std::ostringstream sink;
        json ji = ck::io::load_file(paths[2 * i]);
        json js = ck::io::load_file(paths[2 * i + 1]);
        if (kind == "circle") {
          ck::CircleInstance inst = ck::io::circle_from_json(ji);
          ck::ArcSet arcs = ck::io::arcset_from_json(js);
          bool ok = ck::is_outer_planar(arcs, inst.n) && ck::arc_set_covers(arcs, inst.family);
          return ok ? kOk : kNegative;
        }
        if (kind == "dijoin") {
          ck::PlaneDigraph d = ck::io::plane_from_json(ji);
          if (ck::validate_plane(d)) return kError;
          return ck::verify_dijoin_pair(d, ck::io::dijoin_pair_from_json(js)).ok ? kOk : kNegative;
        }
        ck::Family f = ck::io::family_from_json(ji);
        ck::PartialSigning s = ck::io::signing_from_json(js);
        bool ok = kind == "cosign" ? ck::verify_cosigning(f, s) : ck::verify_cc_cosigning(f, s);
        return ok ? kOk : kNegative;
      } catch (...) {
        return kError;
      }
    }));
  }
  int worst = kOk;
  for (auto& f : futs) worst = std::max(worst, f.get());
  out.emit(json{{"verdict", worst == kOk ? "ok" : "invalid"}, {"pairs", pairs}},
           std::to_string(pairs) + " pairs verified, worst exit " + std::to_string(worst));
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cosignkit: cosignings of crossing families, outer-planar circle coverings, disjoint dijoins"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Output out;
  app.add_flag("--json", out.as_json, "machine-readable reports on stdout");

  std::string path, kind, out_path, solution;
  std::vector<std::string> verify_paths;
  bool cc = false, oracle = false, trace = false;
  std::uint64_t seed = 1;
  int n = 8, jobs = 1;

  auto* validate = app.add_subcommand("validate", "run the matching validator on an instance file");
  validate->add_option("kind", kind, "family|circle|plane|lattice")->required();
  validate->add_option("path", path, "instance file")->required();

  auto* cosign = app.add_subcommand("cosign", "find a (cap-cup-closed) cosigning of a crossing family");
  cosign->add_option("path", path, "family file")->required();
  cosign->add_flag("--cc", cc, "cap-cup-closed variant");
  cosign->add_flag("--oracle", oracle, "oracle-model algorithm over the well-provided representation");
  cosign->add_option("-o,--out", out_path, "write the signing JSON here");

  auto* circle = app.add_subcommand("circle", "solve the circle covering problem");
  circle->add_option("path", path, "circle instance file")->required();
  circle->add_option("-o,--out", out_path, "write the arc set JSON here");
  circle->add_flag("--trace", trace, "include the reduction trace");

  auto* dijoin = app.add_subcommand("dijoin", "decompose the weight-1 arcs into two disjoint dijoins");
  dijoin->add_option("path", path, "plane digraph file")->required();
  dijoin->add_option("-o,--out", out_path, "write the dijoin pair JSON here");
  dijoin->add_flag("--trace", trace, "include the reduction trace");

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("kind", kind, "family|circle|plane|plane0")->required();
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--n", n, "ground size");
  gen->add_option("-o,--out", out_path, "write the instance here (default stdout)");

  auto* verify = app.add_subcommand("verify", "re-check a solution file against its instance");
  verify->add_option("kind", kind, "cosign|cc-cosign|circle|dijoin")->required();
  verify->add_option("paths", verify_paths, "instance solution [instance solution ...]")->required();
  verify->add_option("--jobs", jobs, "parallel verification workers");

  auto* dot = app.add_subcommand("dot", "print a plane digraph as DOT");
  dot->add_option("path", path, "plane digraph file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(kind, path, out);
    if (cosign->parsed()) return cmd_cosign(path, cc, oracle, out_path, out);
    if (circle->parsed()) return cmd_circle(path, out_path, trace, out);
    if (dijoin->parsed()) return cmd_dijoin(path, out_path, trace, out);
    if (gen->parsed()) return cmd_gen(kind, seed, n, out_path, out);
    if (verify->parsed()) return cmd_verify(kind, verify_paths, jobs, out);
    if (dot->parsed()) {
      std::cout << ck::io::plane_to_dot(ck::io::plane_from_json(ck::io::load_file(path)));
      return kOk;
    }
  } catch (const ck::NotCrossing& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  } catch (const ck::InvalidInstance& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  } catch (const ck::NotProper& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  } catch (const ck::NotPlanar& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pgkit/axioms.hpp"
#include "pgkit/enumeration.hpp"
#include "pgkit/errors.hpp"
#include "pgkit/export.hpp"
#include "pgkit/geometry.hpp"
#include "pgkit/manifest.hpp"
#include "pgkit/parallel.hpp"
#include "pgkit/symmetry.hpp"
#include "pgkit/version.hpp"

namespace fs = std::filesystem;
using namespace pgkit;

namespace {

struct CommonOpts {
  std::string input_path;
  int n = -1;
  int q = -1;
  int jobs = 0;
  std::string out_dir = ".";
  bool timings = false;
};

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

void add_input_options(CLI::App* sub, CommonOpts& o) {
  sub->add_option("input", o.input_path, "incidence text file to load");
  sub->add_option("--n", o.n, "projective dimension (builds PG(n,q) instead of loading)");
  sub->add_option("--q", o.q, "field order (builds PG(n,q) instead of loading)");
}

void add_common_options(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--jobs,-j", o.jobs, "worker count (default: PGKIT_JOBS, then hardware)");
  sub->add_option("--out", o.out_dir, "output directory")->capture_default_str();
  sub->add_flag("--timings", o.timings, "include wall-clock timings in JSON artifacts");
}

Geometry resolve_input(const CommonOpts& o, RunManifest& m) {
  const bool has_file = !o.input_path.empty();
  const bool has_nq = o.n >= 0 || o.q >= 0;
  if (has_file && has_nq)
    throw Error("give either an incidence file or --n/--q, not both");
  if (has_file) {
    std::ifstream in(o.input_path, std::ios::binary);
    if (!in) throw Error("cannot read input file '" + o.input_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    m.inputs[o.input_path] = fnv1a64_hex(buf.str());
    return Geometry::load_incidence(buf.str(), o.input_path);
  }
  if (o.n < 0 || o.q < 0)
    throw Error("no input: give an incidence file path or both --n and --q");
  std::string key = "pg(" + std::to_string(o.n) + "," + std::to_string(o.q) + ")";
  m.inputs[key] = fnv1a64_hex(key);
  return Geometry::build_pg(o.n, o.q);
}

void write_artifact(const CommonOpts& o, const std::string& name, const std::string& bytes,
                    RunManifest& m) {
  fs::create_directories(o.out_dir);
  fs::path path = fs::path(o.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  out << bytes;
  if (!out) throw Error("failed to write '" + path.string() + "'");
  m.outputs[name] = fnv1a64_hex(bytes);
}

void write_manifest(const CommonOpts& o, RunManifest& m, double total_ms) {
  m.timings_ms["total"] = total_ms;
  fs::create_directories(o.out_dir);
  fs::path path = fs::path(o.out_dir) / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  out << m.to_json().dump(2) << "\n";
  if (!out) throw Error("failed to write '" + path.string() + "'");
}

std::string json_bytes(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

nlohmann::ordered_json doc_header() {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["generator"] = {{"name", "pgkit"}, {"version", kVersion}};
  return doc;
}

int run_build(const CommonOpts& o) {
  Stopwatch sw;
  RunManifest m;
  m.command = "build";
  m.parameters["n"] = std::to_string(o.n);
  m.parameters["q"] = std::to_string(o.q);
  if (o.n < 0 || o.q < 0) throw Error("build requires both --n and --q");
  Geometry g = Geometry::build_pg(o.n, o.q);
  std::string name = "pg_" + std::to_string(o.n) + "_" + std::to_string(o.q) + ".txt";
  write_artifact(o, name, emit_incidence_txt(g), m);
  std::cout << g.num_points() << " points, " << g.num_lines() << " lines, "
            << g.points_per_line() << " points/line\n";
  write_manifest(o, m, sw.ms());
  return 0;
}

int run_axioms(const CommonOpts& o, bool symmetrized_pasch, bool no_prune) {
  Stopwatch sw;
  RunManifest m;
  m.command = "axioms";
  m.parameters["symmetrized_pasch"] = symmetrized_pasch ? "true" : "false";
  m.parameters["prune"] = no_prune ? "false" : "true";
  m.parameters["jobs"] = std::to_string(o.jobs);
  Geometry g = resolve_input(o, m);
  CheckOptions opt;
  opt.prune = !no_prune;
  opt.jobs = resolve_jobs(o.jobs);
  std::vector<AxiomReport> reports;
  bool all_hold = true;
  for (AxiomId id : kAllAxioms) {
    if (id == AxiomId::kA2Sym && !symmetrized_pasch) continue;
    AxiomReport r = check_axiom(g, id, opt);
    m.timings_ms[axiom_name(id)] = r.timing_ms;
    all_hold = all_hold && r.holds;
    std::cout << axiom_name(id) << ": " << (r.holds ? "ok" : "FAIL") << " (" << r.cases_checked
              << " cases";
    if (!r.counterexample.empty()) {
      std::cout << (r.holds ? ", witness:" : ", counterexample:");
      for (int v : r.counterexample) std::cout << " " << v;
    }
    std::cout << ")\n";
    reports.push_back(std::move(r));
  }
  EmissionConfig cfg;
  cfg.include_spreads = false;
  cfg.include_packings = false;
  cfg.include_timings = o.timings;
  write_artifact(o, "axioms.json", json_bytes(emit_json(g, reports, {}, {}, cfg)), m);
  std::cout << (all_hold ? "all axioms hold" : "axiom check failed") << "\n";
  write_manifest(o, m, sw.ms());
  return all_hold ? 0 : 1;
}

int run_spreads(const CommonOpts& o, bool oracle) {
  Stopwatch sw;
  RunManifest m;
  m.command = "spreads";
  m.parameters["oracle"] = oracle ? "true" : "false";
  m.parameters["jobs"] = std::to_string(o.jobs);
  Geometry g = resolve_input(o, m);
  EnumOptions opt;
  opt.jobs = resolve_jobs(o.jobs);
  Stopwatch enum_sw;
  std::vector<Spread> spreads = enumerate_spreads(g, opt);
  m.timings_ms["enumerate"] = enum_sw.ms();
  std::cout << spreads.size() << " spreads\n";
  int rc = 0;
  if (oracle) {
    Stopwatch oracle_sw;
    QuintupleScan scan = spread_oracle_quintuples(g, opt);
    m.timings_ms["oracle"] = oracle_sw.ms();
    if (scan.spreads == spreads) {
      std::cout << "oracle agreement: exact\n";
    } else {
      std::cerr << "oracle mismatch: enumerated " << spreads.size() << ", oracle found "
                << scan.spreads.size() << "\n";
      rc = 1;
    }
  }
  EmissionConfig cfg;
  cfg.include_axioms = false;
  cfg.include_packings = false;
  write_artifact(o, "spreads.json", json_bytes(emit_json(g, {}, spreads, {}, cfg)), m);
  write_manifest(o, m, sw.ms());
  return rc;
}

int run_packings(const CommonOpts& o, bool oracle) {
  Stopwatch sw;
  RunManifest m;
  m.command = "packings";
  m.parameters["oracle"] = oracle ? "true" : "false";
  m.parameters["jobs"] = std::to_string(o.jobs);
  Geometry g = resolve_input(o, m);
  EnumOptions opt;
  opt.jobs = resolve_jobs(o.jobs);
  std::vector<Spread> spreads = enumerate_spreads(g, opt);
  Stopwatch enum_sw;
  std::vector<Packing> packings = enumerate_packings(g, spreads, opt);
  m.timings_ms["enumerate"] = enum_sw.ms();
  std::cout << packings.size() << " packings\n";
  int rc = 0;
  if (oracle) {
    Stopwatch oracle_sw;
    std::vector<Packing> clique = packing_oracle_cliques(g, spreads, opt);
    m.timings_ms["oracle"] = oracle_sw.ms();
    if (clique == packings) {
      std::cout << "oracle agreement: exact\n";
    } else {
      std::cerr << "oracle mismatch: enumerated " << packings.size() << ", oracle found "
                << clique.size() << "\n";
      rc = 1;
    }
  }
  EmissionConfig cfg;
  cfg.include_axioms = false;
  write_artifact(o, "packings.json", json_bytes(emit_json(g, {}, spreads, packings, cfg)), m);
  write_manifest(o, m, sw.ms());
  return rc;
}

int run_classify(const CommonOpts& o, const std::string& kind) {
  Stopwatch sw;
  RunManifest m;
  m.command = "classify";
  m.parameters["kind"] = kind;
  m.parameters["jobs"] = std::to_string(o.jobs);
  Geometry g = resolve_input(o, m);
  auto [n, q] = inferred_parameters(g);
  std::uint64_t order = pgl_order(n, q);
  std::cout << "collineations: " << order << "\n";
  std::vector<Collineation> gens = generators_for(g);
  EnumOptions opt;
  opt.jobs = resolve_jobs(o.jobs);
  std::vector<Spread> spreads = enumerate_spreads(g, opt);
  OrbitIndex idx = kind == "spread"
                       ? OrbitIndex::over_spreads(g, spreads, gens)
                       : OrbitIndex::over_packings(g, spreads, enumerate_packings(g, spreads, opt),
                                                   gens);
  const OrbitReport& r = idx.report();
  if (r.orbit_count == 1) {
    std::cout << "1 class (size " << r.orbit_sizes[0] << ")\n";
  } else {
    std::cout << r.orbit_count << " classes (sizes";
    for (std::size_t i = 0; i < r.orbit_sizes.size(); ++i)
      std::cout << (i ? ", " : " ") << r.orbit_sizes[i];
    std::cout << ")\n";
  }
  nlohmann::ordered_json doc = doc_header();
  doc["collineations"] = order;
  doc["orbits"] = orbit_json(r);
  write_artifact(o, "classify_" + kind + ".json", json_bytes(doc), m);
  write_manifest(o, m, sw.ms());
  return 0;
}

int run_witness(const CommonOpts& o, const std::string& kind, int from, int to, bool chain) {
  Stopwatch sw;
  RunManifest m;
  m.command = "witness";
  m.parameters["kind"] = kind;
  m.parameters["jobs"] = std::to_string(o.jobs);
  Geometry g = resolve_input(o, m);
  std::vector<Collineation> gens = generators_for(g);
  EnumOptions opt;
  opt.jobs = resolve_jobs(o.jobs);
  std::vector<Spread> spreads = enumerate_spreads(g, opt);
  int num_objects = static_cast<int>(spreads.size());
  OrbitIndex idx = [&] {
    if (kind == "spread") return OrbitIndex::over_spreads(g, spreads, gens);
    std::vector<Packing> packings = enumerate_packings(g, spreads, opt);
    num_objects = static_cast<int>(packings.size());
    return OrbitIndex::over_packings(g, spreads, packings, gens);
  }();

  if (chain) {
    m.parameters["chain"] = "true";
    nlohmann::ordered_json doc = doc_header();
    doc["kind"] = kind;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (int i = 0; i < num_objects; ++i) {
      int j = (i + 1) % num_objects;
      std::optional<Collineation> w = idx.witness(i, j);
      if (!w) {
        std::cerr << "no witness exists (object " << i << " in class " << idx.report().class_of[i]
                  << ", object " << j << " in class " << idx.report().class_of[j] << ")\n";
        write_manifest(o, m, sw.ms());
        return 1;
      }
      if (!verify_collineation(g, *w)) throw Error("witness failed incidence verification");
      arr.push_back(witness_json(i, j, &*w));
    }
    doc["witnesses"] = std::move(arr);
    write_artifact(o, "witness_chain.json", json_bytes(doc), m);
    std::cout << "chain of " << num_objects << " witnesses verified\n";
    write_manifest(o, m, sw.ms());
    return 0;
  }

  if (from < 0 || to < 0) throw Error("witness requires --from and --to (or --chain)");
  m.parameters["from"] = std::to_string(from);
  m.parameters["to"] = std::to_string(to);
  std::optional<Collineation> w = idx.witness(from, to);
  nlohmann::ordered_json doc = doc_header();
  doc["kind"] = kind;
  nlohmann::ordered_json wj = witness_json(from, to, w ? &*w : nullptr);
  wj["class_of_from"] = idx.report().class_of[from];
  wj["class_of_to"] = idx.report().class_of[to];
  doc["witness"] = std::move(wj);
  write_artifact(o, "witness.json", json_bytes(doc), m);
  if (!w) {
    std::cerr << "no witness exists (object " << from << " in class "
              << idx.report().class_of[from] << ", object " << to << " in class "
              << idx.report().class_of[to] << ")\n";
    write_manifest(o, m, sw.ms());
    return 1;
  }
  if (!verify_collineation(g, *w)) throw Error("witness failed incidence verification");
  std::cout << "witness verified: " << kind << " " << from << " -> " << to << "\n";
  write_manifest(o, m, sw.ms());
  return 0;
}

int run_export(const CommonOpts& o, const std::string& format, bool with_axioms,
               bool with_spreads, bool with_packings, EmissionConfig cfg) {
  Stopwatch sw;
  RunManifest m;
  m.command = "export";
  m.parameters["format"] = format;
  m.parameters["jobs"] = std::to_string(o.jobs);
  Geometry g = resolve_input(o, m);
  cfg.include_axioms = with_axioms;
  cfg.include_spreads = with_spreads;
  cfg.include_packings = with_packings;
  cfg.include_timings = o.timings;

  CheckOptions copt;
  copt.jobs = resolve_jobs(o.jobs);
  EnumOptions eopt;
  eopt.jobs = copt.jobs;
  std::vector<Spread> spreads;
  std::vector<Packing> packings;
  if (with_spreads || with_packings) spreads = enumerate_spreads(g, eopt);
  if (with_packings) packings = enumerate_packings(g, spreads, eopt);

  if (format == "txt") {
    write_artifact(o, "model.txt", emit_incidence_txt(g), m);
    std::cout << "wrote model.txt\n";
  } else if (format == "json") {
    std::vector<AxiomReport> reports;
    if (with_axioms)
      for (AxiomId id : kAllAxioms) reports.push_back(check_axiom(g, id, copt));
    write_artifact(o, "model.json", json_bytes(emit_json(g, reports, spreads, packings, cfg)), m);
    std::cout << "wrote model.json\n";
  } else {
    std::optional<SkolemTables> skolem;
    if (with_axioms) skolem = skolem_tables(g, copt);
    std::string src = emit_proof_source(g, spreads, packings, cfg, skolem ? &*skolem : nullptr);
    std::vector<std::string> diags = validate_proof_source(src);
    if (!diags.empty()) throw Error("emitted source failed validation: " + diags.front());
    write_artifact(o, "model.v", src, m);
    std::cout << "wrote model.v\n";
  }
  write_manifest(o, m, sw.ms());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pgkit: finite projective spaces PG(n,q), spreads, packings, and collineations"};
  app.require_subcommand(1);
  int rc = 0;

  CommonOpts build_o;
  CLI::App* build = app.add_subcommand("build", "construct PG(n,q) and write its incidence text");
  build->add_option("--n", build_o.n, "projective dimension")->required();
  build->add_option("--q", build_o.q, "field order")->required();
  add_common_options(build, build_o);
  build->callback([&] { rc = run_build(build_o); });

  CommonOpts ax_o;
  bool no_sym = false;
  bool no_prune = false;
  CLI::App* ax = app.add_subcommand("axioms", "check the projective-space axioms");
  add_input_options(ax, ax_o);
  add_common_options(ax, ax_o);
  ax->add_flag("--no-symmetrized-pasch", no_sym, "skip the symmetrized Pasch variant");
  ax->add_flag("--no-prune", no_prune, "count the full case space instead of canonical tuples");
  ax->callback([&] { rc = run_axioms(ax_o, !no_sym, no_prune); });

  CommonOpts sp_o;
  bool sp_oracle = false;
  CLI::App* sp = app.add_subcommand("spreads", "enumerate the spreads of a PG(3,q)");
  add_input_options(sp, sp_o);
  add_common_options(sp, sp_o);
  sp->add_flag("--oracle", sp_oracle, "re-derive the list with the brute-force oracle and diff");
  sp->callback([&] { rc = run_spreads(sp_o, sp_oracle); });

  CommonOpts pk_o;
  bool pk_oracle = false;
  CLI::App* pk = app.add_subcommand("packings", "enumerate the packings of a PG(3,q)");
  add_input_options(pk, pk_o);
  add_common_options(pk, pk_o);
  pk->add_flag("--oracle", pk_oracle, "re-derive the list with the clique oracle and diff");
  pk->callback([&] { rc = run_packings(pk_o, pk_oracle); });

  CommonOpts cl_o;
  std::string cl_kind;
  CLI::App* cl = app.add_subcommand("classify", "orbit classification under the collineation group");
  add_input_options(cl, cl_o);
  add_common_options(cl, cl_o);
  cl->add_option("--kind", cl_kind, "object kind: spread or packing")
      ->required()
      ->check(CLI::IsMember({"spread", "packing"}));
  cl->callback([&] { rc = run_classify(cl_o, cl_kind); });

  CommonOpts wt_o;
  std::string wt_kind = "spread";
  int wt_from = -1;
  int wt_to = -1;
  bool wt_chain = false;
  CLI::App* wt = app.add_subcommand("witness", "explicit collineation between two objects");
  add_input_options(wt, wt_o);
  add_common_options(wt, wt_o);
  wt->add_option("--kind", wt_kind, "object kind: spread or packing")
      ->check(CLI::IsMember({"spread", "packing"}));
  wt->add_option("--from", wt_from, "source object index");
  wt->add_option("--to", wt_to, "target object index");
  wt->add_flag("--chain", wt_chain, "emit witnesses i -> i+1 (mod count) for all objects");
  wt->callback([&] { rc = run_witness(wt_o, wt_kind, wt_from, wt_to, wt_chain); });

  CommonOpts ex_o;
  std::string ex_format = "json";
  bool ex_axioms = false;
  bool ex_spreads = false;
  bool ex_packings = false;
  EmissionConfig ex_cfg;
  CLI::App* ex = app.add_subcommand("export", "emit the model as txt, json, or coq source");
  add_input_options(ex, ex_o);
  add_common_options(ex, ex_o);
  ex->add_option("--format", ex_format, "txt, json, or coq")
      ->check(CLI::IsMember({"txt", "json", "coq"}))
      ->capture_default_str();
  ex->add_flag("--with-axioms", ex_axioms, "include axiom reports / witness functions");
  ex->add_flag("--with-spreads", ex_spreads, "include the spread list");
  ex->add_flag("--with-packings", ex_packings, "include the packing list");
  ex->add_option("--point-prefix", ex_cfg.point_prefix, "identifier prefix for points")
      ->capture_default_str();
  ex->add_option("--line-prefix", ex_cfg.line_prefix, "identifier prefix for lines")
      ->capture_default_str();
  ex->add_option("--spread-prefix", ex_cfg.spread_prefix, "identifier prefix for spreads")
      ->capture_default_str();
  ex->add_option("--packing-prefix", ex_cfg.packing_prefix, "identifier prefix for packings")
      ->capture_default_str();
  ex->callback(
      [&] { rc = run_export(ex_o, ex_format, ex_axioms, ex_spreads, ex_packings, ex_cfg); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

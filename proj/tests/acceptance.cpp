// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pgkit/axioms.hpp"
#include "pgkit/enumeration.hpp"
#include "pgkit/export.hpp"
#include "pgkit/geometry.hpp"
#include "pgkit/symmetry.hpp"

using namespace pgkit;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fmt_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f ms", ms);
  return buf;
}

std::vector<std::string> tokens_of(const std::string& text) {
  std::vector<std::string> toks;
  std::size_t i = 0;
  auto word_char = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
    } else if (word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      toks.push_back(text.substr(i, j - i));
      i = j;
    } else {
      toks.push_back(std::string(1, c));
      ++i;
    }
  }
  return toks;
}

bool contains_token_run(const std::vector<std::string>& hay, const std::string& needle) {
  std::vector<std::string> n = tokens_of(needle);
  if (n.empty()) return true;
  if (hay.size() < n.size()) return false;
  for (std::size_t i = 0; i + n.size() <= hay.size(); ++i) {
    bool all = true;
    for (std::size_t k = 0; k < n.size(); ++k) {
      if (hay[i + k] != n[k]) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Check {
  std::ostringstream msg;
  bool ok = true;

  void require(bool cond, const std::string& on_fail) {
    if (!cond) {
      ok = false;
      if (msg.tellp() > 0) msg << "; ";
      msg << on_fail;
    }
  }
  void note(const std::string& s) {
    if (msg.tellp() > 0) msg << "; ";
    msg << s;
  }
  Outcome done() { return {ok, msg.str()}; }
};

// ---------------------------------------------------------------------------

Outcome criterion_counts() {
  struct Row {
    int n, q, points, lines, width;
  };
  const Row rows[] = {{2, 2, 7, 7, 3},    {2, 3, 13, 13, 4},  {2, 5, 31, 31, 6},
                      {3, 2, 15, 35, 3},  {3, 3, 40, 130, 4}, {3, 4, 85, 357, 5}};
  Check c;
  double worst = 0.0;
  for (const Row& r : rows) {
    double t0 = now_ms();
    Geometry g = Geometry::build_pg(r.n, r.q);
    double t = now_ms() - t0;
    worst = std::max(worst, t);
    std::string tag = "PG(" + std::to_string(r.n) + "," + std::to_string(r.q) + ")";
    c.require(g.num_points() == r.points && g.num_lines() == r.lines &&
                  g.points_per_line() == r.width,
              tag + " counts wrong: " + std::to_string(g.num_points()) + "/" +
                  std::to_string(g.num_lines()) + "/" + std::to_string(g.points_per_line()));
    c.require(t < 1000.0, tag + " build took " + fmt_ms(t) + " (limit 1000 ms)");
  }
  if (c.ok) c.note("six rows exact; slowest build " + fmt_ms(worst) + " < 1000 ms");
  return c.done();
}

Outcome criterion_axioms(const Geometry& constructed, const Geometry& fixture) {
  Check c;
  CheckOptions serial;  // prune on, one worker
  double t0 = now_ms();
  std::vector<AxiomReport> on_built = check_all(constructed, serial);
  double suite_ms = now_ms() - t0;
  std::vector<AxiomReport> on_fixture = check_all(fixture, serial);
  for (const AxiomReport& r : on_built)
    c.require(r.holds, std::string(axiom_name(r.id)) + " fails on constructed PG(3,2)");
  for (const AxiomReport& r : on_fixture)
    c.require(r.holds, std::string(axiom_name(r.id)) + " fails on the fixture");

  CheckOptions unpruned = serial;
  unpruned.prune = false;
  AxiomReport full = check_a3_3(constructed, unpruned);
  c.require(full.holds && full.cases_checked == 42875,
            "unpruned a3_3 reported " + std::to_string(full.cases_checked) + " cases, want 42875");

  AxiomReport plane = check_a3_2(Geometry::build_pg(2, 2), serial);
  c.require(!plane.holds, "a3_2 unexpectedly holds on PG(2,2)");

  c.require(suite_ms < 10000.0, "suite took " + fmt_ms(suite_ms) + " (limit 10000 ms)");
  if (c.ok)
    c.note("7/7 hold on constructed and fixture; unpruned a3_3 = 42875; PG(2,2) fails a3_2; suite " +
           fmt_ms(suite_ms) + " < 10000 ms");
  return c.done();
}

Outcome criterion_spreads(const Geometry& g, const std::vector<Spread>& spreads) {
  Check c;
  double t0 = now_ms();
  std::vector<Spread> again = enumerate_spreads(g);
  double enum_ms = now_ms() - t0;
  c.require(again.size() == 56, "enumerated " + std::to_string(again.size()) + " spreads, want 56");
  c.require(enum_ms < 1000.0, "enumeration took " + fmt_ms(enum_ms) + " (limit 1000 ms)");

  t0 = now_ms();
  QuintupleScan scan = spread_oracle_quintuples(g);
  double oracle_ms = now_ms() - t0;
  c.require(scan.spreads == spreads, "quintuple oracle disagrees with enumeration");
  c.require(scan.scanned == 324632,
            "oracle scanned " + std::to_string(scan.scanned) + " quintuples, want 324632");
  c.require(oracle_ms < 30000.0, "oracle took " + fmt_ms(oracle_ms) + " (limit 30000 ms)");

  std::vector<int> per_line(static_cast<std::size_t>(g.num_lines()), 0);
  for (const Spread& s : spreads)
    for (int l : s.lines) ++per_line[static_cast<std::size_t>(l)];
  for (int l = 0; l < g.num_lines(); ++l)
    c.require(per_line[static_cast<std::size_t>(l)] == 8,
              "line " + std::to_string(l) + " lies in " +
                  std::to_string(per_line[static_cast<std::size_t>(l)]) + " spreads, want 8");

  if (c.ok)
    c.note("56 spreads; oracle exact over 324632 quintuples; 8 spreads per line; enumeration " +
           fmt_ms(enum_ms) + " < 1000 ms, oracle " + fmt_ms(oracle_ms) + " < 30000 ms");
  return c.done();
}

Outcome criterion_packings(const Geometry& g, const std::vector<Spread>& spreads,
                           const std::vector<Packing>& packings) {
  Check c;
  double t0 = now_ms();
  std::vector<Packing> again = enumerate_packings(g, spreads);
  std::vector<Packing> cliques = packing_oracle_cliques(g, spreads);
  double total_ms = now_ms() - t0;
  c.require(again.size() == 240, "enumerated " + std::to_string(again.size()) + " packings, want 240");
  for (const Packing& p : packings)
    c.require(p.spreads.size() == 7,
              "packing of size " + std::to_string(p.spreads.size()) + ", want 7");
  c.require(cliques == packings, "clique oracle disagrees with enumeration");

  std::vector<int> per_spread(spreads.size(), 0);
  for (const Packing& p : packings)
    for (int s : p.spreads) ++per_spread[static_cast<std::size_t>(s)];
  for (std::size_t s = 0; s < spreads.size(); ++s)
    c.require(per_spread[s] == 30, "spread " + std::to_string(s) + " lies in " +
                                       std::to_string(per_spread[s]) + " packings, want 30");

  c.require(total_ms < 30000.0, "took " + fmt_ms(total_ms) + " (limit 30000 ms)");
  if (c.ok)
    c.note("240 packings of 7 spreads; clique oracle exact; 30 packings per spread; " +
           fmt_ms(total_ms) + " < 30000 ms");
  return c.done();
}

Outcome criterion_classification(const Geometry& g, const std::vector<Spread>& spreads,
                                 const std::vector<Packing>& packings,
                                 const std::vector<Collineation>& group,
                                 const std::vector<Collineation>& gens) {
  Check c;
  double t0 = now_ms();
  std::uint64_t formula = pgl_order(3, 2);
  c.require(group.size() == 20160,
            "group closure has " + std::to_string(group.size()) + " elements, want 20160");
  c.require(formula == 20160, "order formula gives " + std::to_string(formula) + ", want 20160");

  OrbitIndex spread_orbits = OrbitIndex::over_spreads(g, spreads, gens);
  const OrbitReport& sr = spread_orbits.report();
  c.require(sr.orbit_count == 1 && sr.orbit_sizes == std::vector<int>{56},
            "spread classes are not one class of 56");

  OrbitIndex packing_orbits = OrbitIndex::over_packings(g, spreads, packings, gens);
  const OrbitReport& pr = packing_orbits.report();
  c.require(pr.orbit_count == 2, "packing classes: " + std::to_string(pr.orbit_count) + ", want 2");
  int total = 0;
  for (int s : pr.orbit_sizes) {
    total += s;
    c.require(s > 0 && 20160 % s == 0,
              "packing class size " + std::to_string(s) + " does not divide 20160");
  }
  c.require(total == 240, "packing class sizes sum to " + std::to_string(total) + ", want 240");
  double ms = now_ms() - t0;
  c.require(ms < 120000.0, "took " + fmt_ms(ms) + " (limit 120000 ms)");
  if (c.ok) {
    std::string sizes;
    for (std::size_t i = 0; i < pr.orbit_sizes.size(); ++i)
      sizes += (i ? ", " : "") + std::to_string(pr.orbit_sizes[i]);
    c.note("group order 20160 matches the formula; spread classes [56]; packing classes [" +
           sizes + "]; " + fmt_ms(ms) + " < 120000 ms");
  }
  return c.done();
}

Outcome criterion_witness_chain(const Geometry& g, const std::vector<Spread>& spreads,
                                const std::vector<Collineation>& gens) {
  Check c;
  double t0 = now_ms();
  OrbitIndex idx = OrbitIndex::over_spreads(g, spreads, gens);
  int verified = 0;
  for (int n = 0; n < 56; ++n) {
    int to = (n + 1) % 56;
    auto w = idx.witness(n, to);
    if (!w) {
      c.require(false, "no witness for " + std::to_string(n) + " -> " + std::to_string(to));
      continue;
    }
    Spread image = apply(*w, spreads[static_cast<std::size_t>(n)], g);
    if (verify_collineation(g, *w) && image == spreads[static_cast<std::size_t>(to)]) ++verified;
  }
  double ms = now_ms() - t0;
  c.require(verified == 56, std::to_string(verified) + "/56 chain witnesses verified");
  c.require(ms < 60000.0, "took " + fmt_ms(ms) + " (limit 60000 ms)");
  if (c.ok) c.note("56/56 cyclic witnesses verified; " + fmt_ms(ms) + " < 60000 ms");
  return c.done();
}

Outcome criterion_bridging(const Geometry& constructed, const Geometry& fixture) {
  Check c;
  std::optional<Collineation> iso = find_isomorphism(constructed, fixture);
  c.require(iso.has_value(), "no isomorphism found between constructed PG(3,2) and the fixture");

  std::vector<Spread> s1 = enumerate_spreads(constructed);
  std::vector<Spread> s2 = enumerate_spreads(fixture);
  c.require(s1.size() == s2.size() && s1.size() == 56,
            "spread counts disagree: " + std::to_string(s1.size()) + " vs " +
                std::to_string(s2.size()));
  std::vector<Packing> p1 = enumerate_packings(constructed, s1);
  std::vector<Packing> p2 = enumerate_packings(fixture, s2);
  c.require(p1.size() == p2.size() && p1.size() == 240,
            "packing counts disagree: " + std::to_string(p1.size()) + " vs " +
                std::to_string(p2.size()));
  if (c.ok) c.note("isomorphism found; spreads 56 = 56; packings 240 = 240 across labelings");
  return c.done();
}

Outcome criterion_round_trips(const Geometry& fixture, const std::string& fixture_text,
                              const std::vector<Spread>& spreads) {
  Check c;
  c.require(emit_incidence_txt(fixture) == fixture_text,
            "emit of the loaded fixture is not byte-identical to the file");
  Geometry reloaded = Geometry::load_incidence(emit_incidence_txt(fixture));
  c.require(emit_incidence_txt(reloaded) == fixture_text, "load-emit round trip drifts");

  EmissionConfig cfg;
  cfg.format = EmitFormat::kCoq;
  std::string src = emit_proof_source(fixture, spreads, {}, cfg);
  std::vector<std::string> toks = tokens_of(src);
  c.require(contains_token_run(toks,
                               "Inductive Point :=\n| P0 | P1 | P2 | P3 | P4 | P5 | P6 | P7 | P8 "
                               "| P9\n| P10 | P11 | P12 | P13 | P14 ."),
            "Point inductive differs from the pinned fragment");
  c.require(contains_token_run(toks, "| L0 => match p with P0 | P1 | P2 => true | _ => false end"),
            "L0 clause differs from the pinned fragment");
  c.require(contains_token_run(toks, "| L4 => match p with P0 | P9 | P10 => true | _ => false end"),
            "L4 clause differs from the normalized pinned fragment");
  c.require(contains_token_run(toks, "Definition S0 := [ L0; L19; L24; L28; L33 ]."),
            "S0 differs from the pinned fragment");
  c.require(contains_token_run(toks, "Definition S1 := [ L0; L19; L26; L29; L32 ]."),
            "S1 differs from the pinned fragment");
  c.require(validate_proof_source(src).empty(), "emitted proof source fails validation");
  if (c.ok)
    c.note("incidence text identity holds; P0-P14 / L0 / L4 / S0 / S1 fragments token-exact");
  return c.done();
}

Outcome criterion_determinism(const Geometry& g) {
  Check c;
  auto artifacts = [&](int jobs) {
    CheckOptions ax;
    ax.jobs = jobs;
    std::vector<AxiomReport> reports = check_all(g, ax);
    EnumOptions en;
    en.jobs = jobs;
    std::vector<Spread> spreads = enumerate_spreads(g, en);
    std::vector<Packing> packings = enumerate_packings(g, spreads, en);
    QuintupleScan scan = spread_oracle_quintuples(g, en);
    EmissionConfig cfg;
    nlohmann::ordered_json doc = emit_json(g, reports, spreads, packings, cfg);
    cfg.format = EmitFormat::kCoq;
    SkolemTables sk = skolem_tables(g);
    std::string coq = emit_proof_source(g, spreads, packings, cfg, &sk);
    OrbitIndex orbits = OrbitIndex::over_spreads(g, spreads, collineation_generators(g));
    nlohmann::ordered_json cls = orbit_json(orbits.report());
    return std::tuple{doc.dump(2), coq, cls.dump(2), scan.scanned, spreads, packings};
  };
  auto a1 = artifacts(1);
  auto a8 = artifacts(8);
  c.require(std::get<0>(a1) == std::get<0>(a8), "combined JSON differs between 1 and 8 workers");
  c.require(std::get<1>(a1) == std::get<1>(a8), "proof source differs between 1 and 8 workers");
  c.require(std::get<2>(a1) == std::get<2>(a8), "class report differs between 1 and 8 workers");
  c.require(std::get<3>(a1) == std::get<3>(a8), "oracle scan count differs between 1 and 8 workers");
  c.require(std::get<4>(a1) == std::get<4>(a8), "spread list differs between 1 and 8 workers");
  c.require(std::get<5>(a1) == std::get<5>(a8), "packing list differs between 1 and 8 workers");
  if (c.ok) c.note("JSON, proof source, class report, and enumerations bit-identical for 1 vs 8 workers");
  return c.done();
}

}  // namespace

int main() {
  Geometry constructed = Geometry::build_pg(3, 2);
  std::string fixture_text = slurp(PGKIT_FIXTURE_PATH);
  Geometry fixture = Geometry::load_incidence(fixture_text, "pg32.txt");
  std::vector<Spread> spreads = enumerate_spreads(constructed);
  std::vector<Packing> packings = enumerate_packings(constructed, spreads);
  std::vector<Collineation> group = collineation_group(constructed);
  std::vector<Collineation> gens = collineation_generators(constructed);
  std::vector<Spread> fixture_spreads = enumerate_spreads(fixture);

  struct Item {
    int id;
    std::string title;
    std::function<Outcome()> fn;
  };
  const std::vector<Item> items = {
      {1, "counts table", [&] { return criterion_counts(); }},
      {2, "axiom suite", [&] { return criterion_axioms(constructed, fixture); }},
      {3, "spread enumeration", [&] { return criterion_spreads(constructed, spreads); }},
      {4, "packing enumeration",
       [&] { return criterion_packings(constructed, spreads, packings); }},
      {5, "classification",
       [&] { return criterion_classification(constructed, spreads, packings, group, gens); }},
      {6, "witness chain", [&] { return criterion_witness_chain(constructed, spreads, gens); }},
      {7, "bridging", [&] { return criterion_bridging(constructed, fixture); }},
      {8, "round trips",
       [&] { return criterion_round_trips(fixture, fixture_text, fixture_spreads); }},
      {9, "determinism", [&] { return criterion_determinism(constructed); }},
  };

  bool all_ok = true;
  for (const Item& it : items) {
    Outcome o;
    try {
      o = it.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all_ok = all_ok && o.ok;
    std::printf("[%s] criterion %d: %s (%s)\n", o.ok ? "PASS" : "FAIL", it.id, it.title.c_str(),
                o.detail.c_str());
  }
  return all_ok ? 0 : 1;
}

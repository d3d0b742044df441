// Timing comparison: serial reference kernels vs the optimized production
// kernels at 1 and N workers, with result-equality checks. Usage:
//   pgkit_bench [--jobs N]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "pgkit/axioms.hpp"
#include "pgkit/enumeration.hpp"
#include "pgkit/geometry.hpp"

using namespace pgkit;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <class F>
auto timed(F&& f, double& ms) {
  double t0 = now_ms();
  auto r = f();
  ms = now_ms() - t0;
  return r;
}

bool same_report(const AxiomReport& a, const AxiomReport& b) {
  return a.id == b.id && a.holds == b.holds && a.cases_checked == b.cases_checked &&
         a.counterexample == b.counterexample;
}

void print_row(const char* task, const char* geom, double ref_ms, double serial_ms,
               double parallel_ms, bool agree) {
  char ref[24];
  if (ref_ms < 0)
    std::snprintf(ref, sizeof ref, "%12s", "-");
  else
    std::snprintf(ref, sizeof ref, "%9.1f ms", ref_ms);
  std::printf("%-22s %-8s %s %9.1f ms %9.1f ms %7.2fx   %s\n", task, geom, ref, serial_ms,
              parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
              agree ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 2) jobs = 2;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) {
      jobs = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--jobs N]\n", argv[0]);
      return 2;
    }
  }
  std::printf("workers for the parallel column: %d\n\n", jobs);
  std::printf("%-22s %-8s %12s %12s %12s %9s   %s\n", "task", "space", "reference", "1 worker",
              "N workers", "speedup", "agree");

  bool all_agree = true;

  struct AxiomCase {
    const char* task;
    const char* geom;
    int n, q;
    AxiomId id;
    bool run_reference;
  };
  const AxiomCase axiom_cases[] = {
      {"a2_sym (pruned)", "PG(3,2)", 3, 2, AxiomId::kA2Sym, true},
      {"a3_3 (pruned)", "PG(3,2)", 3, 2, AxiomId::kA33, true},
      {"a2_sym (pruned)", "PG(3,3)", 3, 3, AxiomId::kA2Sym, true},
      {"a3_3 (pruned)", "PG(3,3)", 3, 3, AxiomId::kA33, true},
      {"a2_sym (pruned)", "PG(3,4)", 3, 4, AxiomId::kA2Sym, false},
      {"a3_3 (pruned)", "PG(3,4)", 3, 4, AxiomId::kA33, false},
  };
  for (const AxiomCase& cs : axiom_cases) {
    Geometry g = Geometry::build_pg(cs.n, cs.q);
    double ref_ms = -1.0, serial_ms = 0.0, parallel_ms = 0.0;
    CheckOptions opt;
    AxiomReport ref_report;
    if (cs.run_reference) {
      opt.reference = true;
      ref_report = timed([&] { return check_axiom(g, cs.id, opt); }, ref_ms);
    }
    opt.reference = false;
    opt.jobs = 1;
    AxiomReport serial = timed([&] { return check_axiom(g, cs.id, opt); }, serial_ms);
    opt.jobs = jobs;
    AxiomReport parallel = timed([&] { return check_axiom(g, cs.id, opt); }, parallel_ms);
    bool agree = same_report(serial, parallel) && (!cs.run_reference || same_report(ref_report, serial));
    all_agree = all_agree && agree;
    print_row(cs.task, cs.geom, ref_ms, serial_ms, parallel_ms, agree);
  }

  {
    Geometry g = Geometry::build_pg(3, 2);
    double serial_ms = 0.0, parallel_ms = 0.0, oracle1_ms = 0.0, oracleN_ms = 0.0;
    EnumOptions e1, eN;
    e1.jobs = 1;
    eN.jobs = jobs;
    std::vector<Spread> s1 = timed([&] { return enumerate_spreads(g, e1); }, serial_ms);
    std::vector<Spread> sN = timed([&] { return enumerate_spreads(g, eN); }, parallel_ms);
    bool agree = s1 == sN;
    all_agree = all_agree && agree;
    print_row("spread enumeration", "PG(3,2)", -1.0, serial_ms, parallel_ms, agree);

    QuintupleScan q1 = timed([&] { return spread_oracle_quintuples(g, e1); }, oracle1_ms);
    QuintupleScan qN = timed([&] { return spread_oracle_quintuples(g, eN); }, oracleN_ms);
    agree = q1.spreads == qN.spreads && q1.scanned == qN.scanned && q1.spreads == s1;
    all_agree = all_agree && agree;
    print_row("quintuple oracle", "PG(3,2)", -1.0, oracle1_ms, oracleN_ms, agree);

    double p1_ms = 0.0, pN_ms = 0.0;
    std::vector<Packing> p1 = timed([&] { return enumerate_packings(g, s1, e1); }, p1_ms);
    std::vector<Packing> pN = timed([&] { return enumerate_packings(g, s1, eN); }, pN_ms);
    agree = p1 == pN;
    all_agree = all_agree && agree;
    print_row("packing enumeration", "PG(3,2)", -1.0, p1_ms, pN_ms, agree);
  }

  std::printf("\nresult agreement across implementations: %s\n", all_agree ? "exact" : "MISMATCH");
  return all_agree ? 0 : 1;
}

// Benchmark of the assignment-scan kernels: serial reference vs OpenMP.
// Scans the full assignment space of every maximal subgroup of each chosen
// group, checks that both kernels report identical counts, and prints the
// timings side by side.
//
// Usage: bench_search [repeats]

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "selfsim/builders.hpp"
#include "selfsim/endo.hpp"
#include "selfsim/pgroup.hpp"

using namespace selfsim;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
      .count();
}

struct BenchResult {
  std::uint64_t space = 0;
  std::uint64_t homs = 0;
  std::uint64_t simple = 0;
  double ms = 0;
};

template <typename Scan>
BenchResult run(const Group& g, const std::vector<Subgroup>& maxsubs,
                int repeats, Scan scan) {
  BenchResult r;
  auto t0 = clock_type::now();
  for (int rep = 0; rep < repeats; ++rep) {
    r.space = r.homs = r.simple = 0;
    for (const Subgroup& h : maxsubs) {
      std::vector<elem_t> gens = minimal_generating_set(h);
      if (gens.empty()) continue;
      auto cands = image_candidates(g, gens);
      AssignmentScan s = scan(h, gens, cands);
      r.space += s.space;
      r.homs += s.homomorphisms;
      r.simple += s.simple;
    }
  }
  r.ms = ms_since(t0) / repeats;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  int threads = 0;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("assignment-scan benchmark, %d repeat(s), %d thread(s)\n",
              repeats, threads ? threads : 1);
  std::printf("%-10s %12s %10s %8s %12s %12s %8s\n", "group", "space", "homs",
              "simple", "serial ms", "parallel ms", "speedup");

  for (const char* name : {"C2^4", "D16", "He27", "M27", "C3wrC3"}) {
    Group g = make_builtin(name);
    std::vector<Subgroup> maxsubs = maximal_subgroups(g);

    BenchResult serial =
        run(g, maxsubs, repeats, [&](const Subgroup& h, const auto& gens,
                                     const auto& cands) {
          return scan_assignments_serial(h, g, gens, cands);
        });
    BenchResult parallel =
        run(g, maxsubs, repeats, [&](const Subgroup& h, const auto& gens,
                                     const auto& cands) {
          return scan_assignments_parallel(h, g, gens, cands, 0);
        });

    if (serial.homs != parallel.homs || serial.simple != parallel.simple) {
      std::fprintf(stderr, "MISMATCH on %s: serial %llu/%llu parallel %llu/%llu\n",
                   name, (unsigned long long)serial.homs,
                   (unsigned long long)serial.simple,
                   (unsigned long long)parallel.homs,
                   (unsigned long long)parallel.simple);
      return 1;
    }
    std::printf("%-10s %12llu %10llu %8llu %12.2f %12.2f %7.2fx\n", name,
                (unsigned long long)serial.space,
                (unsigned long long)serial.homs,
                (unsigned long long)serial.simple, serial.ms, parallel.ms,
                parallel.ms > 0 ? serial.ms / parallel.ms : 0.0);
  }
  return 0;
}

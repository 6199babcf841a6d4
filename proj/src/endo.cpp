#include "selfsim/endo.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "selfsim/pgroup.hpp"

namespace selfsim {

namespace {

std::uint64_t u64_pow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) {
    if (b != 0 && r > UINT64_MAX / b)
      throw std::overflow_error("assignment space overflows 64 bits");
    r *= b;
  }
  return r;
}

// Scratch buffers reused across graph tests in one thread.
struct HomScratch {
  std::vector<elem_t> img;    // by domain member position; -1 = unset
  std::vector<elem_t> queue;  // member positions with known image
};

// Core of the graph-subgroup test, writing images into scratch. Returns
// false on the first conflicting pair.
bool graph_test(const Subgroup& h, const Group& codomain,
                std::span<const elem_t> gens, std::span<const elem_t> images,
                HomScratch& s) {
  const Group& g = *h.parent;
  const std::size_t m = h.members.size();
  s.img.assign(m, -1);
  s.queue.clear();
  s.img[0] = kIdentity;
  s.queue.push_back(0);
  for (std::size_t at = 0; at < s.queue.size(); ++at) {
    const int pos = s.queue[at];
    const elem_t x = h.members[pos];
    const elem_t fx = s.img[pos];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const elem_t z = g.mul(x, gens[i]);
      const elem_t fz = codomain.mul(fx, images[i]);
      const int zpos = h.position(z);
      if (s.img[zpos] < 0) {
        s.img[zpos] = fz;
        s.queue.push_back(zpos);
      } else if (s.img[zpos] != fz) {
        return false;
      }
    }
  }
  // gens generate H, so the walk reached every member
  return s.queue.size() == m;
}

}  // namespace

std::optional<Homomorphism> assignment_is_homomorphism(
    const Subgroup& h, const Group& codomain, std::span<const elem_t> gens,
    std::span<const elem_t> images) {
  assert(gens.size() == images.size());
  Subgroup closed = subgroup_generated(*h.parent, gens);
  if (closed.members != h.members)
    throw GeneratorsDontGenerate("assignment_is_homomorphism: generators do "
                                 "not generate the domain");
  HomScratch scratch;
  if (!graph_test(h, codomain, gens, images, scratch)) return std::nullopt;
  return Homomorphism{h, &codomain, std::move(scratch.img)};
}

std::vector<std::vector<elem_t>> image_candidates(
    const Group& g, const std::vector<elem_t>& gens) {
  std::vector<int> order_of(g.order);
  for (elem_t x = 0; x < g.order; ++x) order_of[x] = g.element_order(x);
  std::vector<std::vector<elem_t>> cands(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const int go = g.element_order(gens[i]);  // generator order in the parent
    for (elem_t y = 0; y < g.order; ++y)
      if (go % order_of[y] == 0) cands[i].push_back(y);
  }
  return cands;
}

std::vector<elem_t> decode_assignment(
    const std::vector<std::vector<elem_t>>& cands, std::uint64_t index) {
  std::vector<elem_t> images(cands.size());
  for (std::size_t i = cands.size(); i-- > 0;) {
    images[i] = cands[i][index % cands[i].size()];
    index /= cands[i].size();
  }
  return images;
}

void for_each_homomorphism(const Subgroup& h, const Group& g,
                           const std::function<void(const Homomorphism&)>& fn) {
  assert(h.parent == &g);
  std::vector<elem_t> gens = minimal_generating_set(h);
  if (gens.empty()) {
    fn(Homomorphism{h, &g, {kIdentity}});
    return;
  }
  auto cands = image_candidates(g, gens);
  std::uint64_t space = 1;
  for (const auto& c : cands) space *= c.size();
  HomScratch scratch;
  std::vector<elem_t> images(gens.size());
  for (std::uint64_t idx = 0; idx < space; ++idx) {
    images = decode_assignment(cands, idx);
    if (graph_test(h, g, gens, images, scratch))
      fn(Homomorphism{h, &g, scratch.img});
  }
}

std::vector<Homomorphism> homomorphisms(const Subgroup& h, const Group& g) {
  std::vector<Homomorphism> out;
  for_each_homomorphism(h, g, [&](const Homomorphism& f) { out.push_back(f); });
  return out;
}

Subgroup phi_core(const Homomorphism& phi) {
  const Group& g = *phi.codomain;
  const Subgroup& h = phi.domain;
  assert(h.parent == &g);
  if (!is_normal(g, h))
    throw NotNormal("phi_core: domain is not normal in the codomain");
  Subgroup k = h;
  for (;;) {
    // K n phi^-1(K)
    std::vector<elem_t> cut;
    for (elem_t x : k.members)
      if (k.contains(phi.apply(x))) cut.push_back(x);
    Subgroup next = normal_core(g, Subgroup{&g, std::move(cut)});
    if (next.members == k.members) return k;
    k = std::move(next);
    if (k.is_trivial()) return k;
  }
}

bool is_simple(const Homomorphism& phi) { return phi_core(phi).is_trivial(); }

namespace {

void check_deadline(const Deadline& dl) {
  if (dl && std::chrono::steady_clock::now() > *dl)
    throw BudgetExceeded("search budget exhausted");
}

// Shared per-tuple work: graph test, then core computation on success.
struct TupleProbe {
  const Subgroup& h;
  const Group& g;
  std::span<const elem_t> gens;

  // 0 = not a homomorphism, 1 = homomorphism, 2 = simple
  int probe(std::span<const elem_t> images, HomScratch& scratch) const {
    if (!graph_test(h, g, gens, images, scratch)) return 0;
    Homomorphism f{h, &g, scratch.img};
    return is_simple(f) ? 2 : 1;
  }
};

}  // namespace

AssignmentScan scan_assignments_serial(
    const Subgroup& h, const Group& g, const std::vector<elem_t>& gens,
    const std::vector<std::vector<elem_t>>& cands, const Deadline& deadline) {
  AssignmentScan r;
  r.space = 1;
  for (const auto& c : cands) r.space *= c.size();
  r.full_space = u64_pow(g.order, gens.size());
  TupleProbe probe{h, g, gens};
  HomScratch scratch;
  for (std::uint64_t idx = 0; idx < r.space; ++idx) {
    if ((idx & 0xfff) == 0) check_deadline(deadline);
    std::vector<elem_t> images = decode_assignment(cands, idx);
    int what = probe.probe(images, scratch);
    if (what >= 1) ++r.homomorphisms;
    if (what == 2) {
      ++r.simple;
      if (!r.first_simple) r.first_simple = idx;
    }
  }
  return r;
}

AssignmentScan scan_assignments_parallel(
    const Subgroup& h, const Group& g, const std::vector<elem_t>& gens,
    const std::vector<std::vector<elem_t>>& cands, int threads,
    const Deadline& deadline) {
#ifndef _OPENMP
  (void)threads;
  return scan_assignments_serial(h, g, gens, cands, deadline);
#else
  AssignmentScan r;
  r.space = 1;
  for (const auto& c : cands) r.space *= c.size();
  r.full_space = u64_pow(g.order, gens.size());
  TupleProbe probe{h, g, gens};

  const std::int64_t space = static_cast<std::int64_t>(r.space);
  std::uint64_t homs = 0, simple = 0;
  std::uint64_t first = UINT64_MAX;
  std::atomic<bool> expired{false};

#pragma omp parallel num_threads(threads > 0 ? threads : omp_get_max_threads()) \
    reduction(+ : homs, simple) reduction(min : first)
  {
    HomScratch scratch;
#pragma omp for schedule(dynamic, 512)
    for (std::int64_t idx = 0; idx < space; ++idx) {
      if (expired.load(std::memory_order_relaxed)) continue;
      if ((idx & 0xfff) == 0 && deadline &&
          std::chrono::steady_clock::now() > *deadline)
        expired.store(true, std::memory_order_relaxed);
      std::vector<elem_t> images =
          decode_assignment(cands, static_cast<std::uint64_t>(idx));
      int what = probe.probe(images, scratch);
      if (what >= 1) ++homs;
      if (what == 2) {
        ++simple;
        first = std::min(first, static_cast<std::uint64_t>(idx));
      }
    }
  }
  if (expired.load()) throw BudgetExceeded("search budget exhausted");
  r.homomorphisms = homs;
  r.simple = simple;
  if (first != UINT64_MAX) r.first_simple = first;
  return r;
#endif
}

DecisionReport decide_self_similar(const Group& g, const DecideOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  Deadline deadline;
  if (opts.budget_secs > 0)
    deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(opts.budget_secs));

  DecisionReport report;
  report.name = g.name;
  report.order = g.order;
  if (g.order == 1) {
    // the trivial group acts (trivially and faithfully) on any tree
    report.self_similar = true;
    return report;
  }
  report.p = prime_of(g);

  std::vector<Subgroup> maxsubs = maximal_subgroups(g);
  for (const Subgroup& h : maxsubs) {
    check_deadline(deadline);
    ++report.stats.maximal_subgroups_examined;
    std::vector<elem_t> gens = minimal_generating_set(h);
    AssignmentScan scan;
    if (gens.empty()) {
      // trivial maximal subgroup (|G| = p): the unique homomorphism is simple
      scan.space = 1;
      scan.full_space = 1;
      scan.homomorphisms = 1;
      scan.simple = 1;
      scan.first_simple = 0;
    } else {
      auto cands = image_candidates(g, gens);
      scan = (opts.threads == 1)
                 ? scan_assignments_serial(h, g, gens, cands, deadline)
                 : scan_assignments_parallel(h, g, gens, cands, opts.threads,
                                             deadline);
    }
    report.stats.assignments_tried += scan.space;
    report.stats.assignments_pruned += scan.full_space - scan.space;
    report.stats.homomorphisms_found += scan.homomorphisms;
    report.stats.simple_found += scan.simple;
    if (scan.first_simple) {
      std::vector<elem_t> images =
          gens.empty() ? std::vector<elem_t>{}
                       : decode_assignment(image_candidates(g, gens),
                                           *scan.first_simple);
      auto hom = assignment_is_homomorphism(h, g, gens, images);
      if (!hom)
        throw LemmaViolation("decide_self_similar: witness tuple failed to "
                             "rebuild on " + g.name);
      Subgroup core = phi_core(*hom);
      if (!core.is_trivial())
        throw LemmaViolation("decide_self_similar: rebuilt witness is not "
                             "simple on " + g.name);
      report.witness = VirtualEndomorphism{std::move(*hom), report.p,
                                           std::move(core)};
      report.self_similar = true;
      break;
    }
  }
  report.elapsed_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

bool sunic_criterion(const Group& g) {
  prime_of(g);
  for (const Subgroup& h : maximal_subgroups(g))
    if (is_elementary_abelian(h) && splits_over(g, h).has_value()) return true;
  return false;
}

bool maximal_class_criterion(const Group& g) {
  SeriesReport data = maximal_class_data(g);
  return is_elementary_abelian(*data.g1) &&
         splits_over(g, *data.g1).has_value();
}

MaxScanReport scan_maximal_subgroups_excluding_g1(const Group& g,
                                                  const DecideOptions& opts) {
  SeriesReport data = maximal_class_data(g);
  MaxScanReport out;
  std::vector<Subgroup> maxsubs = maximal_subgroups(g);
  for (std::size_t i = 0; i < maxsubs.size(); ++i) {
    if (maxsubs[i].members == data.g1->members) continue;
    std::vector<elem_t> gens = minimal_generating_set(maxsubs[i]);
    auto cands = image_candidates(g, gens);
    AssignmentScan scan =
        (opts.threads == 1)
            ? scan_assignments_serial(maxsubs[i], g, gens, cands)
            : scan_assignments_parallel(maxsubs[i], g, gens, cands,
                                        opts.threads);
    out.rows.push_back(MaxScanRow{i, scan.homomorphisms, scan.simple});
    out.total_simple += scan.simple;
  }
  return out;
}

}  // namespace selfsim

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/group.hpp"

namespace selfsim {

// A homomorphism from a subgroup into a codomain group, stored as the image
// of every domain member (indexed by member position).
struct Homomorphism {
  Subgroup domain;
  const Group* codomain = nullptr;
  std::vector<elem_t> images;

  elem_t apply(elem_t x) const { return images[domain.position(x)]; }
};

struct VirtualEndomorphism {
  Homomorphism hom;  // codomain == domain parent
  int index = 0;     // |G : H|
  Subgroup phi_core;
};

struct SearchStats {
  std::uint64_t maximal_subgroups_examined = 0;
  std::uint64_t assignments_tried = 0;
  std::uint64_t assignments_pruned = 0;
  std::uint64_t homomorphisms_found = 0;
  std::uint64_t simple_found = 0;
};

struct DecisionReport {
  std::string name;
  elem_t order = 1;
  int p = 0;  // 0 for the trivial group
  bool self_similar = false;
  std::optional<VirtualEndomorphism> witness;
  SearchStats stats;
  double elapsed_secs = 0.0;
};

struct DecideOptions {
  int threads = 0;          // 0 = library default; 1 = serial reference path
  double budget_secs = 0.0; // 0 = unlimited
};

// Graph-subgroup test: forms <(gens[i], images[i])> inside H x codomain and
// accepts iff it is the graph of a map, i.e. has exactly |H| elements.
std::optional<Homomorphism> assignment_is_homomorphism(
    const Subgroup& h, const Group& codomain, std::span<const elem_t> gens,
    std::span<const elem_t> images);

// Every homomorphism H -> G exactly once, enumerated over image tuples of a
// fixed minimal generating set in lexicographic element-index order, with
// order-divisibility pruning.
void for_each_homomorphism(const Subgroup& h, const Group& g,
                           const std::function<void(const Homomorphism&)>& fn);
std::vector<Homomorphism> homomorphisms(const Subgroup& h, const Group& g);

// Largest subgroup of the domain that is normal in the codomain and
// phi-invariant, by the fixpoint iteration
// K_{i+1} = normal_core(G, K_i n phi^-1(K_i)) starting from K_0 = H.
Subgroup phi_core(const Homomorphism& phi);
bool is_simple(const Homomorphism& phi);

// Result of scanning one maximal subgroup's full assignment space.
struct AssignmentScan {
  std::uint64_t space = 0;  // product of candidate list sizes
  std::uint64_t full_space = 0;  // |G|^d before divisibility pruning
  std::uint64_t homomorphisms = 0;
  std::uint64_t simple = 0;
  std::optional<std::uint64_t> first_simple;  // flattened tuple index
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

// Serial reference kernel and the OpenMP kernel. Both return identical
// results; the parallel kernel partitions the flattened tuple space.
AssignmentScan scan_assignments_serial(const Subgroup& h, const Group& g,
                                       const std::vector<elem_t>& gens,
                                       const std::vector<std::vector<elem_t>>& cands,
                                       const Deadline& deadline = {});
AssignmentScan scan_assignments_parallel(const Subgroup& h, const Group& g,
                                         const std::vector<elem_t>& gens,
                                         const std::vector<std::vector<elem_t>>& cands,
                                         int threads,
                                         const Deadline& deadline = {});

// Candidate images for each generator: elements whose order divides the
// generator's order, ascending.
std::vector<std::vector<elem_t>> image_candidates(const Group& g,
                                                  const std::vector<elem_t>& gens);
// Images of a flattened tuple index under the lexicographic numbering.
std::vector<elem_t> decode_assignment(const std::vector<std::vector<elem_t>>& cands,
                                      std::uint64_t index);

// Exhaustive decision: true iff some maximal subgroup admits a simple
// virtual endomorphism into G. Deterministic first witness.
DecisionReport decide_self_similar(const Group& g, const DecideOptions& opts = {});

// True iff G has an elementary abelian maximal subgroup with a complement.
bool sunic_criterion(const Group& g);
// Maximal class, order >= p^4: G_1 elementary abelian and complemented.
bool maximal_class_criterion(const Group& g);

// Scan of every maximal subgroup other than G_1 of a maximal class group,
// reporting how many simple homomorphisms each admits (expected: none).
struct MaxScanRow {
  std::size_t subgroup_index = 0;  // position in maximal_subgroups order
  std::uint64_t homomorphisms = 0;
  std::uint64_t simple = 0;
};
struct MaxScanReport {
  std::vector<MaxScanRow> rows;
  std::uint64_t total_simple = 0;
};
MaxScanReport scan_maximal_subgroups_excluding_g1(const Group& g,
                                                  const DecideOptions& opts = {});

}  // namespace selfsim

#pragma once

#include <string>
#include <vector>

#include "selfsim/endo.hpp"
#include "selfsim/group.hpp"

namespace selfsim {

// One automaton state: the permutation induced on the first tree level and
// the section state at each letter.
struct AutomatonState {
  std::vector<int> root_perm;    // image list on 0..p-1
  std::vector<elem_t> sections;  // state indices
};

// Wreath recursion of the tree action induced by a simple virtual
// endomorphism phi: H -> G with |G:H| = p. States are all elements of G.
// Letters correspond to the right cosets H t_i with the deterministic
// transversal (identity first, then the least member of each coset, cosets
// ordered by least member). The defining relation is
//   t_i * g = h_i * t_{sigma_g(i)},   sections[i] = phi(h_i),
// so level permutations compose the same way group elements do (apply the
// left factor first).
struct WreathRecursion {
  int alphabet_size = 0;
  const Group* group = nullptr;
  std::vector<elem_t> transversal;
  std::vector<AutomatonState> states;
};

struct Portrait {
  std::vector<int> root_perm;
  std::vector<Portrait> children;  // empty below the cutoff depth
};

inline constexpr long long kMaxLevelLeaves = 1000000;
inline constexpr int kMaxPortraitDepth = 8;

// Builds the automaton. Refuses non-simple endomorphisms unless
// allow_non_simple is set (exploratory, unfaithful actions).
WreathRecursion wreath_recursion(const Group& g, const VirtualEndomorphism& ve,
                                 bool allow_non_simple = false);

elem_t section(const WreathRecursion& a, elem_t state,
               std::span<const int> word);
std::vector<int> act(const WreathRecursion& a, elem_t state,
                     std::span<const int> word);

// Permutation induced on level n; leaves are indexed big-endian (first
// letter most significant).
std::vector<long long> level_permutation(const WreathRecursion& a,
                                         elem_t state, int level);

// Kernels of the level actions, descending until stable.
std::vector<Subgroup> kernel_chain(const WreathRecursion& a);
// Least level with trivial kernel; throws NotFaithful if the chain stalls.
int faithful_depth(const WreathRecursion& a);

bool is_level_transitive(const WreathRecursion& a, int level);

Portrait portrait(const WreathRecursion& a, elem_t state, int depth);

// Document form of an automaton (field names and serialization are fixed in
// docs/formats.md; serialize/parse round-trips are byte-identical).
struct AutomatonDocument {
  int alphabet_size = 0;
  std::vector<elem_t> transversal;
  std::vector<AutomatonState> states;
  std::vector<std::pair<std::string, elem_t>> generator_states;
};

AutomatonDocument to_document(const WreathRecursion& a);
std::string serialize_automaton(const AutomatonDocument& doc);
AutomatonDocument parse_automaton(const std::string& text);

}  // namespace selfsim

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "selfsim/errors.hpp"

namespace selfsim {

using elem_t = std::int32_t;

inline constexpr elem_t kIdentity = 0;

struct ClosureCaps {
  std::size_t max_order = 65536;
};

struct EnumerationCaps {
  elem_t max_group_order = 512;
  std::size_t max_subgroups = 100000;
};

// A finite group held as a dense multiplication table. Element 0 is always
// the identity; remaining elements are numbered by breadth-first closure
// from the generating permutations (identity first, then products in
// generation order), which makes tables and everything derived from them
// reproducible. Permutations compose left-to-right: (x*y) means "apply x,
// then y", and element_perms follows the same rule.
//
// A Group is immutable after construction and safe to share across threads.
struct Group {
  std::string name;
  int degree = 1;
  elem_t order = 1;
  std::vector<elem_t> table;  // row-major, table[x*order + y] = x*y
  std::vector<elem_t> inv;
  std::vector<elem_t> generators;  // element indices
  std::vector<std::vector<elem_t>> element_perms;  // image lists on 0..degree-1
  std::optional<int> prime;  // set iff |G| is a power of a prime (order > 1)

  elem_t mul(elem_t x, elem_t y) const {
    return table[static_cast<std::size_t>(x) * order + y];
  }
  elem_t inverse(elem_t x) const { return inv[x]; }

  // x^g = g^-1 * x * g
  elem_t conjugate(elem_t x, elem_t g) const {
    return mul(mul(inverse(g), x), g);
  }
  // [x,y] = x^-1 * y^-1 * x * y
  elem_t commutator(elem_t x, elem_t y) const {
    return mul(mul(inverse(x), inverse(y)), mul(x, y));
  }
  elem_t power(elem_t x, long long e) const;
  int element_order(elem_t x) const;
  bool is_abelian() const;
  bool is_pgroup() const { return order == 1 || prime.has_value(); }
};

// A subgroup is a sorted list of member indices of its parent group,
// always containing the identity. The parent must outlive the subgroup.
struct Subgroup {
  const Group* parent = nullptr;
  std::vector<elem_t> members;

  elem_t order() const { return static_cast<elem_t>(members.size()); }
  bool contains(elem_t x) const;
  // position of x in the member list; x must be a member
  int position(elem_t x) const;
  std::vector<char> mask() const;
  bool is_trivial() const { return members.size() == 1; }
  bool is_whole_group() const {
    return parent && order() == parent->order;
  }
};

struct SeriesReport {
  std::vector<Subgroup> lower_central;  // gamma_1 = G, ..., down to trivial
  std::vector<Subgroup> upper_central;  // Z_0 = 1, ..., up to G (when filled)
  int nilpotency_class = -1;            // -1 when the series does not reach 1
  int coclass = -1;                     // filled for p-groups only
  // Filled by maximal_class_data only:
  std::vector<Subgroup> two_step_centralizers;  // C_G(G_i/G_{i+2}), i = 2..n-2
  std::optional<Subgroup> g1;                   // C_G(G_2/G_4)
  std::optional<int> degree_of_commutativity;
};

struct QuotientResult {
  Group group;
  std::vector<elem_t> projection;  // parent element index -> coset index
};

Group from_permutation_generators(int degree,
                                  const std::vector<std::vector<elem_t>>& gens,
                                  std::string name,
                                  const ClosureCaps& caps = {});

Subgroup whole_group(const Group& g);
Subgroup trivial_subgroup(const Group& g);
Subgroup make_subgroup(const Group& g, std::vector<elem_t> sorted_members);

Subgroup subgroup_generated(const Group& g, std::span<const elem_t> seed);
Subgroup centralizer(const Group& g, const Subgroup& target);
Subgroup centralizer(const Group& g, elem_t x);
Subgroup center(const Group& g);
Subgroup commutator_subgroup(const Group& g, const Subgroup& a,
                             const Subgroup& b);

// Lower central series; fills class (and coclass for p-groups).
SeriesReport lower_central_series(const Group& g);
std::vector<Subgroup> upper_central_series(const Group& g);

Subgroup omega(const Group& g, int i);
Subgroup agemo(const Group& g, int i);
Subgroup frattini(const Group& g);

// All index-p subgroups, as preimages of the hyperplanes of G/Phi(G).
// The trivial group has none.
std::vector<Subgroup> maximal_subgroups(const Group& g);

QuotientResult quotient(const Group& g, const Subgroup& n,
                        std::string name = "");
Group direct_product(const Group& a, const Group& b, std::string name = "",
                     const ClosureCaps& caps = {});

// Every subgroup, by layered closure: cyclic subgroups first, then joins of
// known subgroups with single elements until a fixpoint. Sorted by
// (order, members).
std::vector<Subgroup> all_subgroups(const Group& g,
                                    const EnumerationCaps& caps = {});

// Largest normal subgroup of G inside U (the intersection of all conjugates).
Subgroup normal_core(const Group& g, const Subgroup& u);

bool is_normal(const Group& g, const Subgroup& n);
bool is_abelian_subgroup(const Subgroup& s);
Subgroup intersection(const Subgroup& a, const Subgroup& b);

// Re-index a subgroup as a standalone Group. to_parent maps new element
// indices back to parent indices.
struct ExtractedGroup {
  Group group;
  std::vector<elem_t> to_parent;
};
ExtractedGroup subgroup_as_group(const Subgroup& s, std::string name = "");

}  // namespace selfsim

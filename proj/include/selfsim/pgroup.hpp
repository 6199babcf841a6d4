#pragma once

#include <optional>
#include <vector>

#include "selfsim/group.hpp"

namespace selfsim {

// Ordered decomposition (a_1,...,a_d) with orders m_1 >= ... >= m_d such
// that every group element is uniquely a_1^{n_1} ... a_d^{n_d} with
// 0 <= n_i < m_i. Validity is always confirmed by full product enumeration.
struct BasisDecomposition {
  std::vector<elem_t> elements;
  std::vector<int> orders;
};

int prime_of(const Group& g);
int minimal_generator_count(const Group& g);  // d(G)
int rank(const Group& g, const EnumerationCaps& caps = {});
long long exponent(const Group& g);

bool is_powerful(const Group& g);
BasisDecomposition powerful_basis(const Group& g);
Subgroup omega1_of_powerful(const Group& g);
bool is_uniform(const Group& g);

bool is_maximal_class(const Group& g);
// G_1, all two-step centralizers and the degree of commutativity for a
// maximal class group of order >= p^4.
SeriesReport maximal_class_data(const Group& g);
// Elements whose centralizer has order exactly p^2; cross-checked against
// the set difference G \ (G_1 u C_G(G_{n-2})).
std::vector<elem_t> uniform_elements(const Group& g);

bool is_elementary_abelian(const Subgroup& s);
// A complement to a normal subgroup, if one exists. Prime index uses the
// order-p-element fast path; the general path enumerates subgroups.
std::optional<Subgroup> splits_over(const Group& g, const Subgroup& n,
                                    const EnumerationCaps& caps = {});
std::vector<Subgroup> abelian_maximal_subgroups(const Group& g);

// Helpers shared with the search module.
Subgroup frattini_of_subgroup(const Subgroup& h);
int d_of_subgroup(const Subgroup& h);
// Deterministic minimal generating set (ascending element index greedy
// against the Frattini span).
std::vector<elem_t> minimal_generating_set(const Subgroup& h);
bool is_uniform_subgroup(const Subgroup& u);

}  // namespace selfsim

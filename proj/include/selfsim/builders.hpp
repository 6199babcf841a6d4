#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selfsim/group.hpp"

namespace selfsim {

// Catalog builders. Each returns the named isomorphism type on a fixed
// small permutation representation; regular representations are used only
// where nothing smaller is coded.
Group trivial_group();
Group cyclic(int p, int k);                    // C_{p^k}, single cycle
Group elementary_abelian(int p, int d);        // C_p^d
Group dihedral(int order);                     // order 2^n >= 8, on the n-gon
Group quaternion(int order);                   // generalized, order 2^n >= 8
Group semidihedral(int order);                 // order 2^n >= 16
Group modular_maximal_cyclic(int p, int n);    // order p^n, n >= 3 (4 for p=2)
Group extraspecial_exponent_p(int p);          // p odd, order p^3
Group extraspecial_exponent_p2(int p);         // p odd, order p^3
Group wreath_CpCp(int p);                      // C_p wr C_p, p in {2,3,5}

// Name registry ("D8", "C3^2", "C3wrC3", aliases like "wreath3", ...).
Group make_builtin(const std::string& name);
std::vector<std::string> builtin_names();

// The verification catalog, in its fixed order.
std::vector<std::string> catalog_names();

// Group spec files: `name:`/`degree:`/optional `order:` headers followed by
// one `gen:` line per generator (whitespace-separated image list). UTF-8,
// '#' comments and blank lines ignored.
struct GroupSpecFile {
  std::string name;
  int degree = 0;
  std::vector<std::vector<elem_t>> generators;
  std::optional<elem_t> expected_order;
};

GroupSpecFile parse_group_file(const std::string& text);
Group load_group(const GroupSpecFile& spec, const ClosureCaps& caps = {});

}  // namespace selfsim

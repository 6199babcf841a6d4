#include "selfsim/builders.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace selfsim {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool power_of(int n, int base) {
  while (n > 1 && n % base == 0) n /= base;
  return n == 1;
}

std::vector<elem_t> cycle_perm(int degree) {
  std::vector<elem_t> p(degree);
  for (int i = 0; i < degree; ++i) p[i] = (i + 1) % degree;
  return p;
}

}  // namespace

Group trivial_group() { return from_permutation_generators(1, {}, "C1"); }

Group cyclic(int p, int k) {
  if (p < 2 || k < 0) throw std::invalid_argument("cyclic: bad parameters");
  if (k == 0) return trivial_group();
  int n = static_cast<int>(ipow(p, k));
  return from_permutation_generators(n, {cycle_perm(n)},
                                     "C" + std::to_string(n));
}

Group elementary_abelian(int p, int d) {
  if (p < 2 || d < 1)
    throw std::invalid_argument("elementary_abelian: bad parameters");
  int degree = p * d;
  std::vector<std::vector<elem_t>> gens;
  for (int block = 0; block < d; ++block) {
    std::vector<elem_t> perm(degree);
    for (int i = 0; i < degree; ++i) perm[i] = i;
    for (int i = 0; i < p; ++i) perm[block * p + i] = block * p + (i + 1) % p;
    gens.push_back(std::move(perm));
  }
  std::string name = "C" + std::to_string(p);
  if (d > 1) name += "^" + std::to_string(d);
  return from_permutation_generators(degree, gens, std::move(name));
}

Group dihedral(int order) {
  if (order < 8 || !power_of(order, 2))
    throw std::invalid_argument("dihedral: order must be 2^n >= 8");
  int m = order / 2;
  std::vector<elem_t> refl(m);
  for (int i = 0; i < m; ++i) refl[i] = (m - i) % m;
  return from_permutation_generators(m, {cycle_perm(m), refl},
                                     "D" + std::to_string(order));
}

Group quaternion(int order) {
  if (order < 8 || !power_of(order, 2))
    throw std::invalid_argument("quaternion: order must be 2^n >= 8");
  // elements a^i b^j with i < 2m, j < 2, order 4m; right multiplication
  // permutations of the 4m normal forms
  int m2 = order / 2;  // 2m
  int m = order / 4;
  auto idx = [&](int i, int j) { return j * m2 + ((i % m2 + m2) % m2); };
  std::vector<elem_t> by_a(order), by_b(order);
  for (int i = 0; i < m2; ++i) {
    by_a[idx(i, 0)] = idx(i + 1, 0);
    by_a[idx(i, 1)] = idx(i - 1, 1);
    by_b[idx(i, 0)] = idx(i, 1);
    by_b[idx(i, 1)] = idx(i + m, 0);
  }
  return from_permutation_generators(order, {by_a, by_b},
                                     "Q" + std::to_string(order));
}

Group semidihedral(int order) {
  if (order < 16 || !power_of(order, 2))
    throw std::invalid_argument("semidihedral: order must be 2^n >= 16");
  int m = order / 2;
  int k = m / 2 - 1;  // s^-1 r s = r^k
  std::vector<elem_t> s(m);
  for (int i = 0; i < m; ++i) s[i] = (i * k) % m;
  return from_permutation_generators(m, {cycle_perm(m), s},
                                     "SD" + std::to_string(order));
}

Group modular_maximal_cyclic(int p, int n) {
  if (p < 2 || n < 3 || (p == 2 && n < 4))
    throw std::invalid_argument("modular_maximal_cyclic: bad parameters");
  int m = static_cast<int>(ipow(p, n - 1));
  int k = 1 + static_cast<int>(ipow(p, n - 2));  // b^-1 a b = a^k
  std::vector<elem_t> b(m);
  for (int i = 0; i < m; ++i) b[i] = static_cast<elem_t>((1LL * i * k) % m);
  return from_permutation_generators(
      m, {cycle_perm(m), b}, "M" + std::to_string(ipow(p, n)));
}

Group extraspecial_exponent_p(int p) {
  if (p < 3) throw std::invalid_argument("extraspecial_exponent_p: p must be odd");
  // Heisenberg group mod p on normal forms (a,b,c) with
  // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')
  int n = p * p * p;
  auto idx = [&](int a, int b, int c) {
    return ((a % p + p) % p) * p * p + ((b % p + p) % p) * p + ((c % p + p) % p);
  };
  std::vector<elem_t> by_x(n), by_y(n);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c) {
        by_x[idx(a, b, c)] = idx(a + 1, b, c);
        by_y[idx(a, b, c)] = idx(a, b + 1, c + a);
      }
  return from_permutation_generators(n, {by_x, by_y},
                                     "He" + std::to_string(n));
}

Group extraspecial_exponent_p2(int p) {
  if (p < 3)
    throw std::invalid_argument("extraspecial_exponent_p2: p must be odd");
  return modular_maximal_cyclic(p, 3);
}

Group wreath_CpCp(int p) {
  if (p != 2 && p != 3 && p != 5)
    throw std::invalid_argument("wreath_CpCp: p must be one of 2, 3, 5");
  // natural imprimitive action on p^2 points: blocks of size p
  int degree = p * p;
  std::vector<elem_t> top(degree), base0(degree);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      top[i * p + j] = ((i + 1) % p) * p + j;
      base0[i * p + j] = (i == 0) ? (j + 1) % p : i * p + j;
    }
  return from_permutation_generators(
      degree, {top, base0},
      "C" + std::to_string(p) + "wrC" + std::to_string(p),
      ClosureCaps{.max_order = 65536});
}

namespace {

using Factory = std::function<Group()>;

const std::map<std::string, Factory>& registry() {
  static const std::map<std::string, Factory> reg = {
      {"C1", [] { return trivial_group(); }},
      {"C2", [] { return cyclic(2, 1); }},
      {"C4", [] { return cyclic(2, 2); }},
      {"C8", [] { return cyclic(2, 3); }},
      {"C2^2", [] { return elementary_abelian(2, 2); }},
      {"C2^3", [] { return elementary_abelian(2, 3); }},
      {"C2^4", [] { return elementary_abelian(2, 4); }},
      {"C3", [] { return cyclic(3, 1); }},
      {"C9", [] { return cyclic(3, 2); }},
      {"C3^2", [] { return elementary_abelian(3, 2); }},
      {"C3^3", [] { return elementary_abelian(3, 3); }},
      {"D8", [] { return dihedral(8); }},
      {"Q8", [] { return quaternion(8); }},
      {"D16", [] { return dihedral(16); }},
      {"Q16", [] { return quaternion(16); }},
      {"SD16", [] { return semidihedral(16); }},
      {"M16", [] { return modular_maximal_cyclic(2, 4); }},
      {"D32", [] { return dihedral(32); }},
      {"Q32", [] { return quaternion(32); }},
      {"SD32", [] { return semidihedral(32); }},
      {"He27", [] { return extraspecial_exponent_p(3); }},
      {"M27", [] { return extraspecial_exponent_p2(3); }},
      {"C2wrC2", [] { return wreath_CpCp(2); }},
      {"C3wrC3", [] { return wreath_CpCp(3); }},
      {"C5wrC5", [] { return wreath_CpCp(5); }},
      {"D8xC2", [] { return direct_product(dihedral(8), cyclic(2, 1)); }},
      {"Q8xC2", [] { return direct_product(quaternion(8), cyclic(2, 1)); }},
      {"C4xC2", [] { return direct_product(cyclic(2, 2), cyclic(2, 1)); }},
  };
  return reg;
}

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> a = {
      {"wreath2", "C2wrC2"}, {"wreath3", "C3wrC3"}, {"wreath5", "C5wrC5"},
      {"triv", "C1"},
  };
  return a;
}

}  // namespace

Group make_builtin(const std::string& name) {
  std::string key = name;
  auto al = aliases().find(key);
  if (al != aliases().end()) key = al->second;
  auto it = registry().find(key);
  if (it == registry().end())
    throw std::invalid_argument("unknown builtin group: " + name);
  return it->second();
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : registry()) out.push_back(name);
  return out;
}

std::vector<std::string> catalog_names() {
  return {"C2",   "C4",   "C8",   "C2^2", "C2^3",    "C2^4", "C3",
          "C9",   "C3^2", "C3^3", "D8",   "Q8",      "D16",  "Q16",
          "SD16", "M16",  "D32",  "Q32",  "SD32",    "He27", "M27",
          "C3wrC3", "D8xC2", "Q8xC2", "C4xC2"};
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

GroupSpecFile parse_group_file(const std::string& text) {
  GroupSpecFile spec;
  bool have_name = false, have_degree = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'key: value'", lineno, 1);
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    if (key == "name") {
      spec.name = value;
      have_name = true;
    } else if (key == "degree") {
      try {
        spec.degree = std::stoi(value);
      } catch (const std::exception&) {
        throw ParseError("bad degree value '" + value + "'", lineno,
                         static_cast<int>(colon) + 2);
      }
      if (spec.degree < 1)
        throw ParseError("degree must be positive", lineno,
                         static_cast<int>(colon) + 2);
      have_degree = true;
    } else if (key == "order") {
      try {
        spec.expected_order = std::stoi(value);
      } catch (const std::exception&) {
        throw ParseError("bad order value '" + value + "'", lineno,
                         static_cast<int>(colon) + 2);
      }
    } else if (key == "gen") {
      if (!have_degree)
        throw ParseError("'degree:' must precede 'gen:' lines", lineno, 1);
      std::istringstream vs(value);
      std::vector<elem_t> images;
      long long v;
      while (vs >> v) images.push_back(static_cast<elem_t>(v));
      if (!vs.eof())
        throw ParseError("non-integer in image list", lineno,
                         static_cast<int>(colon) + 2);
      if (static_cast<int>(images.size()) != spec.degree)
        throw ParseError("image list has " + std::to_string(images.size()) +
                             " entries, expected " +
                             std::to_string(spec.degree),
                         lineno, static_cast<int>(colon) + 2);
      spec.generators.push_back(std::move(images));
    } else {
      throw ParseError("unknown key '" + key + "'", lineno, 1);
    }
  }
  if (!have_name) throw ParseError("missing 'name:' line", lineno, 1);
  if (!have_degree) throw ParseError("missing 'degree:' line", lineno, 1);
  return spec;
}

Group load_group(const GroupSpecFile& spec, const ClosureCaps& caps) {
  Group g = from_permutation_generators(spec.degree, spec.generators,
                                        spec.name, caps);
  if (spec.expected_order && g.order != *spec.expected_order)
    throw OrderMismatch("group '" + spec.name + "' has order " +
                        std::to_string(g.order) + ", file declares " +
                        std::to_string(*spec.expected_order));
  return g;
}

}  // namespace selfsim

#include "selfsim/pgroup.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace selfsim {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int log_base(elem_t n, int p) {
  int k = 0;
  while (n > 1) {
    n /= p;
    ++k;
  }
  return k;
}

}  // namespace

int prime_of(const Group& g) {
  if (g.order <= 1 || !g.prime)
    throw NotAPGroup("prime_of: " + g.name + " (order " +
                     std::to_string(g.order) + ") is not a p-group");
  return *g.prime;
}

int minimal_generator_count(const Group& g) {
  if (g.order == 1) return 0;
  int p = prime_of(g);
  Subgroup phi = frattini(g);
  return log_base(g.order / phi.order(), p);
}

int rank(const Group& g, const EnumerationCaps& caps) {
  if (g.order == 1) return 0;
  prime_of(g);
  int best = 0;
  for (const Subgroup& h : all_subgroups(g, caps))
    best = std::max(best, d_of_subgroup(h));
  return best;
}

long long exponent(const Group& g) {
  long long e = 1;
  for (elem_t x = 0; x < g.order; ++x)
    e = std::lcm(e, static_cast<long long>(g.element_order(x)));
  return e;
}

bool is_powerful(const Group& g) {
  if (g.order == 1) return true;
  int p = prime_of(g);
  Subgroup derived = commutator_subgroup(g, whole_group(g), whole_group(g));
  Subgroup target = (p == 2) ? agemo(g, 2) : agemo(g, 1);
  return std::includes(target.members.begin(), target.members.end(),
                       derived.members.begin(), derived.members.end());
}

namespace {

// Partial products a_1^{n_1}...a_k^{n_k} must stay distinct; a full basis
// additionally covers the group. Returns the number of distinct products,
// or -1 on a collision.
long long distinct_products(const Group& g, const std::vector<elem_t>& elems,
                            const std::vector<int>& orders) {
  std::vector<char> seen(g.order, 0);
  std::vector<int> tuple(elems.size(), 0);
  long long count = 0;
  for (;;) {
    elem_t e = kIdentity;
    for (std::size_t i = 0; i < elems.size(); ++i)
      e = g.mul(e, g.power(elems[i], tuple[i]));
    if (seen[e]) return -1;
    seen[e] = 1;
    ++count;
    int k = static_cast<int>(elems.size()) - 1;
    while (k >= 0 && ++tuple[k] == orders[k]) tuple[k--] = 0;
    if (k < 0) break;
  }
  return count;
}

bool basis_dfs(const Group& g, int d, long long remaining,
               const std::vector<std::pair<int, elem_t>>& by_order,
               BasisDecomposition& acc) {
  int depth = static_cast<int>(acc.elements.size());
  if (depth == d) return remaining == 1;
  int prev = depth == 0 ? static_cast<int>(remaining) + 1 : acc.orders.back();
  for (const auto& [ord, x] : by_order) {
    if (ord > prev) continue;
    if (remaining % ord != 0) continue;
    // every later factor is at most ord, so ord^(slots left) must cover
    if (ipow(ord, d - depth) < remaining) break;  // by_order is descending
    if (depth == d - 1 && ord != remaining) continue;
    acc.elements.push_back(x);
    acc.orders.push_back(ord);
    // distinct_products returns -1 on a collision, else the full tuple count
    if (distinct_products(g, acc.elements, acc.orders) >= 0) {
      if (basis_dfs(g, d, remaining / ord, by_order, acc)) return true;
    }
    acc.elements.pop_back();
    acc.orders.pop_back();
  }
  return false;
}

}  // namespace

BasisDecomposition powerful_basis(const Group& g) {
  if (!is_powerful(g))
    throw NotPowerful("powerful_basis: " + g.name + " is not powerful");
  BasisDecomposition basis;
  if (g.order == 1) return basis;
  int d = minimal_generator_count(g);
  std::vector<std::pair<int, elem_t>> by_order;
  for (elem_t x = 0; x < g.order; ++x)
    by_order.emplace_back(g.element_order(x), x);
  std::sort(by_order.begin(), by_order.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  if (!basis_dfs(g, d, g.order, by_order, basis))
    throw BasisSearchFailed("powerful_basis: no basis found for " + g.name);
  return basis;
}

Subgroup omega1_of_powerful(const Group& g) {
  if (!is_powerful(g))
    throw NotPowerful("omega1_of_powerful: " + g.name + " is not powerful");
  if (g.order == 1) return trivial_subgroup(g);
  int p = prime_of(g);

  // N = <squares>; equals G itself for odd p
  std::vector<char> seen(g.order, 0);
  std::vector<elem_t> sq;
  for (elem_t x = 0; x < g.order; ++x) {
    elem_t z = g.mul(x, x);
    if (!seen[z]) {
      seen[z] = 1;
      sq.push_back(z);
    }
  }
  Subgroup n = subgroup_generated(g, sq);

  ExtractedGroup en = subgroup_as_group(n, g.name + ".N");
  BasisDecomposition basis = powerful_basis(en.group);
  std::vector<elem_t> gens;
  for (std::size_t i = 0; i < basis.elements.size(); ++i) {
    elem_t a = en.to_parent[basis.elements[i]];
    gens.push_back(g.power(a, basis.orders[i] / p));
  }
  Subgroup from_basis = subgroup_generated(g, gens);

  // direct computation of Omega_1(N) inside the parent
  std::vector<elem_t> low;
  for (elem_t x : n.members)
    if (g.element_order(x) <= p) low.push_back(x);
  Subgroup direct = subgroup_generated(g, low);

  if (from_basis.members != direct.members)
    throw LemmaViolation("omega1_of_powerful: basis construction disagrees "
                         "with direct computation on " + g.name);
  return from_basis;
}

bool is_uniform(const Group& g) {
  if (g.order == 1) return true;
  prime_of(g);
  if (!is_powerful(g)) return false;
  // a homocyclic basis exists iff |G| = exp(G)^d(G) (the leading basis
  // order always equals the exponent in a powerful group)
  return g.order == ipow(exponent(g), minimal_generator_count(g));
}

bool is_maximal_class(const Group& g) {
  int p = prime_of(g);
  int n = log_base(g.order, p);
  if (n < 2)
    throw OrderTooSmall("is_maximal_class: order must be at least p^2");
  return lower_central_series(g).nilpotency_class == n - 1;
}

namespace {

// preimage in G of the centralizer of A/N in G/N
Subgroup two_step_centralizer(const Group& g, const Subgroup& a,
                              const Subgroup& n) {
  if (n.is_trivial()) return centralizer(g, a);
  QuotientResult q = quotient(g, n);
  std::vector<char> im(q.group.order, 0);
  std::vector<elem_t> amem;
  for (elem_t x : a.members) {
    if (!im[q.projection[x]]) {
      im[q.projection[x]] = 1;
      amem.push_back(q.projection[x]);
    }
  }
  std::sort(amem.begin(), amem.end());
  Subgroup c = centralizer(q.group, Subgroup{&q.group, std::move(amem)});
  std::vector<char> cm = c.mask();
  std::vector<elem_t> members;
  for (elem_t x = 0; x < g.order; ++x)
    if (cm[q.projection[x]]) members.push_back(x);
  return Subgroup{&g, std::move(members)};
}

}  // namespace

SeriesReport maximal_class_data(const Group& g) {
  int p = prime_of(g);
  int n = log_base(g.order, p);
  if (!is_maximal_class(g))
    throw NotMaximalClass("maximal_class_data: " + g.name);
  if (n < 4)
    throw OrderTooSmall("maximal_class_data: needs order >= p^4");

  SeriesReport r = lower_central_series(g);
  // terms[i] = G_i for i >= 2 (lower central), padded with the trivial
  // subgroup past the end; terms[1] is filled with the two-step centralizer
  // below. Indices are the usual maximal class numbering.
  std::vector<Subgroup> terms(2 * n + 2, trivial_subgroup(g));
  for (int i = 2; i <= n; ++i)
    terms[i] = (i <= static_cast<int>(r.lower_central.size()))
                   ? r.lower_central[i - 1]
                   : trivial_subgroup(g);

  for (int i = 2; i <= n - 2; ++i)
    r.two_step_centralizers.push_back(
        two_step_centralizer(g, terms[i], terms[i + 2]));
  r.g1 = r.two_step_centralizers.front();
  assert(r.g1->order() * p == g.order);
  terms[1] = *r.g1;

  // cache of pairwise commutators [G_i, G_j], 1 <= i <= j <= n-1
  std::vector<std::vector<Subgroup>> bracket(n, std::vector<Subgroup>(n));
  for (int i = 1; i <= n - 1; ++i)
    for (int j = i; j <= n - 1; ++j)
      bracket[i][j] = commutator_subgroup(g, terms[i], terms[j]);

  for (int ell = n - 3; ell >= 0; --ell) {
    bool ok = true;
    for (int i = 1; i <= n - 1 && ok; ++i) {
      for (int j = i; j <= n - 1 && ok; ++j) {
        const Subgroup& target = terms[std::min(i + j + ell, n)];
        const Subgroup& br = bracket[i][j];
        ok = std::includes(target.members.begin(), target.members.end(),
                           br.members.begin(), br.members.end());
      }
    }
    if (ok) {
      r.degree_of_commutativity = ell;
      break;
    }
  }
  if (!r.degree_of_commutativity)
    throw LemmaViolation("maximal_class_data: no valid degree of "
                         "commutativity on " + g.name);
  return r;
}

std::vector<elem_t> uniform_elements(const Group& g) {
  int p = prime_of(g);
  SeriesReport data = maximal_class_data(g);

  elem_t p2 = static_cast<elem_t>(p) * p;
  std::vector<elem_t> result;
  for (elem_t s = 0; s < g.order; ++s)
    if (centralizer(g, s).order() == p2) result.push_back(s);

  // must coincide with G \ (G_1 u C_G(G_{n-2}))
  std::vector<char> excluded(g.order, 0);
  for (elem_t x : data.g1->members) excluded[x] = 1;
  for (elem_t x : data.two_step_centralizers.back().members) excluded[x] = 1;
  std::vector<elem_t> complement;
  for (elem_t x = 0; x < g.order; ++x)
    if (!excluded[x]) complement.push_back(x);
  if (result != complement)
    throw LemmaViolation("uniform_elements: centralizer characterization "
                         "disagrees with the set difference on " + g.name);
  return result;
}

bool is_elementary_abelian(const Subgroup& s) {
  if (!is_abelian_subgroup(s)) return false;
  if (s.is_trivial()) return true;
  const Group& g = *s.parent;
  long long e = 1;
  for (elem_t x : s.members)
    e = std::lcm(e, static_cast<long long>(g.element_order(x)));
  // exponent must be prime
  for (long long d = 2; d * d <= e; ++d)
    if (e % d == 0) return false;
  return e > 1;
}

std::optional<Subgroup> splits_over(const Group& g, const Subgroup& n,
                                    const EnumerationCaps& caps) {
  if (!is_normal(g, n)) throw NotNormal("splits_over: not normal");
  elem_t q = g.order / n.order();
  if (q == 1) return trivial_subgroup(g);
  if (n.is_trivial()) return whole_group(g);
  bool q_prime = true;
  for (elem_t d = 2; d * d <= q; ++d)
    if (q % d == 0) q_prime = false;
  if (q_prime) {
    // a complement is exactly the span of an order-q element outside N
    for (elem_t x = 1; x < g.order; ++x)
      if (!n.contains(x) && g.element_order(x) == q)
        return subgroup_generated(g, std::vector<elem_t>{x});
    return std::nullopt;
  }
  for (const Subgroup& c : all_subgroups(g, caps))
    if (c.order() == q && intersection(c, n).is_trivial()) return c;
  return std::nullopt;
}

std::vector<Subgroup> abelian_maximal_subgroups(const Group& g) {
  std::vector<Subgroup> out;
  for (Subgroup& h : maximal_subgroups(g))
    if (is_abelian_subgroup(h)) out.push_back(std::move(h));
  return out;
}

Subgroup frattini_of_subgroup(const Subgroup& h) {
  const Group& g = *h.parent;
  if (h.is_trivial()) return trivial_subgroup(g);
  int p = prime_of(g);
  std::vector<char> seen(g.order, 0);
  std::vector<elem_t> gens;
  auto add = [&](elem_t z) {
    if (!seen[z]) {
      seen[z] = 1;
      gens.push_back(z);
    }
  };
  for (std::size_t i = 0; i < h.members.size(); ++i) {
    add(g.power(h.members[i], p));
    for (std::size_t j = i + 1; j < h.members.size(); ++j)
      add(g.commutator(h.members[i], h.members[j]));
  }
  return subgroup_generated(g, gens);
}

int d_of_subgroup(const Subgroup& h) {
  if (h.is_trivial()) return 0;
  int p = prime_of(*h.parent);
  Subgroup phi = frattini_of_subgroup(h);
  return log_base(h.order() / phi.order(), p);
}

std::vector<elem_t> minimal_generating_set(const Subgroup& h) {
  const Group& g = *h.parent;
  if (h.is_trivial()) return {};
  Subgroup span = g.is_pgroup() && g.order > 1 ? frattini_of_subgroup(h)
                                               : trivial_subgroup(g);
  std::vector<elem_t> gens;
  for (elem_t x : h.members) {
    if (span.order() == h.order()) break;
    if (!span.contains(x)) {
      gens.push_back(x);
      std::vector<elem_t> seed = span.members;
      seed.push_back(x);
      span = subgroup_generated(g, seed);
    }
  }
  assert(span.order() == h.order());
  return gens;
}

bool is_uniform_subgroup(const Subgroup& u) {
  if (u.is_trivial()) return true;
  return is_uniform(subgroup_as_group(u).group);
}

}  // namespace selfsim

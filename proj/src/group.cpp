#include "selfsim/group.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <unordered_map>

namespace selfsim {

namespace {

struct PermHash {
  std::size_t operator()(const std::vector<elem_t>& p) const {
    std::size_t h = p.size();
    for (elem_t v : p) h = h * 1000003u + static_cast<std::size_t>(v) + 1;
    return h;
  }
};

// apply x, then y
std::vector<elem_t> compose(const std::vector<elem_t>& x,
                            const std::vector<elem_t>& y) {
  std::vector<elem_t> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = y[x[i]];
  return r;
}

std::optional<int> prime_power_base(elem_t n) {
  if (n < 2) return std::nullopt;
  for (elem_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      elem_t m = n;
      while (m % p == 0) m /= p;
      if (m == 1) return p;
      return std::nullopt;
    }
  }
  return static_cast<int>(n);  // n itself is prime
}

}  // namespace

elem_t Group::power(elem_t x, long long e) const {
  // e < 0 goes through the inverse
  if (e < 0) return power(inverse(x), -e);
  elem_t acc = kIdentity;
  elem_t base = x;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

int Group::element_order(elem_t x) const {
  int k = 1;
  elem_t y = x;
  while (y != kIdentity) {
    y = mul(y, x);
    ++k;
  }
  return k;
}

bool Group::is_abelian() const {
  for (elem_t x = 0; x < order; ++x)
    for (elem_t y = x + 1; y < order; ++y)
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

bool Subgroup::contains(elem_t x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

int Subgroup::position(elem_t x) const {
  auto it = std::lower_bound(members.begin(), members.end(), x);
  assert(it != members.end() && *it == x);
  return static_cast<int>(it - members.begin());
}

std::vector<char> Subgroup::mask() const {
  std::vector<char> m(parent->order, 0);
  for (elem_t x : members) m[x] = 1;
  return m;
}

Group from_permutation_generators(int degree,
                                  const std::vector<std::vector<elem_t>>& gens,
                                  std::string name, const ClosureCaps& caps) {
  if (degree < 1) throw NotABijection("degree must be positive");
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != degree)
      throw NotABijection("generator image list has wrong length in " + name);
    std::vector<char> seen(degree, 0);
    for (elem_t v : g) {
      if (v < 0 || v >= degree || seen[v])
        throw NotABijection("generator is not a bijection in " + name);
      seen[v] = 1;
    }
  }

  std::vector<elem_t> identity(degree);
  std::iota(identity.begin(), identity.end(), 0);

  std::vector<std::vector<elem_t>> elems;
  std::unordered_map<std::vector<elem_t>, elem_t, PermHash> index_of;
  // parent edge: element i (> 0) was first seen as elems[parent] * gens[gen]
  std::vector<std::pair<elem_t, int>> edge;

  elems.push_back(identity);
  index_of.emplace(identity, 0);
  edge.emplace_back(-1, -1);

  for (std::size_t at = 0; at < elems.size(); ++at) {
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      auto prod = compose(elems[at], gens[gi]);
      auto [it, inserted] = index_of.emplace(prod, elems.size());
      if (inserted) {
        elems.push_back(std::move(prod));
        edge.emplace_back(static_cast<elem_t>(at), static_cast<int>(gi));
        if (elems.size() > caps.max_order)
          throw ClosureCapExceeded("closure of " + name + " exceeds cap " +
                                   std::to_string(caps.max_order));
      }
    }
  }

  Group g;
  g.name = std::move(name);
  g.degree = degree;
  g.order = static_cast<elem_t>(elems.size());
  g.element_perms = elems;
  g.prime = prime_power_base(g.order);
  for (const auto& gen : gens) g.generators.push_back(index_of.at(gen));

  const std::size_t n = g.order;
  g.table.assign(n * n, -1);
  // identity column, then generator columns by direct composition, then the
  // remaining columns via the parent edge z = parent * gen:
  //   x*z = (x*parent)*gen, both already filled in BFS index order.
  for (std::size_t x = 0; x < n; ++x) g.table[x * n + 0] = static_cast<elem_t>(x);
  std::vector<char> direct(n, 0);
  direct[0] = 1;
  for (elem_t ge : g.generators) {
    if (direct[ge]) continue;
    direct[ge] = 1;
    for (std::size_t x = 0; x < n; ++x)
      g.table[x * n + ge] = index_of.at(compose(elems[x], elems[ge]));
  }
  for (elem_t z = 1; z < g.order; ++z) {
    if (direct[z]) continue;
    auto [parent, gi] = edge[z];
    elem_t ge = g.generators[gi];
    assert(parent >= 0 && parent < z);
    for (std::size_t x = 0; x < n; ++x) {
      elem_t xp = g.table[x * n + parent];
      g.table[x * n + z] = g.table[static_cast<std::size_t>(xp) * n + ge];
    }
  }

  g.inv.assign(n, -1);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (g.table[x * n + y] == kIdentity) {
        g.inv[x] = static_cast<elem_t>(y);
        break;
      }
    }
    if (g.inv[x] < 0) throw Error("no inverse found; table is not a group");
  }
  return g;
}

Subgroup whole_group(const Group& g) {
  Subgroup s{&g, std::vector<elem_t>(g.order)};
  std::iota(s.members.begin(), s.members.end(), 0);
  return s;
}

Subgroup trivial_subgroup(const Group& g) { return Subgroup{&g, {kIdentity}}; }

Subgroup make_subgroup(const Group& g, std::vector<elem_t> sorted_members) {
  assert(!sorted_members.empty() && sorted_members.front() == kIdentity);
  assert(std::is_sorted(sorted_members.begin(), sorted_members.end()));
  return Subgroup{&g, std::move(sorted_members)};
}

Subgroup subgroup_generated(const Group& g, std::span<const elem_t> seed) {
  std::vector<char> in(g.order, 0);
  std::vector<elem_t> out;
  out.reserve(16);
  in[kIdentity] = 1;
  out.push_back(kIdentity);
  // breadth-first products; inverses come for free in a finite group
  for (std::size_t at = 0; at < out.size(); ++at) {
    for (elem_t s : seed) {
      elem_t z = g.mul(out[at], s);
      if (!in[z]) {
        in[z] = 1;
        out.push_back(z);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return Subgroup{&g, std::move(out)};
}

Subgroup centralizer(const Group& g, const Subgroup& target) {
  std::vector<elem_t> out;
  for (elem_t x = 0; x < g.order; ++x) {
    bool ok = true;
    for (elem_t t : target.members) {
      if (g.mul(x, t) != g.mul(t, x)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return Subgroup{&g, std::move(out)};
}

Subgroup centralizer(const Group& g, elem_t x) {
  std::vector<elem_t> out;
  for (elem_t y = 0; y < g.order; ++y)
    if (g.mul(x, y) == g.mul(y, x)) out.push_back(y);
  return Subgroup{&g, std::move(out)};
}

Subgroup center(const Group& g) { return centralizer(g, whole_group(g)); }

Subgroup commutator_subgroup(const Group& g, const Subgroup& a,
                             const Subgroup& b) {
  std::vector<char> seen(g.order, 0);
  std::vector<elem_t> gens;
  for (elem_t x : a.members) {
    for (elem_t y : b.members) {
      elem_t c = g.commutator(x, y);
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  }
  return subgroup_generated(g, gens);
}

SeriesReport lower_central_series(const Group& g) {
  SeriesReport r;
  r.lower_central.push_back(whole_group(g));
  while (r.lower_central.back().order() > 1) {
    Subgroup next =
        commutator_subgroup(g, r.lower_central.back(), r.lower_central.front());
    if (next.order() == r.lower_central.back().order()) break;  // not nilpotent
    r.lower_central.push_back(std::move(next));
  }
  if (r.lower_central.back().order() == 1) {
    r.nilpotency_class = static_cast<int>(r.lower_central.size()) - 1;
    if (g.is_pgroup() && g.order > 1) {
      int n = 0;
      for (elem_t m = g.order; m > 1; m /= *g.prime) ++n;
      r.coclass = n - r.nilpotency_class;
    } else if (g.order == 1) {
      r.coclass = 0;
    }
  }
  return r;
}

std::vector<Subgroup> upper_central_series(const Group& g) {
  std::vector<Subgroup> series;
  series.push_back(trivial_subgroup(g));
  for (;;) {
    std::vector<char> zm = series.back().mask();
    std::vector<elem_t> next;
    for (elem_t x = 0; x < g.order; ++x) {
      bool ok = true;
      for (elem_t y = 0; y < g.order; ++y) {
        if (!zm[g.commutator(x, y)]) {
          ok = false;
          break;
        }
      }
      if (ok) next.push_back(x);
    }
    if (next.size() == series.back().members.size()) break;
    series.push_back(Subgroup{&g, std::move(next)});
    if (series.back().order() == g.order) break;
  }
  return series;
}

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int require_prime(const Group& g, const char* op) {
  if (!g.is_pgroup() || g.order == 1)
    throw NotAPGroup(std::string(op) + ": " + g.name + " is not a p-group");
  return *g.prime;
}

}  // namespace

Subgroup omega(const Group& g, int i) {
  int p = require_prime(g, "omega");
  long long bound = ipow(p, i);
  std::vector<elem_t> gens;
  for (elem_t x = 0; x < g.order; ++x)
    if (g.element_order(x) <= bound) gens.push_back(x);
  return subgroup_generated(g, gens);
}

Subgroup agemo(const Group& g, int i) {
  int p = require_prime(g, "agemo");
  long long e = ipow(p, i);
  std::vector<char> seen(g.order, 0);
  std::vector<elem_t> gens;
  for (elem_t x = 0; x < g.order; ++x) {
    elem_t z = g.power(x, e);
    if (!seen[z]) {
      seen[z] = 1;
      gens.push_back(z);
    }
  }
  return subgroup_generated(g, gens);
}

Subgroup frattini(const Group& g) {
  if (g.order == 1) return trivial_subgroup(g);
  int p = require_prime(g, "frattini");
  std::vector<char> seen(g.order, 0);
  std::vector<elem_t> gens;
  auto add = [&](elem_t z) {
    if (!seen[z]) {
      seen[z] = 1;
      gens.push_back(z);
    }
  };
  for (elem_t x = 0; x < g.order; ++x) {
    add(g.power(x, p));
    for (elem_t y = x + 1; y < g.order; ++y) add(g.commutator(x, y));
  }
  return subgroup_generated(g, gens);
}

namespace {

// Coordinates of every element of an elementary abelian group w.r.t. a
// greedily chosen basis, built by enumerating all basis-power products.
struct ElementaryCoords {
  int p = 0;
  int dim = 0;
  std::vector<elem_t> basis;
  std::vector<std::vector<int>> coords;  // per element index
};

ElementaryCoords elementary_coordinates(const Group& q, int p) {
  ElementaryCoords ec;
  ec.p = p;
  ec.coords.assign(q.order, {});
  Subgroup span = trivial_subgroup(q);
  for (elem_t x = 0; x < q.order && span.order() < q.order; ++x) {
    if (!span.contains(x)) {
      ec.basis.push_back(x);
      std::vector<elem_t> seed = span.members;
      seed.push_back(x);
      span = subgroup_generated(q, seed);
    }
  }
  ec.dim = static_cast<int>(ec.basis.size());
  std::vector<int> tuple(ec.dim, 0);
  for (;;) {
    elem_t e = kIdentity;
    for (int i = 0; i < ec.dim; ++i)
      e = q.mul(e, q.power(ec.basis[i], tuple[i]));
    ec.coords[e] = tuple;
    int k = ec.dim - 1;
    while (k >= 0 && ++tuple[k] == p) tuple[k--] = 0;
    if (k < 0) break;
  }
  return ec;
}

}  // namespace

std::vector<Subgroup> maximal_subgroups(const Group& g) {
  if (g.order == 1) return {};
  int p = require_prime(g, "maximal_subgroups");
  Subgroup phi = frattini(g);
  QuotientResult q = quotient(g, phi, g.name + "/Phi");
  ElementaryCoords ec = elementary_coordinates(q.group, p);
  std::vector<Subgroup> result;
  // hyperplanes = kernels of nonzero functionals, one per projective point;
  // functionals normalized so the first nonzero coefficient is 1, in
  // lexicographic order.
  std::vector<int> c(ec.dim, 0);
  for (;;) {
    int k = ec.dim - 1;
    while (k >= 0 && ++c[k] == p) c[k--] = 0;
    if (k < 0) break;
    int lead = 0;
    while (lead < ec.dim && c[lead] == 0) ++lead;
    if (c[lead] != 1) continue;
    std::vector<elem_t> members;
    for (elem_t x = 0; x < g.order; ++x) {
      const auto& co = ec.coords[q.projection[x]];
      int dot = 0;
      for (int i = 0; i < ec.dim; ++i) dot += c[i] * co[i];
      if (dot % p == 0) members.push_back(x);
    }
    result.push_back(Subgroup{&g, std::move(members)});
  }
  return result;
}

QuotientResult quotient(const Group& g, const Subgroup& n, std::string name) {
  if (!is_normal(g, n)) throw NotNormal("quotient: subgroup is not normal");
  const elem_t q = g.order / n.order();
  std::vector<elem_t> coset(g.order, -1);
  std::vector<elem_t> rep;
  rep.reserve(q);
  for (elem_t x = 0; x < g.order; ++x) {
    if (coset[x] >= 0) continue;
    elem_t id = static_cast<elem_t>(rep.size());
    rep.push_back(x);
    for (elem_t m : n.members) coset[g.mul(x, m)] = id;
  }

  Group out;
  out.name = name.empty() ? g.name + "/N" + std::to_string(n.order())
                          : std::move(name);
  out.order = q;
  out.degree = q;  // right-regular action on cosets
  out.table.assign(static_cast<std::size_t>(q) * q, -1);
  for (elem_t a = 0; a < q; ++a)
    for (elem_t b = 0; b < q; ++b)
      out.table[static_cast<std::size_t>(a) * q + b] =
          coset[g.mul(rep[a], rep[b])];
  out.inv.assign(q, -1);
  for (elem_t a = 0; a < q; ++a) out.inv[a] = coset[g.inverse(rep[a])];
  out.element_perms.resize(q);
  for (elem_t c = 0; c < q; ++c) {
    out.element_perms[c].resize(q);
    for (elem_t j = 0; j < q; ++j)
      out.element_perms[c][j] = out.table[static_cast<std::size_t>(j) * q + c];
  }
  for (elem_t gen : g.generators) {
    elem_t img = coset[gen];
    if (img != kIdentity &&
        std::find(out.generators.begin(), out.generators.end(), img) ==
            out.generators.end())
      out.generators.push_back(img);
  }
  if (out.generators.empty() && q > 1) {
    // parent had no recorded generators (or they all died); fall back to all
    for (elem_t c = 1; c < q; ++c) out.generators.push_back(c);
  }
  out.prime = prime_power_base(q);
  return QuotientResult{std::move(out), std::move(coset)};
}

Group direct_product(const Group& a, const Group& b, std::string name,
                     const ClosureCaps& caps) {
  std::size_t target = static_cast<std::size_t>(a.order) * b.order;
  if (target > caps.max_order)
    throw ClosureCapExceeded("direct product order " + std::to_string(target) +
                             " exceeds cap");
  int degree = a.degree + b.degree;
  std::vector<std::vector<elem_t>> gens;
  for (elem_t ga : a.generators) {
    std::vector<elem_t> img(degree);
    for (int i = 0; i < a.degree; ++i) img[i] = a.element_perms[ga][i];
    for (int i = 0; i < b.degree; ++i) img[a.degree + i] = a.degree + i;
    gens.push_back(std::move(img));
  }
  for (elem_t gb : b.generators) {
    std::vector<elem_t> img(degree);
    for (int i = 0; i < a.degree; ++i) img[i] = i;
    for (int i = 0; i < b.degree; ++i)
      img[a.degree + i] = a.degree + b.element_perms[gb][i];
    gens.push_back(std::move(img));
  }
  Group out = from_permutation_generators(
      degree, gens, name.empty() ? a.name + "x" + b.name : std::move(name),
      caps);
  if (out.order != static_cast<elem_t>(target))
    throw Error("direct product closure has unexpected order");
  return out;
}

std::vector<Subgroup> all_subgroups(const Group& g,
                                    const EnumerationCaps& caps) {
  if (g.order > caps.max_group_order)
    throw EnumerationCapExceeded("all_subgroups: order " +
                                 std::to_string(g.order) + " exceeds cap");
  std::set<std::vector<elem_t>> known;
  known.insert(trivial_subgroup(g).members);
  for (elem_t x = 1; x < g.order; ++x)
    known.insert(subgroup_generated(g, std::vector<elem_t>{x}).members);

  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<elem_t>> snapshot(known.begin(), known.end());
    for (const auto& s : snapshot) {
      if (static_cast<elem_t>(s.size()) == g.order) continue;
      std::vector<char> in(g.order, 0);
      for (elem_t m : s) in[m] = 1;
      for (elem_t x = 1; x < g.order; ++x) {
        if (in[x]) continue;
        std::vector<elem_t> seed = s;
        seed.push_back(x);
        auto j = subgroup_generated(g, seed);
        if (known.insert(j.members).second) {
          grew = true;
          if (known.size() > caps.max_subgroups)
            throw EnumerationCapExceeded("all_subgroups: subgroup count cap");
        }
      }
    }
  }
  std::vector<Subgroup> out;
  out.reserve(known.size());
  for (const auto& m : known) out.push_back(Subgroup{&g, m});
  std::sort(out.begin(), out.end(), [](const Subgroup& x, const Subgroup& y) {
    if (x.members.size() != y.members.size())
      return x.members.size() < y.members.size();
    return x.members < y.members;
  });
  return out;
}

Subgroup normal_core(const Group& g, const Subgroup& u) {
  std::vector<elem_t> running = u.members;
  std::vector<elem_t> conj;
  for (elem_t x = 1; x < g.order && running.size() > 1; ++x) {
    conj.clear();
    for (elem_t m : u.members) conj.push_back(g.conjugate(m, x));
    std::sort(conj.begin(), conj.end());
    std::vector<elem_t> next;
    std::set_intersection(running.begin(), running.end(), conj.begin(),
                          conj.end(), std::back_inserter(next));
    running = std::move(next);
  }
  return Subgroup{&g, std::move(running)};
}

bool is_normal(const Group& g, const Subgroup& n) {
  // normality under the generators implies normality under the whole group
  for (elem_t gen : g.generators)
    for (elem_t m : n.members)
      if (!n.contains(g.conjugate(m, gen))) return false;
  return true;
}

bool is_abelian_subgroup(const Subgroup& s) {
  const Group& g = *s.parent;
  for (std::size_t i = 0; i < s.members.size(); ++i)
    for (std::size_t j = i + 1; j < s.members.size(); ++j)
      if (g.mul(s.members[i], s.members[j]) !=
          g.mul(s.members[j], s.members[i]))
        return false;
  return true;
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  assert(a.parent == b.parent);
  std::vector<elem_t> out;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                        b.members.end(), std::back_inserter(out));
  return Subgroup{a.parent, std::move(out)};
}

ExtractedGroup subgroup_as_group(const Subgroup& s, std::string name) {
  const Group& g = *s.parent;
  const elem_t m = s.order();
  ExtractedGroup out;
  out.to_parent = s.members;
  Group& h = out.group;
  h.name = name.empty() ? g.name + "<" + std::to_string(m) + ">"
                        : std::move(name);
  h.degree = g.degree;
  h.order = m;
  h.table.assign(static_cast<std::size_t>(m) * m, -1);
  for (elem_t a = 0; a < m; ++a)
    for (elem_t b = 0; b < m; ++b)
      h.table[static_cast<std::size_t>(a) * m + b] =
          s.position(g.mul(s.members[a], s.members[b]));
  h.inv.assign(m, -1);
  for (elem_t a = 0; a < m; ++a) h.inv[a] = s.position(g.inverse(s.members[a]));
  h.element_perms.resize(m);
  for (elem_t a = 0; a < m; ++a) h.element_perms[a] = g.element_perms[s.members[a]];
  h.prime = prime_power_base(m);
  // greedy generating set: least member outside the running span
  Subgroup span = trivial_subgroup(h);
  for (elem_t x = 1; x < m && span.order() < m; ++x) {
    if (!span.contains(x)) {
      h.generators.push_back(x);
      std::vector<elem_t> seed = span.members;
      seed.push_back(x);
      span = subgroup_generated(h, seed);
    }
  }
  return out;
}

}  // namespace selfsim

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "selfsim/builders.hpp"
#include "selfsim/group.hpp"

using namespace selfsim;

namespace {

// Construction invariants: identity row/column, inverses, associativity
// (exhaustive for n <= 64, sampled otherwise), generator closure, and
// compatibility of the table with the stored permutations.
void check_construction(const Group& g) {
  for (elem_t x = 0; x < g.order; ++x) {
    CHECK(g.mul(kIdentity, x) == x);
    CHECK(g.mul(x, kIdentity) == x);
    CHECK(g.mul(x, g.inverse(x)) == kIdentity);
  }
  if (g.order <= 64) {
    for (elem_t x = 0; x < g.order; ++x)
      for (elem_t y = 0; y < g.order; ++y)
        for (elem_t z = 0; z < g.order; ++z)
          REQUIRE(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<elem_t> pick(0, g.order - 1);
    for (int i = 0; i < 10000; ++i) {
      elem_t x = pick(rng), y = pick(rng), z = pick(rng);
      REQUIRE(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
    }
  }
  Subgroup closure = subgroup_generated(g, g.generators);
  CHECK(closure.order() == g.order);
  for (elem_t x = 0; x < g.order; ++x)
    for (elem_t y = 0; y < g.order; ++y) {
      if (g.order > 64 && (x * 31 + y) % 97 != 0) continue;  // sample
      CHECK(g.element_perms[g.mul(x, y)] ==
            oracles::compose(g.element_perms[x], g.element_perms[y]));
    }
}

}  // namespace

TEST_CASE("closure from permutation generators") {
  SUBCASE("D8 from a 4-cycle and a transposition of opposite vertices") {
    std::vector<std::vector<elem_t>> gens = {{1, 2, 3, 0}, {0, 3, 2, 1}};
    CHECK(oracles::naive_closure_size(4, gens) == 8);  // independent path
    Group d8 = from_permutation_generators(4, gens, "D8");
    CHECK(d8.order == 8);
    CHECK(d8.prime == 2);
    check_construction(d8);
  }
  SUBCASE("empty generating set gives the trivial group") {
    Group t = from_permutation_generators(1, {}, "C1");
    CHECK(t.order == 1);
    CHECK_FALSE(t.prime.has_value());
  }
  SUBCASE("3-cycle gives C3") {
    Group c3 = from_permutation_generators(3, {{1, 2, 0}}, "C3");
    CHECK(c3.order == 3);
    CHECK(c3.prime == 3);
    check_construction(c3);
  }
  SUBCASE("non-bijective input is rejected") {
    CHECK_THROWS_AS(from_permutation_generators(3, {{0, 0, 1}}, "bad"),
                    NotABijection);
    CHECK_THROWS_AS(from_permutation_generators(3, {{0, 1}}, "bad"),
                    NotABijection);
  }
  SUBCASE("closure cap") {
    ClosureCaps caps{.max_order = 7};
    std::vector<std::vector<elem_t>> gens = {{1, 2, 3, 0}, {0, 3, 2, 1}};
    CHECK_THROWS_AS(from_permutation_generators(4, gens, "D8", caps),
                    ClosureCapExceeded);
  }
}

TEST_CASE("element orders") {
  Group d8 = make_builtin("D8");
  elem_t r = d8.generators[0];
  CHECK(oracles::naive_perm_order(d8.element_perms[r]) == 4);
  CHECK(d8.element_order(r) == 4);
  CHECK(d8.element_order(kIdentity) == 1);
  Group c3 = make_builtin("C3");
  CHECK(c3.element_order(c3.generators[0]) == 3);
}

TEST_CASE("generated subgroups") {
  Group d8 = make_builtin("D8");
  elem_t r = d8.generators[0];
  elem_t r2 = d8.mul(r, r);
  CHECK(subgroup_generated(d8, std::vector<elem_t>{r2}).order() == 2);
  CHECK(subgroup_generated(d8, std::vector<elem_t>{}).order() == 1);
  CHECK(subgroup_generated(d8, d8.generators).order() == 8);
}

TEST_CASE("centralizers and the center") {
  SUBCASE("reflection in D16 has centralizer of order 4") {
    Group d16 = make_builtin("D16");
    elem_t s = d16.generators[1];
    CHECK(centralizer(d16, s).order() == 4);
  }
  SUBCASE("abelian group centralizes everything") {
    Group c9 = make_builtin("C9");
    CHECK(centralizer(c9, c9.generators[0]).order() == 9);
    CHECK(center(c9).order() == 9);
  }
  SUBCASE("<i> in Q8") {
    Group q8 = make_builtin("Q8");
    elem_t i = q8.generators[0];
    CHECK(q8.element_order(i) == 4);
    CHECK(centralizer(q8, i).members ==
          subgroup_generated(q8, std::vector<elem_t>{i}).members);
    CHECK(centralizer(q8, i).order() == 4);
  }
  SUBCASE("Z(D8) has order 2, Z(C3wrC3) has order 3") {
    CHECK(center(make_builtin("D8")).order() == 2);
    CHECK(center(make_builtin("C3wrC3")).order() == 3);
    CHECK(center(make_builtin("C2^3")).order() == 8);
  }
}

TEST_CASE("commutator subgroups") {
  Group d8 = make_builtin("D8");
  Subgroup derived = commutator_subgroup(d8, whole_group(d8), whole_group(d8));
  CHECK(derived.order() == 2);
  elem_t r2 = d8.mul(d8.generators[0], d8.generators[0]);
  CHECK(derived.contains(r2));
  CHECK(commutator_subgroup(d8, whole_group(d8), trivial_subgroup(d8)).order() ==
        1);
  Group q8 = make_builtin("Q8");
  CHECK(commutator_subgroup(q8, whole_group(q8), whole_group(q8)).order() == 2);
}

TEST_CASE("lower central series, class and coclass") {
  SUBCASE("D8") {
    SeriesReport r = lower_central_series(make_builtin("D8"));
    std::vector<elem_t> orders;
    for (const Subgroup& s : r.lower_central) orders.push_back(s.order());
    CHECK(orders == std::vector<elem_t>{8, 2, 1});
    CHECK(r.nilpotency_class == 2);
    CHECK(r.coclass == 1);
  }
  SUBCASE("abelian") {
    SeriesReport r = lower_central_series(make_builtin("C3^2"));
    CHECK(r.nilpotency_class == 1);
    CHECK(r.lower_central.size() == 2);
  }
  SUBCASE("D16") {
    SeriesReport r = lower_central_series(make_builtin("D16"));
    std::vector<elem_t> orders;
    for (const Subgroup& s : r.lower_central) orders.push_back(s.order());
    CHECK(orders == std::vector<elem_t>{16, 4, 2, 1});
    CHECK(r.nilpotency_class == 3);
    CHECK(r.coclass == 1);
  }
  SUBCASE("trivial group has class 0") {
    CHECK(lower_central_series(trivial_group()).nilpotency_class == 0);
  }
}

TEST_CASE("upper central series meets the lower one on maximal class groups") {
  for (const char* name : {"D8", "D16", "Q16", "SD16", "C3wrC3"}) {
    Group g = make_builtin(name);
    SeriesReport lower = lower_central_series(g);
    std::vector<Subgroup> upper = upper_central_series(g);
    REQUIRE(upper.size() == lower.lower_central.size());
    for (std::size_t i = 0; i < upper.size(); ++i)
      CHECK(upper[i].members ==
            lower.lower_central[lower.lower_central.size() - 1 - i].members);
  }
}

TEST_CASE("omega and agemo") {
  CHECK(omega(make_builtin("C4"), 1).order() == 2);
  Group g = direct_product(make_builtin("C9"), make_builtin("C3"));
  CHECK(agemo(g, 1).order() == 3);
  Group ea = make_builtin("C2^3");
  CHECK(omega(ea, 1).order() == 8);
  CHECK_THROWS_AS(omega(direct_product(make_builtin("C2"), make_builtin("C3")), 1),
                  NotAPGroup);
}

TEST_CASE("frattini subgroup") {
  Group d8 = make_builtin("D8");
  Subgroup phi = frattini(d8);
  CHECK(phi.order() == 2);
  CHECK(phi.contains(d8.mul(d8.generators[0], d8.generators[0])));
  CHECK(frattini(make_builtin("C2^3")).order() == 1);
  CHECK(frattini(make_builtin("C9")).order() == 3);
}

TEST_CASE("maximal subgroups") {
  SUBCASE("D8 has one cyclic and two Klein maximal subgroups") {
    Group d8 = make_builtin("D8");
    std::vector<Subgroup> maxs = maximal_subgroups(d8);
    REQUIRE(maxs.size() == 3);
    int cyclic = 0, klein = 0;
    for (const Subgroup& h : maxs) {
      CHECK(h.order() == 4);
      bool has4 = false;
      for (elem_t x : h.members)
        if (d8.element_order(x) == 4) has4 = true;
      (has4 ? cyclic : klein) += 1;
    }
    CHECK(cyclic == 1);
    CHECK(klein == 2);
  }
  SUBCASE("C_p has one maximal subgroup, the trivial one") {
    std::vector<Subgroup> maxs = maximal_subgroups(make_builtin("C3"));
    REQUIRE(maxs.size() == 1);
    CHECK(maxs[0].is_trivial());
  }
  SUBCASE("C3wrC3 has 4 maximal subgroups of order 27") {
    std::vector<Subgroup> maxs = maximal_subgroups(make_builtin("C3wrC3"));
    REQUIRE(maxs.size() == 4);
    for (const Subgroup& h : maxs) CHECK(h.order() == 27);
  }
  SUBCASE("the trivial group has none") {
    CHECK(maximal_subgroups(trivial_group()).empty());
  }
  SUBCASE("frattini equals the intersection of the maximal subgroups") {
    for (const char* name : {"D8", "Q8", "M16", "C3wrC3", "C4xC2"}) {
      Group g = make_builtin(name);
      Subgroup acc = whole_group(g);
      for (const Subgroup& h : maximal_subgroups(g)) acc = intersection(acc, h);
      CHECK(acc.members == frattini(g).members);
    }
  }
}

TEST_CASE("quotients") {
  Group d8 = make_builtin("D8");
  SUBCASE("D8 by its center is Klein") {
    QuotientResult q = quotient(d8, center(d8));
    CHECK(q.group.order == 4);
    for (elem_t x = 0; x < q.group.order; ++x)
      CHECK(q.group.element_order(x) <= 2);
    check_construction(q.group);
  }
  SUBCASE("projection is a homomorphism") {
    QuotientResult q = quotient(d8, center(d8));
    for (elem_t x = 0; x < d8.order; ++x)
      for (elem_t y = 0; y < d8.order; ++y)
        CHECK(q.projection[d8.mul(x, y)] ==
              q.group.mul(q.projection[x], q.projection[y]));
  }
  SUBCASE("by the trivial subgroup: an isomorphic copy") {
    QuotientResult q = quotient(d8, trivial_subgroup(d8));
    CHECK(q.group.order == 8);
    for (elem_t x = 0; x < 8; ++x)
      for (elem_t y = 0; y < 8; ++y)
        CHECK(q.projection[d8.mul(x, y)] ==
              q.group.mul(q.projection[x], q.projection[y]));
  }
  SUBCASE("by the whole group: trivial") {
    CHECK(quotient(d8, whole_group(d8)).group.order == 1);
  }
  SUBCASE("non-normal subgroup rejected") {
    elem_t s = d8.generators[1];
    Subgroup h = subgroup_generated(d8, std::vector<elem_t>{s});
    CHECK_THROWS_AS(quotient(d8, h), NotNormal);
  }
}

TEST_CASE("direct products") {
  Group v = direct_product(make_builtin("C2"), make_builtin("C2"));
  CHECK(v.order == 4);
  for (elem_t x = 0; x < 4; ++x) CHECK(v.element_order(x) <= 2);
  Group big = direct_product(make_builtin("D8"), make_builtin("C2"));
  CHECK(big.order == 16);
  CHECK(lower_central_series(big).nilpotency_class == 2);
  Group same = direct_product(trivial_group(), make_builtin("C3"));
  CHECK(same.order == 3);
  check_construction(big);
  CHECK_THROWS_AS(
      direct_product(make_builtin("D8"), make_builtin("C2"), "", ClosureCaps{8}),
      ClosureCapExceeded);
}

TEST_CASE("all subgroups") {
  CHECK(all_subgroups(make_builtin("C3")).size() == 2);
  Group v = make_builtin("C2^2");
  CHECK(all_subgroups(v).size() == 5);
  CHECK(oracles::naive_subgroup_count(v) == 5);
  Group q8 = make_builtin("Q8");
  CHECK(all_subgroups(q8).size() == 6);
  CHECK(oracles::naive_subgroup_count(q8) == 6);
  SUBCASE("matches subset enumeration on every catalog group of order <= 16") {
    for (const char* name : {"C8", "D8", "C2^4", "M16", "Q16"}) {
      Group g = make_builtin(name);
      CHECK(all_subgroups(g).size() == oracles::naive_subgroup_count(g));
    }
  }
  SUBCASE("order cap") {
    EnumerationCaps caps{.max_group_order = 4};
    CHECK_THROWS_AS(all_subgroups(make_builtin("D8"), caps),
                    EnumerationCapExceeded);
  }
}

TEST_CASE("normal core") {
  Group d8 = make_builtin("D8");
  elem_t s = d8.generators[1];
  Subgroup hs = subgroup_generated(d8, std::vector<elem_t>{s});
  CHECK(normal_core(d8, hs).is_trivial());
  Subgroup z = center(d8);
  CHECK(normal_core(d8, z).members == z.members);
  CHECK(normal_core(d8, whole_group(d8)).order() == 8);
}

TEST_CASE("series index ratios are powers of p") {
  for (const char* name : {"D8", "Q16", "C3wrC3", "He27"}) {
    Group g = make_builtin(name);
    int p = *g.prime;
    SeriesReport r = lower_central_series(g);
    for (std::size_t i = 0; i + 1 < r.lower_central.size(); ++i) {
      elem_t ratio = r.lower_central[i].order() / r.lower_central[i + 1].order();
      while (ratio % p == 0) ratio /= p;
      CHECK(ratio == 1);
      if (i >= 1)  // maximal class: |G_i : G_{i+1}| = p from gamma_2 on
        CHECK(r.lower_central[i].order() ==
              p * r.lower_central[i + 1].order());
    }
  }
}

TEST_CASE("subgroup extraction round-trips structure") {
  Group d16 = make_builtin("D16");
  Subgroup rot = subgroup_generated(d16, std::vector<elem_t>{d16.generators[0]});
  ExtractedGroup e = subgroup_as_group(rot, "C8");
  CHECK(e.group.order == 8);
  CHECK(e.group.element_order(1) == d16.element_order(e.to_parent[1]));
  check_construction(e.group);
}

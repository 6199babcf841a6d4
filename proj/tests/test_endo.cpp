#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "selfsim/builders.hpp"
#include "selfsim/endo.hpp"
#include "selfsim/pgroup.hpp"

using namespace selfsim;

namespace {

Subgroup cyclic_subgroup(const Group& g, elem_t x) {
  return subgroup_generated(g, std::vector<elem_t>{x});
}

}  // namespace

TEST_CASE("graph-subgroup homomorphism test") {
  Group c4 = make_builtin("C4");
  elem_t c = c4.generators[0];
  elem_t c2 = c4.mul(c, c);
  Subgroup h = cyclic_subgroup(c4, c2);  // C2 inside C4
  SUBCASE("order-4 image of an involution does not extend") {
    auto f = assignment_is_homomorphism(h, c4, std::vector<elem_t>{c2},
                                        std::vector<elem_t>{c});
    CHECK_FALSE(f.has_value());
  }
  SUBCASE("the embedding extends") {
    auto f = assignment_is_homomorphism(h, c4, std::vector<elem_t>{c2},
                                        std::vector<elem_t>{c2});
    REQUIRE(f.has_value());
    CHECK(f->apply(c2) == c2);
    CHECK(f->apply(kIdentity) == kIdentity);
  }
  SUBCASE("generators must generate") {
    Subgroup whole = whole_group(c4);
    CHECK_THROWS_AS(assignment_is_homomorphism(whole, c4,
                                               std::vector<elem_t>{c2},
                                               std::vector<elem_t>{c2}),
                    GeneratorsDontGenerate);
  }
}

TEST_CASE("homomorphism enumeration") {
  SUBCASE("C2 to C2: two homomorphisms") {
    Group c2 = make_builtin("C2");
    CHECK(homomorphisms(whole_group(c2), c2).size() == 2);
  }
  SUBCASE("Klein inside D8: 28 homomorphisms into D8") {
    Group d8 = make_builtin("D8");
    for (const Subgroup& h : maximal_subgroups(d8)) {
      if (!is_elementary_abelian(h)) continue;
      CHECK(homomorphisms(h, d8).size() == 28);
    }
  }
  SUBCASE("the trivial homomorphism is always present") {
    Group q8 = make_builtin("Q8");
    for (const Subgroup& h : maximal_subgroups(q8)) {
      bool found_trivial = false;
      for (const Homomorphism& f : homomorphisms(h, q8)) {
        bool trivial = true;
        for (elem_t img : f.images) trivial = trivial && img == kIdentity;
        found_trivial |= trivial;
      }
      CHECK(found_trivial);
    }
  }
  SUBCASE("every enumerated map is multiplicative, exhaustively") {
    Group d8 = make_builtin("D8");
    Subgroup h = maximal_subgroups(d8).front();
    for (const Homomorphism& f : homomorphisms(h, d8))
      for (elem_t x : h.members)
        for (elem_t y : h.members)
          REQUIRE(f.apply(d8.mul(x, y)) == d8.mul(f.apply(x), f.apply(y)));
  }
}

TEST_CASE("graph test agrees with the pointwise oracle over full spaces") {
  // every generator-image assignment, unpruned, on small catalog groups
  for (const char* name : {"C4", "C2^2", "D8", "Q8", "C9"}) {
    Group g = make_builtin(name);
    for (const Subgroup& h : maximal_subgroups(g)) {
      std::vector<elem_t> gens = minimal_generating_set(h);
      if (gens.empty()) continue;
      std::vector<std::uint64_t> radix(gens.size(), g.order);
      std::uint64_t space = 1;
      for (std::size_t i = 0; i < gens.size(); ++i) space *= g.order;
      for (std::uint64_t idx = 0; idx < space; ++idx) {
        std::vector<elem_t> images(gens.size());
        std::uint64_t v = idx;
        for (std::size_t i = gens.size(); i-- > 0;) {
          images[i] = static_cast<elem_t>(v % g.order);
          v /= g.order;
        }
        auto fast = assignment_is_homomorphism(h, g, gens, images);
        auto slow = oracles::naive_homomorphism(h, g, gens, images);
        REQUIRE(fast.has_value() == slow.has_value());
        if (fast) REQUIRE(fast->images == *slow);
      }
    }
  }
}

TEST_CASE("phi-core") {
  Group d8 = make_builtin("D8");
  SUBCASE("identity embedding has core H") {
    for (const Subgroup& h : maximal_subgroups(d8)) {
      std::vector<elem_t> images;
      for (elem_t x : h.members) images.push_back(x);
      Homomorphism f{h, &d8, images};
      CHECK(phi_core(f).members == h.members);
      CHECK_FALSE(is_simple(f));
    }
  }
  SUBCASE("trivial homomorphism has core H") {
    Subgroup h = maximal_subgroups(d8).front();
    Homomorphism f{h, &d8, std::vector<elem_t>(h.members.size(), kIdentity)};
    CHECK(phi_core(f).members == h.members);
  }
  SUBCASE("equals the brute-force maximum on all order <= 16 catalog groups") {
    for (const char* name : {"C4", "C2^2", "D8", "Q8", "C9", "M16", "SD16"}) {
      Group g = make_builtin(name);
      for (const Subgroup& h : maximal_subgroups(g))
        for (const Homomorphism& f : homomorphisms(h, g))
          REQUIRE(phi_core(f).members ==
                  oracles::brute_force_phi_core(f).members);
    }
  }
}

TEST_CASE("self-similarity decisions") {
  SUBCASE("D8 is self-similar with a verified witness") {
    Group g = make_builtin("D8");
    DecisionReport r = decide_self_similar(g);
    CHECK(r.self_similar);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->phi_core.is_trivial());
    CHECK(r.witness->index == 2);
    CHECK(oracles::brute_force_phi_core(r.witness->hom).is_trivial());
  }
  SUBCASE("C4 is not") {
    Group g = make_builtin("C4");
    DecisionReport r = decide_self_similar(g);
    CHECK_FALSE(r.self_similar);
    CHECK(r.stats.homomorphisms_found == 2);
    CHECK(r.stats.simple_found == 0);
  }
  SUBCASE("C3wrC3 is self-similar") {
    Group g = make_builtin("C3wrC3");
    DecisionReport r = decide_self_similar(g);
    CHECK(r.self_similar);
    REQUIRE(r.witness.has_value());
    CHECK(oracles::brute_force_phi_core(r.witness->hom).is_trivial());
  }
  SUBCASE("the trivial group is self-similar by convention, no witness") {
    DecisionReport r = decide_self_similar(trivial_group());
    CHECK(r.self_similar);
    CHECK_FALSE(r.witness.has_value());
  }
  SUBCASE("non-p-groups are rejected") {
    CHECK_THROWS_AS(
        decide_self_similar(direct_product(make_builtin("C2"), make_builtin("C3"))),
        NotAPGroup);
  }
}

TEST_CASE("serial and parallel kernels agree everywhere") {
  for (const char* name : {"C4", "D8", "Q8", "C2^4", "M27", "He27", "D16"}) {
    Group g = make_builtin(name);
    for (const Subgroup& h : maximal_subgroups(g)) {
      std::vector<elem_t> gens = minimal_generating_set(h);
      if (gens.empty()) continue;
      auto cands = image_candidates(g, gens);
      AssignmentScan serial = scan_assignments_serial(h, g, gens, cands);
      AssignmentScan parallel =
          scan_assignments_parallel(h, g, gens, cands, 2);
      CHECK(serial.space == parallel.space);
      CHECK(serial.homomorphisms == parallel.homomorphisms);
      CHECK(serial.simple == parallel.simple);
      CHECK(serial.first_simple == parallel.first_simple);
    }
  }
  SUBCASE("whole decisions agree, including stats and the witness") {
    for (const char* name : {"D8", "Q8", "C3^2", "C3wrC3"}) {
      Group g = make_builtin(name);
      DecisionReport serial = decide_self_similar(g, {.threads = 1});
      DecisionReport parallel = decide_self_similar(g, {.threads = 2});
      CHECK(serial.self_similar == parallel.self_similar);
      CHECK(serial.stats.assignments_tried == parallel.stats.assignments_tried);
      CHECK(serial.stats.homomorphisms_found ==
            parallel.stats.homomorphisms_found);
      CHECK(serial.stats.simple_found == parallel.stats.simple_found);
      CHECK(serial.witness.has_value() == parallel.witness.has_value());
      if (serial.witness) {
        CHECK(serial.witness->hom.domain.members ==
              parallel.witness->hom.domain.members);
        CHECK(serial.witness->hom.images == parallel.witness->hom.images);
      }
    }
  }
}

TEST_CASE("split-elementary-abelian criterion") {
  CHECK(sunic_criterion(make_builtin("D8")));
  CHECK_FALSE(sunic_criterion(make_builtin("Q8")));
  CHECK_FALSE(sunic_criterion(make_builtin("M27")));
  CHECK(sunic_criterion(make_builtin("He27")));
  CHECK(sunic_criterion(make_builtin("C2^4")));
  CHECK_FALSE(sunic_criterion(make_builtin("C4")));
}

TEST_CASE("maximal class criterion") {
  CHECK(maximal_class_criterion(make_builtin("C3wrC3")));
  CHECK_FALSE(maximal_class_criterion(make_builtin("D16")));
  CHECK_FALSE(maximal_class_criterion(make_builtin("Q16")));
  CHECK_THROWS_AS(maximal_class_criterion(make_builtin("Q8xC2")),
                  NotMaximalClass);
  CHECK_THROWS_AS(maximal_class_criterion(make_builtin("D8")), OrderTooSmall);
}

TEST_CASE("no simple endomorphism from maximal subgroups other than G_1") {
  for (const char* name : {"D16", "Q16", "SD16", "C3wrC3"}) {
    MaxScanReport r = scan_maximal_subgroups_excluding_g1(make_builtin(name));
    CHECK(r.rows.size() >= 2);
    CHECK(r.total_simple == 0);
  }
}

TEST_CASE("budget aborts the search") {
  CHECK_THROWS_AS(
      decide_self_similar(make_builtin("C3wrC3"), {.budget_secs = 1e-9}),
      BudgetExceeded);
}

TEST_CASE("witness is the first simple assignment in search order") {
  Group d8 = make_builtin("D8");
  DecisionReport r = decide_self_similar(d8);
  REQUIRE(r.witness.has_value());
  const Subgroup& h = r.witness->hom.domain;
  // no earlier maximal subgroup admits a simple homomorphism
  for (const Subgroup& m : maximal_subgroups(d8)) {
    if (m.members == h.members) break;
    for (const Homomorphism& f : homomorphisms(m, d8)) CHECK_FALSE(is_simple(f));
  }
  // and within H, no lexicographically earlier assignment is simple
  std::vector<elem_t> gens = minimal_generating_set(h);
  std::vector<elem_t> witness_images;
  for (elem_t gen : gens) witness_images.push_back(r.witness->hom.apply(gen));
  auto cands = image_candidates(d8, gens);
  AssignmentScan scan = scan_assignments_serial(h, d8, gens, cands);
  REQUIRE(scan.first_simple.has_value());
  CHECK(decode_assignment(cands, *scan.first_simple) == witness_images);
}

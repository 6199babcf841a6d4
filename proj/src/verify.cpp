#include "selfsim/verify.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "selfsim/builders.hpp"
#include "selfsim/pgroup.hpp"

namespace selfsim {

const Group& CatalogCache::get(const std::string& name) {
  auto it = by_name_.find(name);
  if (it != by_name_.end()) return *it->second;
  storage_.push_back(make_builtin(name));
  by_name_[name] = &storage_.back();
  return storage_.back();
}

const Group& CatalogCache::put(const std::string& key, Group g) {
  auto it = by_name_.find(key);
  if (it != by_name_.end()) return *it->second;
  storage_.push_back(std::move(g));
  by_name_[key] = &storage_.back();
  return storage_.back();
}

const DecisionReport& CatalogCache::decision(const std::string& name) {
  get(name);
  return decision_of(name);
}

const DecisionReport& CatalogCache::decision_of(const std::string& key) {
  auto it = decisions_.find(key);
  if (it != decisions_.end()) return it->second;
  const Group& g = *by_name_.at(key);
  return decisions_.emplace(key, decide_self_similar(g, opts_.decide))
      .first->second;
}

std::vector<std::string> suite_names() {
  return {"props", "omega1", "abelianMaximal", "maxclass", "theoremB"};
}

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

void row(std::vector<VerifyRow>& rows, const std::string& suite,
         const std::string& check, const std::string& group, bool pass,
         std::string detail = "") {
  rows.push_back(VerifyRow{suite, check, group, pass, std::move(detail)});
}

bool has_abelian_maximal(const Group& g) {
  return !abelian_maximal_subgroups(g).empty();
}

// ---------------------------------------------------------------- props --

void suite_props(CatalogCache& cache, std::vector<VerifyRow>& rows) {
  const std::string suite = "props";
  for (const std::string& name : catalog_names()) {
    const Group& g = cache.get(name);
    bool ok = true;
    for (elem_t x = 0; x < g.order && ok; ++x)
      ok = g.mul(kIdentity, x) == x && g.mul(x, kIdentity) == x &&
           g.mul(x, g.inverse(x)) == kIdentity;
    if (g.order <= 64) {
      for (elem_t x = 0; x < g.order && ok; ++x)
        for (elem_t y = 0; y < g.order && ok; ++y)
          for (elem_t z = 0; z < g.order && ok; ++z)
            ok = g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z));
    } else {
      std::mt19937 rng(2024);
      std::uniform_int_distribution<elem_t> pick(0, g.order - 1);
      for (int i = 0; i < 10000 && ok; ++i) {
        elem_t x = pick(rng), y = pick(rng), z = pick(rng);
        ok = g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z));
      }
    }
    ok = ok && subgroup_generated(g, g.generators).order() == g.order;
    row(rows, suite, "construction-invariants", name, ok);

    Subgroup acc = whole_group(g);
    for (const Subgroup& h : maximal_subgroups(g)) acc = intersection(acc, h);
    row(rows, suite, "frattini-is-maximal-intersection", name,
        acc.members == frattini(g).members);

    QuotientResult q = quotient(g, center(g));
    bool hom = true;
    for (elem_t x = 0; x < g.order && hom; ++x)
      for (elem_t y = 0; y < g.order && hom; ++y)
        hom = q.projection[g.mul(x, y)] ==
              q.group.mul(q.projection[x], q.projection[y]);
    row(rows, suite, "quotient-projection-is-homomorphism", name, hom);

    int p = prime_of(g);
    SeriesReport lcs = lower_central_series(g);
    bool ratios = true;
    for (std::size_t i = 0; i + 1 < lcs.lower_central.size(); ++i) {
      elem_t ratio =
          lcs.lower_central[i].order() / lcs.lower_central[i + 1].order();
      while (ratio % p == 0) ratio /= p;
      ratios = ratios && ratio == 1;
    }
    row(rows, suite, "lcs-indices-are-p-powers", name, ratios);

    int n = log_base(g.order, p);
    if (n >= 2 && lcs.nilpotency_class == n - 1) {
      bool central_p = true;
      for (std::size_t i = 1; i + 1 < lcs.lower_central.size(); ++i)
        central_p = central_p &&
                    lcs.lower_central[i].order() ==
                        p * lcs.lower_central[i + 1].order();
      row(rows, suite, "maximal-class-central-indices", name, central_p);

      std::vector<Subgroup> ucs = upper_central_series(g);
      bool match = ucs.size() == lcs.lower_central.size();
      for (std::size_t i = 0; match && i < ucs.size(); ++i)
        match = ucs[i].members ==
                lcs.lower_central[lcs.lower_central.size() - 1 - i].members;
      row(rows, suite, "ucs-equals-reversed-lcs", name, match);
    }
  }

  // elementary abelian groups decide self-similar
  for (const char* name : {"C2", "C2^2", "C2^3", "C2^4", "C3", "C3^2", "C3^3"}) {
    const DecisionReport& d = cache.decision(name);
    row(rows, suite, "elementary-abelian-self-similar", name, d.self_similar);
  }
}

// --------------------------------------------------------------- omega1 --

void suite_omega1(CatalogCache& cache, std::vector<VerifyRow>& rows) {
  const std::string suite = "omega1";
  for (const std::string& name : catalog_names()) {
    const Group& g = cache.get(name);
    if (!is_powerful(g)) continue;
    int p = prime_of(g);
    bool ok = true;
    std::string detail;
    try {
      Subgroup o = omega1_of_powerful(g);  // asserts the basis identity
      std::vector<elem_t> sq;
      for (elem_t x = 0; x < g.order; ++x) sq.push_back(g.mul(x, x));
      Subgroup nsub = subgroup_generated(g, sq);
      long long expected = ipow(p, d_of_subgroup(nsub));
      ok = o.order() == expected;
      detail = "|Omega_1(N)| = " + std::to_string(o.order());
    } catch (const Error& e) {
      ok = false;
      detail = e.what();
    }
    row(rows, suite, "omega1-from-basis", name, ok, detail);
  }

  // exponent bound on every witness with a uniform normal subgroup in H
  for (const std::string& name : catalog_names()) {
    const DecisionReport& d = cache.decision(name);
    if (!d.witness) continue;
    const Group& g = cache.get(name);
    const Subgroup& h = d.witness->hom.domain;
    int p = d.p;
    int checked = 0;
    bool ok = true;
    for (const Subgroup& u : all_subgroups(g)) {
      if (u.is_trivial() || u.order() == g.order) continue;
      bool inside = std::includes(h.members.begin(), h.members.end(),
                                  u.members.begin(), u.members.end());
      if (!inside || !is_normal(g, u) || !is_uniform_subgroup(u)) continue;
      ++checked;
      long long exp_u = exponent(subgroup_as_group(u).group);
      QuotientResult q = quotient(g, u);
      long long exp_q = exponent(q.group);
      long long bound = (p == 2) ? 4 * exp_q : exp_q;
      ok = ok && exp_u <= bound;
    }
    row(rows, suite, "witness-exponent-bound", name, ok,
        checked > 0 ? std::to_string(checked) + " uniform normal subgroups"
                    : "VACUOUS");
  }
}

// ------------------------------------------------------- abelianMaximal --

void suite_abelian_maximal(CatalogCache& cache, std::vector<VerifyRow>& rows) {
  const std::string suite = "abelianMaximal";
  for (const std::string& name : catalog_names()) {
    const Group& g = cache.get(name);
    if (!has_abelian_maximal(g)) continue;
    const DecisionReport& d = cache.decision(name);
    bool criterion = sunic_criterion(g);
    row(rows, suite, "decision-matches-split-criterion", name,
        d.self_similar == criterion,
        std::string("decide=") + (d.self_similar ? "true" : "false") +
            " criterion=" + (criterion ? "true" : "false"));
  }

  // commutator identities in the presence of an abelian maximal subgroup
  for (const std::string& name : catalog_names()) {
    const Group& g = cache.get(name);
    if (g.is_abelian() || !has_abelian_maximal(g)) continue;
    int p = prime_of(g);
    Subgroup derived =
        commutator_subgroup(g, whole_group(g), whole_group(g));
    Subgroup z = center(g);
    bool ok = g.order == p * derived.order() * z.order();  // |G:Z| = p|G'|
    for (const Subgroup& a : abelian_maximal_subgroups(g)) {
      for (elem_t x = 0; x < g.order && ok; ++x) {
        if (a.contains(x)) continue;
        std::set<elem_t> comms;
        for (elem_t m : a.members) comms.insert(g.commutator(x, m));
        ok = comms == std::set<elem_t>(derived.members.begin(),
                                       derived.members.end());
        if (ok) {
          Subgroup ca = intersection(centralizer(g, x), a);
          ok = derived.order() == a.order() / ca.order();
        }
      }
    }
    row(rows, suite, "commutator-identities", name, ok);
  }

  // odd p: self-similar forces every abelian maximal subgroup to be
  // elementary abelian and complemented
  for (const std::string& name : catalog_names()) {
    const Group& g = cache.get(name);
    if (prime_of(g) == 2 || !has_abelian_maximal(g)) continue;
    const DecisionReport& d = cache.decision(name);
    if (!d.self_similar) continue;
    bool ok = true;
    for (const Subgroup& a : abelian_maximal_subgroups(g))
      ok = ok && is_elementary_abelian(a) && splits_over(g, a).has_value();
    row(rows, suite, "odd-p-abelian-maximal-elementary", name, ok);
  }

  // at p = 2 the converse fails: D8 is self-similar with a non-elementary
  // abelian maximal subgroup
  {
    const Group& d8 = cache.get("D8");
    bool has_non_elementary = false;
    for (const Subgroup& a : abelian_maximal_subgroups(d8))
      if (!is_elementary_abelian(a)) has_non_elementary = true;
    row(rows, suite, "p2-converse-fails", "D8",
        cache.decision("D8").self_similar && has_non_elementary);
  }
}

// ------------------------------------------------------------- maxclass --

const char* kMaximalClassGe16[] = {"D16", "Q16", "SD16", "D32",
                                   "Q32", "SD32", "C3wrC3"};

void suite_maxclass(CatalogCache& cache, std::vector<VerifyRow>& rows) {
  const std::string suite = "maxclass";
  for (const char* name : kMaximalClassGe16) {
    const Group& g = cache.get(name);
    MaxScanReport scan = scan_maximal_subgroups_excluding_g1(g);
    std::ostringstream detail;
    detail << scan.rows.size() << " subgroups, "
           << scan.total_simple << " simple";
    row(rows, suite, "no-simple-endo-outside-g1", name, scan.total_simple == 0,
        detail.str());
  }

  for (const char* name : kMaximalClassGe16) {
    const Group& g = cache.get(name);
    int p = prime_of(g);
    bool ok = true;
    Subgroup z = center(g);
    std::vector<elem_t> uniform;
    try {
      uniform = uniform_elements(g);  // asserts the complement identity
    } catch (const Error&) {
      ok = false;
    }
    for (elem_t s : uniform) {
      int o = g.element_order(s);
      ok = ok && (o == p || o == p * p) && z.contains(g.power(s, p));
    }
    row(rows, suite, "uniform-element-characterization", name, ok,
        std::to_string(uniform.size()) + " uniform elements");
  }

  // Subgroups containing a uniform element: if x in K meets G_t \ G_{t+1}
  // then G_t <= K, and |K| = p^{n-t} forces K = <s, G_{t+1}>.
  for (const char* name : kMaximalClassGe16) {
    const Group& g = cache.get(name);
    int p = prime_of(g);
    int n = log_base(g.order, p);
    SeriesReport data = maximal_class_data(g);
    SeriesReport lcs = lower_central_series(g);
    std::vector<Subgroup> terms(n + 2, trivial_subgroup(g));
    terms[1] = *data.g1;
    for (int i = 2; i <= n; ++i)
      terms[i] = i <= static_cast<int>(lcs.lower_central.size())
                     ? lcs.lower_central[i - 1]
                     : trivial_subgroup(g);
    std::vector<char> uniform_mask(g.order, 0);
    for (elem_t s : uniform_elements(g)) uniform_mask[s] = 1;

    bool ok = true;
    int inspected = 0;
    for (const Subgroup& k : all_subgroups(g)) {
      bool has_uniform = false;
      for (elem_t x : k.members) has_uniform = has_uniform || uniform_mask[x];
      if (!has_uniform) continue;
      ++inspected;
      for (elem_t x : k.members) {
        for (int t = 1; t <= n - 1 && ok; ++t)
          if (terms[t].contains(x) && !terms[t + 1].contains(x))
            for (elem_t m : terms[t].members) ok = ok && k.contains(m);
      }
      int t = n - log_base(k.order(), p);
      for (elem_t s : k.members) {
        if (!uniform_mask[s] || !ok) continue;
        std::vector<elem_t> seed = terms[t + 1].members;
        seed.push_back(s);
        ok = subgroup_generated(g, seed).members == k.members;
      }
    }
    row(rows, suite, "uniform-subgroup-structure", name, ok,
        std::to_string(inspected) + " subgroups with a uniform element");
  }

  // degree of commutativity of G/Z is positive from order p^5 on
  for (const char* name : {"D32", "Q32", "SD32"}) {
    const Group& g = cache.get(name);
    QuotientResult q = quotient(g, center(g), std::string(name) + "/Z");
    SeriesReport data = maximal_class_data(q.group);
    row(rows, suite, "quotient-degree-of-commutativity", name,
        data.degree_of_commutativity.value_or(-1) >= 1,
        "ell(G/Z) = " +
            std::to_string(data.degree_of_commutativity.value_or(-1)));
  }
}

// ------------------------------------------------------------- theoremB --

void suite_theoremB(CatalogCache& cache, std::vector<VerifyRow>& rows) {
  const std::string suite = "theoremB";
  for (const char* name : kMaximalClassGe16) {
    const Group& g = cache.get(name);
    const DecisionReport& d = cache.decision(name);
    bool criterion = maximal_class_criterion(g);
    row(rows, suite, "decision-matches-g1-criterion", name,
        d.self_similar == criterion,
        std::string("decide=") + (d.self_similar ? "true" : "false") +
            " criterion=" + (criterion ? "true" : "false"));
  }

  // order bound p^(p+1) for self-similar maximal class groups
  for (const std::string& name : catalog_names()) {
    const Group& g = cache.get(name);
    int p = prime_of(g);
    int n = log_base(g.order, p);
    if (n < 2 || lower_central_series(g).nilpotency_class != n - 1) continue;
    if (g.order <= ipow(p, p + 1)) continue;
    row(rows, suite, "order-bound", name, !cache.decision(name).self_similar,
        "order " + std::to_string(g.order) + " > p^(p+1)");
  }
  // and the bound is sharp at p = 2 and p = 3
  row(rows, suite, "order-bound-sharp", "D8",
      cache.decision("D8").self_similar);
  row(rows, suite, "order-bound-sharp", "C3wrC3",
      cache.decision("C3wrC3").self_similar);

  // G/Z(G) of a maximal class group with G_1 abelian is self-similar
  {
    const Group& g = cache.get("C3wrC3");
    QuotientResult q = quotient(g, center(g), "C3wrC3/Z");
    const Group& gz = cache.put("C3wrC3/Z", std::move(q.group));
    const DecisionReport& d = cache.decision_of("C3wrC3/Z");
    row(rows, suite, "quotient-by-center-self-similar", "C3wrC3",
        d.self_similar && gz.order == 27);
  }
}

}  // namespace

std::vector<VerifyRow> run_suite(const std::string& suite,
                                 CatalogCache& cache) {
  std::vector<VerifyRow> rows;
  bool all = suite == "all";
  bool known = all;
  if (all || suite == "props") suite_props(cache, rows), known = true;
  if (all || suite == "omega1") suite_omega1(cache, rows), known = true;
  if (all || suite == "abelianMaximal")
    suite_abelian_maximal(cache, rows), known = true;
  if (all || suite == "maxclass") suite_maxclass(cache, rows), known = true;
  if (all || suite == "theoremB") suite_theoremB(cache, rows), known = true;
  if (!known) throw Error("unknown suite: " + suite);
  return rows;
}

std::vector<VerifyRow> run_suite(const std::string& suite,
                                 const VerifyOptions& opts) {
  CatalogCache cache(opts);
  return run_suite(suite, cache);
}

}  // namespace selfsim

#include "selfsim/tree.hpp"

#include <algorithm>
#include <cassert>

#include <json.hpp>

namespace selfsim {

WreathRecursion wreath_recursion(const Group& g, const VirtualEndomorphism& ve,
                                 bool allow_non_simple) {
  if (!allow_non_simple && !ve.phi_core.is_trivial())
    throw NotSimple("wreath_recursion: endomorphism is not simple");
  const Subgroup& h = ve.hom.domain;
  assert(h.parent == &g && ve.hom.codomain == &g);
  const elem_t p = g.order / h.order();

  // right cosets H*x, numbered by least member in ascending scan order;
  // the least member is also the coset representative
  std::vector<elem_t> coset_of(g.order, -1);
  std::vector<elem_t> transversal;
  for (elem_t x = 0; x < g.order; ++x) {
    if (coset_of[x] >= 0) continue;
    elem_t id = static_cast<elem_t>(transversal.size());
    transversal.push_back(x);
    for (elem_t m : h.members) coset_of[g.mul(m, x)] = id;
  }
  assert(static_cast<elem_t>(transversal.size()) == p);
  assert(transversal[0] == kIdentity);

  WreathRecursion a;
  a.alphabet_size = p;
  a.group = &g;
  a.transversal = transversal;
  a.states.resize(g.order);
  for (elem_t s = 0; s < g.order; ++s) {
    AutomatonState& st = a.states[s];
    st.root_perm.resize(p);
    st.sections.resize(p);
    for (elem_t i = 0; i < p; ++i) {
      elem_t z = g.mul(transversal[i], s);
      elem_t j = coset_of[z];
      elem_t hh = g.mul(z, g.inverse(transversal[j]));
      assert(h.contains(hh));
      st.root_perm[i] = j;
      st.sections[i] = ve.hom.apply(hh);
    }
  }
  return a;
}

elem_t section(const WreathRecursion& a, elem_t state,
               std::span<const int> word) {
  for (int x : word) state = a.states[state].sections[x];
  return state;
}

std::vector<int> act(const WreathRecursion& a, elem_t state,
                     std::span<const int> word) {
  std::vector<int> out;
  out.reserve(word.size());
  for (int x : word) {
    out.push_back(a.states[state].root_perm[x]);
    state = a.states[state].sections[x];
  }
  return out;
}

std::vector<long long> level_permutation(const WreathRecursion& a,
                                         elem_t state, int level) {
  long long leaves = 1;
  for (int i = 0; i < level; ++i) {
    leaves *= a.alphabet_size;
    if (leaves > kMaxLevelLeaves)
      throw LevelTooLarge("level_permutation: p^n exceeds leaf cap");
  }
  std::vector<long long> perm(leaves);
  std::vector<int> word(level);
  for (long long leaf = 0; leaf < leaves; ++leaf) {
    long long v = leaf;
    for (int i = level; i-- > 0;) {
      word[i] = static_cast<int>(v % a.alphabet_size);
      v /= a.alphabet_size;
    }
    std::vector<int> img = act(a, state, word);
    long long out = 0;
    for (int i = 0; i < level; ++i) out = out * a.alphabet_size + img[i];
    perm[leaf] = out;
  }
  return perm;
}

std::vector<Subgroup> kernel_chain(const WreathRecursion& a) {
  const Group& g = *a.group;
  std::vector<Subgroup> chain;
  chain.push_back(whole_group(g));  // level 0
  for (;;) {
    const Subgroup& prev = chain.back();
    std::vector<char> pm = prev.mask();
    std::vector<elem_t> next;
    for (elem_t s : prev.members) {
      const AutomatonState& st = a.states[s];
      bool fixes = true;
      for (int i = 0; i < a.alphabet_size && fixes; ++i)
        fixes = st.root_perm[i] == i && pm[st.sections[i]];
      if (fixes) next.push_back(s);
    }
    if (next.size() == prev.members.size()) break;  // stable
    chain.push_back(Subgroup{&g, std::move(next)});
    if (chain.back().is_trivial()) break;
  }
  return chain;
}

int faithful_depth(const WreathRecursion& a) {
  std::vector<Subgroup> chain = kernel_chain(a);
  if (!chain.back().is_trivial())
    throw NotFaithful("faithful_depth: kernel chain stabilizes at order " +
                      std::to_string(chain.back().order()));
  return static_cast<int>(chain.size()) - 1;
}

bool is_level_transitive(const WreathRecursion& a, int level) {
  long long leaves = 1;
  for (int i = 0; i < level; ++i) {
    leaves *= a.alphabet_size;
    if (leaves > kMaxLevelLeaves)
      throw LevelTooLarge("is_level_transitive: p^n exceeds leaf cap");
  }
  std::vector<std::vector<long long>> gen_perms;
  for (elem_t gen : a.group->generators)
    gen_perms.push_back(level_permutation(a, gen, level));
  // orbit of leaf 0
  std::vector<char> seen(leaves, 0);
  std::vector<long long> queue{0};
  seen[0] = 1;
  for (std::size_t at = 0; at < queue.size(); ++at) {
    for (const auto& perm : gen_perms) {
      long long img = perm[queue[at]];
      if (!seen[img]) {
        seen[img] = 1;
        queue.push_back(img);
      }
    }
  }
  return static_cast<long long>(queue.size()) == leaves;
}

Portrait portrait(const WreathRecursion& a, elem_t state, int depth) {
  if (depth > kMaxPortraitDepth)
    throw LevelTooLarge("portrait: depth exceeds cap");
  Portrait p;
  p.root_perm = a.states[state].root_perm;
  if (depth > 0)
    for (int i = 0; i < a.alphabet_size; ++i)
      p.children.push_back(portrait(a, a.states[state].sections[i], depth - 1));
  return p;
}

AutomatonDocument to_document(const WreathRecursion& a) {
  AutomatonDocument doc;
  doc.alphabet_size = a.alphabet_size;
  doc.transversal = a.transversal;
  doc.states = a.states;
  for (std::size_t i = 0; i < a.group->generators.size(); ++i)
    doc.generator_states.emplace_back("g" + std::to_string(i),
                                      a.group->generators[i]);
  return doc;
}

std::string serialize_automaton(const AutomatonDocument& doc) {
  nlohmann::ordered_json j;
  j["alphabet_size"] = doc.alphabet_size;
  j["transversal"] = doc.transversal;
  j["states"] = nlohmann::ordered_json::array();
  for (const AutomatonState& st : doc.states) {
    nlohmann::ordered_json s;
    s["perm"] = st.root_perm;
    s["sections"] = st.sections;
    j["states"].push_back(std::move(s));
  }
  j["generator_states"] = nlohmann::ordered_json::object();
  for (const auto& [name, state] : doc.generator_states)
    j["generator_states"][name] = state;
  return j.dump(2) + "\n";
}

AutomatonDocument parse_automaton(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::ordered_json::parse_error& e) {
    throw ParseError(std::string("automaton document: ") + e.what(), 0, 0);
  }
  try {
    AutomatonDocument doc;
    doc.alphabet_size = j.at("alphabet_size").get<int>();
    doc.transversal = j.at("transversal").get<std::vector<elem_t>>();
    for (const auto& s : j.at("states")) {
      AutomatonState st;
      st.root_perm = s.at("perm").get<std::vector<int>>();
      st.sections = s.at("sections").get<std::vector<elem_t>>();
      doc.states.push_back(std::move(st));
    }
    // ordered_json preserves document order, so round-trips are byte-stable
    for (const auto& [name, state] : j.at("generator_states").items())
      doc.generator_states.emplace_back(name, state.get<elem_t>());
    return doc;
  } catch (const nlohmann::ordered_json::exception& e) {
    throw ParseError(std::string("automaton document: ") + e.what(), 0, 0);
  }
}

}  // namespace selfsim

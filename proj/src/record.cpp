#include "selfsim/record.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "selfsim/builders.hpp"
#include "selfsim/pgroup.hpp"
#include "selfsim/version.hpp"

namespace selfsim {

AnalysisRecord analyze_group(const Group& g, const AnalysisOptions& opts) {
  AnalysisRecord r;
  r.engine = kEngineVersion;
  r.name = g.name;
  r.order = g.order;
  if (g.order > 1) {
    r.p = prime_of(g);
    r.d = minimal_generator_count(g);
    try {
      r.rank = rank(g, opts.rank_caps);
    } catch (const EnumerationCapExceeded&) {
      r.rank = std::nullopt;
    }
    SeriesReport series = lower_central_series(g);
    r.nilpotency_class = series.nilpotency_class;
    r.coclass = series.coclass;
    r.powerful = is_powerful(g);
    r.maximal_class = g.order >= r.p * r.p ? is_maximal_class(g) : false;
  } else {
    r.rank = 0;
  }

  DecisionReport decision = decide_self_similar(g, opts.decide);
  r.self_similar = decision.self_similar;
  r.search = decision.stats;
  r.elapsed_secs = decision.elapsed_secs;
  if (decision.witness) {
    AnalysisRecord::WitnessSummary w;
    w.subgroup_order = decision.witness->hom.domain.order();
    w.generators = minimal_generating_set(decision.witness->hom.domain);
    for (elem_t gen : w.generators)
      w.images.push_back(decision.witness->hom.apply(gen));
    r.witness = std::move(w);
  }
  return r;
}

std::string record_to_json_line(const AnalysisRecord& r) {
  nlohmann::ordered_json j;
  j["engine"] = r.engine;
  j["name"] = r.name;
  j["order"] = r.order;
  j["p"] = r.p;
  j["d"] = r.d;
  if (r.rank)
    j["rank"] = *r.rank;
  else
    j["rank"] = nullptr;  // enumeration capped
  j["class"] = r.nilpotency_class;
  j["coclass"] = r.coclass;
  j["powerful"] = r.powerful;
  j["maximal_class"] = r.maximal_class;
  j["self_similar"] = r.self_similar;
  if (r.witness) {
    nlohmann::ordered_json w;
    w["subgroup_order"] = r.witness->subgroup_order;
    w["generators"] = r.witness->generators;
    w["images"] = r.witness->images;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  nlohmann::ordered_json s;
  s["maximal_subgroups"] = r.search.maximal_subgroups_examined;
  s["tried"] = r.search.assignments_tried;
  s["pruned"] = r.search.assignments_pruned;
  s["homomorphisms"] = r.search.homomorphisms_found;
  s["simple"] = r.search.simple_found;
  j["search"] = std::move(s);
  return j.dump();
}

std::string record_to_text(const AnalysisRecord& r) {
  std::ostringstream out;
  out << "group          " << r.name << "\n";
  out << "order          " << r.order << "\n";
  out << "p              " << r.p << "\n";
  out << "d(G)           " << r.d << "\n";
  out << "rank           ";
  if (r.rank)
    out << *r.rank << "\n";
  else
    out << "capped\n";
  out << "class          " << r.nilpotency_class << "\n";
  out << "coclass        " << r.coclass << "\n";
  out << "powerful       " << (r.powerful ? "yes" : "no") << "\n";
  out << "maximal class  " << (r.maximal_class ? "yes" : "no") << "\n";
  out << "self-similar   " << (r.self_similar ? "yes" : "no") << "\n";
  if (r.witness) {
    out << "witness        H of order " << r.witness->subgroup_order
        << ", generators [";
    for (std::size_t i = 0; i < r.witness->generators.size(); ++i)
      out << (i ? " " : "") << r.witness->generators[i];
    out << "] -> [";
    for (std::size_t i = 0; i < r.witness->images.size(); ++i)
      out << (i ? " " : "") << r.witness->images[i];
    out << "]\n";
  }
  out << "search         " << r.search.maximal_subgroups_examined
      << " maximal subgroups, " << r.search.assignments_tried << " tried, "
      << r.search.assignments_pruned << " pruned, "
      << r.search.homomorphisms_found << " homomorphisms, "
      << r.search.simple_found << " simple\n";
  return out.str();
}

int write_catalog(const std::string& path, const AnalysisOptions& opts) {
  std::set<std::pair<std::string, std::string>> present;
  {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        nlohmann::json j = nlohmann::json::parse(line);
        present.emplace(j.value("engine", ""), j.value("name", ""));
      } catch (const nlohmann::json::parse_error&) {
        // foreign lines are preserved and ignored
      }
    }
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot open " + path + " for appending");
  int appended = 0;
  for (const std::string& name : catalog_names()) {
    if (present.count({kEngineVersion, name})) continue;
    Group g = make_builtin(name);
    AnalysisRecord r = analyze_group(g, opts);
    out << record_to_json_line(r) << "\n";
    ++appended;
  }
  if (!out.flush()) throw IoError("write to " + path + " failed");
  return appended;
}

}  // namespace selfsim

#pragma once

#include <deque>
#include <map>
#include <string>
#include <vector>

#include "selfsim/endo.hpp"
#include "selfsim/group.hpp"

namespace selfsim {

struct VerifyRow {
  std::string suite;
  std::string check;
  std::string group;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  DecideOptions decide;
};

// Caches catalog groups and their self-similarity decisions for the
// duration of a verification run. Groups live in a deque so subgroup
// pointers into them stay valid.
class CatalogCache {
 public:
  explicit CatalogCache(const VerifyOptions& opts = {}) : opts_(opts) {}

  const Group& get(const std::string& name);
  const DecisionReport& decision(const std::string& name);
  // registers a derived group (e.g. a quotient) under a unique key
  const Group& put(const std::string& key, Group g);
  const DecisionReport& decision_of(const std::string& key);

 private:
  VerifyOptions opts_;
  std::deque<Group> storage_;
  std::map<std::string, const Group*> by_name_;
  std::map<std::string, DecisionReport> decisions_;
};

std::vector<std::string> suite_names();  // the CLI-visible suite set

// Runs one suite (or "all") over the built-in catalog.
std::vector<VerifyRow> run_suite(const std::string& suite,
                                 CatalogCache& cache);
std::vector<VerifyRow> run_suite(const std::string& suite,
                                 const VerifyOptions& opts = {});

}  // namespace selfsim

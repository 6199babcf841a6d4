#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selfsim/endo.hpp"
#include "selfsim/group.hpp"

namespace selfsim {

// Persisted per-group analysis result. Record lines are deterministic:
// they carry no wall-clock fields, so re-running the same engine version on
// the same input reproduces them byte for byte.
struct AnalysisRecord {
  std::string engine;
  std::string name;
  elem_t order = 1;
  int p = 0;
  int d = 0;
  std::optional<int> rank;  // absent = enumeration capped
  int nilpotency_class = 0;
  int coclass = 0;
  bool powerful = false;
  bool maximal_class = false;  // false for order < p^2
  bool self_similar = false;
  struct WitnessSummary {
    elem_t subgroup_order = 0;
    std::vector<elem_t> generators;
    std::vector<elem_t> images;
  };
  std::optional<WitnessSummary> witness;
  SearchStats search;
  double elapsed_secs = 0.0;  // reported to humans, never persisted
};

struct AnalysisOptions {
  DecideOptions decide;
  EnumerationCaps rank_caps;
};

AnalysisRecord analyze_group(const Group& g, const AnalysisOptions& opts = {});

// One record as a single JSON line with fixed field order.
std::string record_to_json_line(const AnalysisRecord& r);
// Human-readable block for terminal output.
std::string record_to_text(const AnalysisRecord& r);

// Appends records for every catalog group that is not already present in
// the file under the same engine version (idempotent). Returns the number
// of appended records.
int write_catalog(const std::string& path, const AnalysisOptions& opts = {});

}  // namespace selfsim

// Command-line front end: analyze single groups, emit tree-action automata,
// run the verification suites over the built-in catalog, and persist
// analysis records.
//
// Exit codes: 0 success, 1 verification failures, 2 input error,
// 3 precondition violation, 4 I/O error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "selfsim/builders.hpp"
#include "selfsim/endo.hpp"
#include "selfsim/pgroup.hpp"
#include "selfsim/record.hpp"
#include "selfsim/tree.hpp"
#include "selfsim/verify.hpp"
#include "selfsim/version.hpp"

using namespace selfsim;

namespace {

struct GroupSource {
  std::string builtin;
  std::string file;
};

void add_source_options(CLI::App* cmd, GroupSource& src) {
  auto* b = cmd->add_option("--builtin", src.builtin,
                            "built-in group name (see `selfsim list`)");
  auto* f = cmd->add_option("--file", src.file, "group spec file to load");
  b->excludes(f);
  f->excludes(b);
}

Group resolve_group(const GroupSource& src) {
  if (!src.builtin.empty()) return make_builtin(src.builtin);
  if (!src.file.empty()) {
    std::ifstream in(src.file);
    if (!in) throw IoError("cannot open " + src.file);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_group(parse_group_file(buf.str()));
  }
  throw std::invalid_argument("one of --builtin or --file is required");
}

int run_analyze(const GroupSource& src, const AnalysisOptions& opts,
                const std::string& out_path) {
  Group g = resolve_group(src);
  AnalysisRecord r = analyze_group(g, opts);
  std::cout << record_to_text(r);
  std::cout << "record: " << record_to_json_line(r) << "\n";
  std::cerr << "elapsed: " << static_cast<long long>(r.elapsed_secs * 1000)
            << " ms\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::app);
    if (!out) throw IoError("cannot open " + out_path + " for appending");
    out << record_to_json_line(r) << "\n";
    if (!out.flush()) throw IoError("write to " + out_path + " failed");
  }
  return 0;
}

int run_automaton(const GroupSource& src, const DecideOptions& opts, int depth,
                  const std::string& out_path) {
  Group g = resolve_group(src);
  DecisionReport decision = decide_self_similar(g, opts);
  if (!decision.witness) {
    if (decision.self_similar)  // trivial group: nothing to emit
      throw NotSelfSimilar("the trivial group has no witness automaton");
    throw NotSelfSimilar(g.name + " is not self-similar");
  }
  WreathRecursion a = wreath_recursion(g, *decision.witness);
  std::string doc = serialize_automaton(to_document(a));

  std::ostringstream report;
  report << "states: " << a.states.size()
         << "  alphabet: " << a.alphabet_size << "\n";
  report << "faithful_depth: " << faithful_depth(a) << "\n";
  for (int level = 1; level <= depth; ++level) {
    bool transitive;
    try {
      transitive = is_level_transitive(a, level);
    } catch (const LevelTooLarge&) {
      report << "level " << level << ": skipped (leaf cap)\n";
      continue;
    }
    report << "level " << level << ": "
           << (transitive ? "transitive" : "not transitive") << "\n";
  }

  if (out_path.empty()) {
    std::cout << doc;
    std::cout << report.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot open " + out_path);
    out << doc;
    if (!out.flush()) throw IoError("write to " + out_path + " failed");
    std::cout << report.str();
  }
  return 0;
}

int run_verify(const std::string& suite, const VerifyOptions& opts) {
  std::vector<VerifyRow> rows = run_suite(suite, opts);
  std::size_t failed = 0;
  for (const VerifyRow& r : rows) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.suite << "  "
              << r.check << "  " << r.group;
    if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
    std::cout << "\n";
    if (!r.pass) ++failed;
  }
  std::cout << rows.size() - failed << "/" << rows.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

int run_catalog(const std::string& out_path, const AnalysisOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  int appended = write_catalog(out_path, opts);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  std::cout << "appended " << appended << " records to " << out_path << "\n";
  std::cerr << "elapsed: " << static_cast<long long>(ms) << " ms\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"self-similarity analyzer for finite p-groups"};
  app.set_version_flag("--version", std::string(kEngineVersion));
  app.require_subcommand(1);

  int workers = 0;
  double budget = 0.0;
  app.add_option("--workers", workers,
                 "search worker threads (0 = all cores, 1 = serial)")
      ->capture_default_str();
  app.add_option("--budget-secs", budget,
                 "abort a decision after this many seconds");

  GroupSource analyze_src, automaton_src;
  std::string analyze_out, automaton_out, catalog_out;
  std::string suite = "all";
  int depth = 3;

  CLI::App* analyze =
      app.add_subcommand("analyze", "structural report and decision");
  add_source_options(analyze, analyze_src);
  analyze->add_option("--out", analyze_out, "append the record to this file");

  CLI::App* automaton = app.add_subcommand(
      "automaton", "emit the wreath recursion of the witness action");
  add_source_options(automaton, automaton_src);
  automaton->add_option("--depth", depth,
                        "levels in the transitivity table")
      ->capture_default_str();
  automaton->add_option("--out", automaton_out,
                        "write the document here instead of stdout");

  CLI::App* verify = app.add_subcommand(
      "verify", "run verification suites over the built-in catalog");
  verify
      ->add_option("--suite", suite,
                   "all|theoremB|abelianMaximal|omega1|maxclass|props")
      ->capture_default_str();

  CLI::App* catalog =
      app.add_subcommand("catalog", "append one record per catalog group");
  catalog->add_option("--out", catalog_out, "records file (JSON lines)")
      ->required();

  CLI::App* list = app.add_subcommand("list", "list built-in group names");

  CLI11_PARSE(app, argc, argv);

  DecideOptions decide{workers, budget};
  AnalysisOptions aopts;
  aopts.decide = decide;

  try {
    if (analyze->parsed()) return run_analyze(analyze_src, aopts, analyze_out);
    if (automaton->parsed())
      return run_automaton(automaton_src, decide, depth, automaton_out);
    if (verify->parsed()) return run_verify(suite, VerifyOptions{decide});
    if (catalog->parsed()) return run_catalog(catalog_out, aopts);
    if (list->parsed()) {
      for (const std::string& name : builtin_names())
        std::cout << name << "\n";
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotABijection& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OrderMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ClosureCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotAPGroup& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << " (partial search, no decision)\n";
    return 3;
  } catch (const NotSelfSimilar& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

// Command-line front end: scenario files, the scripted verification suite,
// and single-shot computations, with JSON or aligned-text reports.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <extscope/scenario.hpp>
#include <extscope/verification.hpp>

namespace {

using extscope::Json;

std::string inline_scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool all_scalars(const Json& arr) {
  for (const auto& v : arr)
    if (v.is_object() || v.is_array()) return false;
  return true;
}

void print_tree(std::ostream& os, const Json& j, int indent) {
  std::string pad(static_cast<size_t>(indent), ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const Json& v = it.value();
      if (v.is_object() || (v.is_array() && !all_scalars(v))) {
        os << pad << it.key() << ":\n";
        print_tree(os, v, indent + 2);
      } else if (v.is_array()) {
        os << pad << it.key() << ": [";
        for (size_t k = 0; k < v.size(); ++k)
          os << (k ? ", " : "") << inline_scalar(v[k]);
        os << "]\n";
      } else {
        os << pad << it.key() << ": " << inline_scalar(v) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object() || v.is_array()) {
        os << pad << "-\n";
        print_tree(os, v, indent + 2);
      } else {
        os << pad << "- " << inline_scalar(v) << "\n";
      }
    }
  } else {
    os << pad << inline_scalar(j) << "\n";
  }
}

int cmd_run(const std::string& file, bool json, bool timings,
            const std::optional<long long>& cap) {
  std::ifstream in(file);
  if (!in)
    throw extscope::UsageError("cannot open scenario file '" + file + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  extscope::ScenarioDoc doc = extscope::parse_scenario_text(buf.str(), file);
  if (doc.name.empty()) {
    size_t slash = file.find_last_of('/');
    doc.name = slash == std::string::npos ? file : file.substr(slash + 1);
  }
  if (cap) doc.degree_cap = *cap;
  extscope::ScenarioReport rep = extscope::run_scenario_doc(doc);
  if (json)
    std::cout << extscope::js_scenario_report(rep, timings).dump(2) << "\n";
  else
    std::cout << extscope::text_scenario_report(rep, timings);
  return rep.all_pass ? 0 : 1;
}

int cmd_verify(std::optional<int> only, unsigned long long seed,
               size_t corpus_size, bool json,
               const std::optional<long long>& cap) {
  extscope::VerifyOptions vo;
  vo.seed = seed;
  vo.corpus_size = corpus_size;
  if (cap) vo.gb.cap = *cap;
  std::vector<extscope::VerifyGroupResult> groups =
      extscope::run_verification(vo, only);
  bool all = true;
  size_t total = 0, failed = 0;
  for (const auto& g : groups)
    for (const auto& c : g.checks) {
      ++total;
      if (!c.pass) {
        ++failed;
        all = false;
      }
    }
  if (json) {
    Json j;
    j["seed"] = seed;
    j["corpus_size"] = corpus_size;
    j["groups"] = Json::array();
    for (const auto& g : groups) {
      Json gj;
      gj["group"] = g.group;
      gj["checks"] = extscope::js_checks(g.checks);
      j["groups"].push_back(gj);
    }
    j["checks"] = total;
    j["failures"] = failed;
    j["all_pass"] = all;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& g : groups) {
      std::cout << "group " << g.group << "\n";
      for (const auto& c : g.checks) {
        std::cout << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
        if (!c.detail.empty()) std::cout << " — " << c.detail;
        std::cout << "\n";
      }
    }
    std::cout << total << " checks, " << failed << " failed\n";
  }
  return all ? 0 : 1;
}

int cmd_compute(const std::string& sub, const std::string& ring,
                const std::string& module_src, const std::string& ideal_src,
                const std::string& other_src, std::optional<long long> i,
                std::optional<long long> window, bool json, bool timings,
                const std::optional<long long>& cap) {
  if (!module_src.empty() && !ideal_src.empty())
    throw extscope::UsageError("give either --module or --ideal, not both");
  if (module_src.empty() && ideal_src.empty())
    throw extscope::UsageError("a --module or --ideal is needed");
  extscope::ScenarioDoc doc;
  doc.name = "compute";
  doc.ring = ring;
  if (cap) doc.degree_cap = *cap;
  extscope::ScenarioTask task;
  task.kv["op"] = extscope::TValue::str(sub);
  task.kv["module"] = extscope::TValue::str(
      ideal_src.empty() ? module_src : "ideal: " + ideal_src);
  if (sub == "ext") {
    if (!i) throw extscope::UsageError("compute ext needs --i");
    task.kv["i"] = extscope::TValue::integer(*i);
    if (!other_src.empty())
      task.kv["other"] = extscope::TValue::str(other_src);
  }
  if ((sub == "resolve" || sub == "eass") && window)
    task.kv["window"] = extscope::TValue::integer(*window);
  doc.tasks.push_back(std::move(task));
  extscope::detail::validate_tasks(doc);
  extscope::ScenarioReport rep = extscope::run_scenario_doc(doc);
  const extscope::TaskOutcome& out = rep.tasks.at(0);
  if (json) {
    Json j;
    j["op"] = out.op;
    j["ring"] = rep.ring;
    j["data"] = out.data;
    j["warnings"] = out.warnings;
    if (timings) j["ms"] = out.ms;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "op: " << out.op << "\nring: " << rep.ring << "\n";
    if (sub == "eass") {
      bool periodic = out.data.value("periodic", false);
      if (periodic)
        std::cout << "periodic from step " << out.data["start"].get<long long>()
                  << " (period " << out.data["period"].get<long long>()
                  << ")\n";
      else
        std::cout << "no periodicity detected within the window\n";
    }
    print_tree(std::cout, out.data, 0);
    for (const auto& w : out.warnings) std::cout << "note: " << w << "\n";
    if (timings) std::cout << "ms: " << out.ms << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Ext-module computations over graded polynomial rings"};
  app.require_subcommand(1);

  // run <file>
  auto* run = app.add_subcommand("run", "execute a scenario file");
  std::string run_file;
  bool run_json = false, run_timings = false;
  std::optional<long long> run_cap;
  run->add_option("file", run_file, "scenario file (keyed text or JSON)")
      ->required();
  run->add_flag("--json", run_json, "JSON report");
  run->add_flag("--timings", run_timings, "include wall-clock timings");
  run->add_option("--degree-cap", run_cap, "degree cap for basis engines");

  // verify-paper
  auto* verify = app.add_subcommand(
      "verify-paper", "run the scripted verification groups (2..6)");
  std::optional<int> verify_only;
  unsigned long long verify_seed = 20240901ULL;
  size_t verify_corpus = 100;
  bool verify_json = false;
  std::optional<long long> verify_cap;
  verify->add_option("--only", verify_only, "run a single group (2..6)");
  verify->add_option("--seed", verify_seed, "corpus seed");
  verify->add_option("--corpus-size", verify_corpus, "corpus size");
  verify->add_flag("--json", verify_json, "JSON report");
  verify->add_option("--degree-cap", verify_cap,
                     "degree cap for basis engines");

  // compute <sub>
  auto* compute = app.add_subcommand("compute", "single-shot computation");
  compute->require_subcommand(1);
  struct ComputeFlags {
    std::string ring = "QQ[x,y,z]";
    std::string module_src;
    std::string ideal_src;
    std::string other_src;
    std::optional<long long> i;
    std::optional<long long> window;
    bool json = false;
    bool timings = false;
    std::optional<long long> cap;
  };
  std::map<std::string, ComputeFlags> cf;
  for (const std::string& sub : {"ext", "resolve", "invariants", "eass"}) {
    auto* sc = compute->add_subcommand(sub);
    ComputeFlags& f = cf[sub];
    sc->add_option("--ring", f.ring, "ring, e.g. \"QQ[x,y,z]/(x^2)\"");
    sc->add_option("--module", f.module_src,
                   "module: generator list, \"cyclic:\", \"ideal:\", "
                   "\"free: n\", \"coker(..): ..\" or \"0\"");
    sc->add_option("--ideal", f.ideal_src,
                   "generators, taken as the ideal viewed as a module");
    if (sub == "ext") {
      sc->add_option("--other", f.other_src,
                     "second argument module (the ring when absent)");
      sc->add_option("--i", f.i, "dual index");
    }
    if (sub == "resolve" || sub == "eass")
      sc->add_option("--window", f.window, "resolution window");
    sc->add_flag("--json", f.json, "JSON report");
    sc->add_flag("--timings", f.timings, "include wall-clock timings");
    sc->add_option("--degree-cap", f.cap, "degree cap for basis engines");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*run) return cmd_run(run_file, run_json, run_timings, run_cap);
    if (*verify)
      return cmd_verify(verify_only, verify_seed, verify_corpus, verify_json,
                        verify_cap);
    for (const std::string& sub : {"ext", "resolve", "invariants", "eass"}) {
      if (compute->got_subcommand(sub)) {
        const ComputeFlags& f = cf[sub];
        return cmd_compute(sub, f.ring, f.module_src, f.ideal_src,
                           f.other_src, f.i, f.window, f.json, f.timings,
                           f.cap);
      }
    }
    throw extscope::UsageError("no subcommand selected");
  } catch (const extscope::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const extscope::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const extscope::ComputationError& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return 3;
  } catch (const extscope::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

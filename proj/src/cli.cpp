#include "symvqe/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "symvqe/ansatz.hpp"
#include "symvqe/circuit.hpp"
#include "symvqe/hamio.hpp"
#include "symvqe/mapping.hpp"
#include "symvqe/mitigate.hpp"
#include "symvqe/sim.hpp"
#include "symvqe/vqe.hpp"

namespace symvqe {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json qty(double v, std::string_view unit) { return Json{{"value", v}, {"unit", unit}}; }
Json qty(std::uint64_t v, std::string_view unit) { return Json{{"value", v}, {"unit", unit}}; }
Json qty_se(double v, double se, std::string_view unit) {
  return Json{{"value", v}, {"se", se}, {"unit", unit}};
}
template <typename T>
Json qty_list(const std::vector<T>& v, std::string_view unit) {
  return Json{{"value", v}, {"unit", unit}};
}

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------------------
// Problem assembly
// ---------------------------------------------------------------------------

struct Problem {
  MolecularIntegrals full;
  ActiveSelection selection;
  MolecularIntegrals active;
  AnsatzSpec spec;
  QubitMapping mapping;
  QubitHamiltonian h;
  std::vector<MeasurementGroup> groups;
  Circuit circuit;
  SpinSector sector;
};

Problem load_problem(const RunConfig& cfg) {
  Problem p;
  try {
    p.full = parse_fcidump(cfg.fcidump);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  try {
    if (!cfg.active.empty()) {
      p.selection.n_electrons = cfg.electrons;
      for (std::size_t one_based : cfg.active) {
        if (one_based == 0 || one_based > p.full.n_orbitals()) {
          throw std::invalid_argument("active orbital " + std::to_string(one_based) +
                                      " outside 1.." + std::to_string(p.full.n_orbitals()));
        }
        p.selection.orbitals.push_back(one_based - 1);
      }
    } else {
      p.selection = default_active_selection(p.full, cfg.electrons, cfg.orbitals);
    }
    p.active = restrict_to_active(p.full, p.selection);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const ActiveSpace space = p.selection.space();
  p.sector = {space.n_occupied(), space.n_occupied()};
  p.spec = enumerate_excitations(parse_variant(cfg.ansatz), space,
                                 cfg.symmetry ? std::optional(p.active.orbsym) : std::nullopt);
  if (cfg.mapping == "identity") {
    p.mapping = QubitMapping::identity(space.n_qubits());
  } else {
    p.mapping = greedy_map(p.spec.excitations, space.n_qubits(),
                           GreedyMapOptions{cfg.mapping_seed, cfg.mapping_restarts});
  }
  try {
    p.h = build_qubit_hamiltonian(p.active, p.mapping);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const std::invalid_argument*>(&e)) throw;
    throw ConsistencyError(e.what());
  }
  p.groups = qwc_group(p.h);
  p.circuit = build_ansatz_circuit(p.spec, p.mapping);
  return p;
}

// ---------------------------------------------------------------------------
// Report pieces
// ---------------------------------------------------------------------------

Json config_json(const RunConfig& cfg) {
  Json c;
  c["fcidump"] = cfg.fcidump;
  c["electrons"] = qty(std::uint64_t{cfg.electrons}, "count");
  c["orbitals"] = qty(std::uint64_t{cfg.orbitals}, "count");
  c["active_orbitals"] = qty_list(cfg.active, "orbital-index-1based");
  c["ansatz"] = cfg.ansatz;
  c["symmetry"] = cfg.symmetry;
  c["mapping"] = cfg.mapping;
  c["mapping_seed"] = qty(cfg.mapping_seed, "seed");
  c["mapping_restarts"] = qty(std::uint64_t{cfg.mapping_restarts}, "count");
  c["shots"] = qty(cfg.shots, "shots");
  c["shot_allocation"] = cfg.shot_allocation;
  c["sampling_seed"] = qty(cfg.seed, "seed");
  c["policy"] = cfg.policy;
  c["sweep_shots"] = qty_list(cfg.sweep_shots, "shots");
  c["repeats"] = qty(std::uint64_t{cfg.repeats}, "count");
  c["contamination"] = qty(cfg.contamination, "fraction");
  c["contamination_seed"] = qty(cfg.contamination_seed, "seed");
  c["max_iterations"] = qty(std::uint64_t{cfg.max_iterations}, "count");
  return c;
}

Json system_json(const Problem& p) {
  std::vector<std::size_t> active1;
  for (std::size_t o : p.selection.orbitals) active1.push_back(o + 1);
  Json s;
  s["qubits"] = qty(std::uint64_t{p.mapping.size()}, "count");
  s["active_electrons"] = qty(std::uint64_t{p.selection.n_electrons}, "count");
  s["active_orbitals"] = qty_list(active1, "orbital-index-1based");
  s["parameters"] = qty(std::uint64_t{p.spec.parameter_count()}, "count");
  s["two_qubit_gates"] = qty(std::uint64_t{count_2qge(p.circuit)}, "count");
  s["gates"] = qty(std::uint64_t{p.circuit.gates().size()}, "count");
  s["hamiltonian_terms"] = qty(std::uint64_t{p.h.terms.size()}, "count");
  s["qwc_groups"] = qty(std::uint64_t{p.groups.size()}, "count");
  s["offset"] = qty(p.h.offset, "Hartree");
  s["mapping"] = qty_list(p.mapping.perm(), "qubit-index");
  return s;
}

std::vector<PolicyKind> selected_policies(const std::string& policy) {
  if (policy == "all") return {PolicyKind::None, PolicyKind::Particle, PolicyKind::Spin};
  const PolicyKind k = parse_policy(policy);
  if (k == PolicyKind::None) return {PolicyKind::None};
  return {PolicyKind::None, k};
}

struct Checks {
  Json list = Json::array();
  bool ok = true;
  void add(std::string_view name, bool passed) {
    list.push_back(Json{{"name", name}, {"passed", passed}});
    ok = ok && passed;
  }
};

// Post-selection over the configured policies; adds retention checks.
Json mitigation_json(const Problem& p, const std::vector<Histogram>& hists,
                     const RunConfig& cfg, std::optional<double> ideal, bool noiseless,
                     Checks& checks, std::ostream& out) {
  Json arr = Json::array();
  std::map<PolicyKind, MitigatedEstimate> res;
  for (PolicyKind k : selected_policies(cfg.policy)) {
    res[k] = mitigated_energy(p.h, p.groups, hists, {k, p.sector}, &p.mapping);
    const auto& r = res[k];
    Json e;
    e["policy"] = to_string(k);
    e["retained"] = qty(r.retained, "shots");
    e["total"] = qty(r.total, "shots");
    e["energy"] = qty_se(r.estimate.energy, r.estimate.se, "Hartree");
    if (ideal) e["error"] = qty(std::abs(r.estimate.energy - *ideal), "Hartree");
    arr.push_back(e);
    char line[160];
    std::snprintf(line, sizeof line, "  %-9s retained %10llu / %-10llu E = %.6f +/- %.6f Ha\n",
                  std::string(to_string(k)).c_str(), static_cast<unsigned long long>(r.retained),
                  static_cast<unsigned long long>(r.total), r.estimate.energy, r.estimate.se);
    out << line;
  }
  const auto total = res.at(PolicyKind::None).total;
  bool monotone = true;
  std::uint64_t prev = total;
  for (PolicyKind k : {PolicyKind::Particle, PolicyKind::Spin}) {
    auto it = res.find(k);
    if (it == res.end()) continue;
    monotone = monotone && it->second.retained <= prev;
    prev = it->second.retained;
  }
  checks.add("retention_monotone", monotone);
  if (noiseless) {
    bool full = true;
    for (const auto& [k, r] : res) full = full && r.retained == r.total;
    checks.add("noiseless_full_retention", full);
  }
  return arr;
}

fs::path default_output_dir() {
  const char* env = std::getenv("SYMVQE_OUTPUT_DIR");
  return env && *env ? fs::path(env) : fs::path(".");
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct Outcome {
  Json report;
  bool checks_ok = true;
};

Json base_report(std::string_view command, const RunConfig& cfg) {
  Json r;
  r["schema"] = kReportSchema;
  r["command"] = command;
  r["config"] = config_json(cfg);
  return r;
}

void print_system(const Problem& p, std::ostream& out) {
  out << "qubits " << p.mapping.size() << ", parameters " << p.spec.parameter_count()
      << ", 2QGE " << count_2qge(p.circuit) << ", QWC groups " << p.groups.size()
      << ", Hamiltonian terms " << p.h.terms.size() << '\n';
}

Outcome cmd_synth(const RunConfig& cfg, std::ostream& out, Json& timings) {
  Stopwatch sw;
  const Problem p = load_problem(cfg);
  timings["build"] = qty(sw.lap(), "second");
  Outcome o{base_report("synth", cfg)};
  o.report["system"] = system_json(p);
  print_system(p, out);
  if (!cfg.circuit.empty()) {
    write_text(cfg.circuit, to_text(p.circuit));
    o.report["files"] = Json{{"circuit", cfg.circuit}};
  }
  Checks checks;
  checks.add("circuit_parameters_match_ansatz",
             p.circuit.parameter_count() == p.spec.parameter_count());
  o.report["checks"] = checks.list;
  o.checks_ok = checks.ok;
  return o;
}

struct Optimized {
  VqeResult result;
  double hf = 0.0;
  std::optional<double> exact;
};

Optimized run_optimizer(const Problem& p, const RunConfig& cfg, Checks& checks,
                        std::ostream& out) {
  Optimized o;
  o.hf = restricted_hf_energy(p.active);
  VqeConfig vc;
  vc.max_iterations = cfg.max_iterations;
  o.result = optimize(p.h, p.spec, p.mapping,
                      std::vector<double>(p.spec.parameter_count(), 0.0), vc);
  if (p.mapping.size() <= kMaxExactQubits) o.exact = exact_ground_energy(p.h, p.sector);

  AnsatzEnergy e(p.h, p.spec, p.mapping);
  const double at_zero = e(std::vector<double>(p.spec.parameter_count(), 0.0));
  checks.add("hf_equals_zero_parameter_energy", std::abs(at_zero - o.hf) < 1e-9);
  checks.add("variational_not_above_hf", o.result.energy <= o.hf + 1e-12);
  if (o.exact) checks.add("variational_not_below_exact", o.result.energy >= *o.exact - 1e-8);

  char line[200];
  std::snprintf(line, sizeof line, "HF %.8f Ha, variational %.8f Ha (%s after %zu iterations)\n",
                o.hf, o.result.energy, o.result.converged ? "converged" : "not converged",
                o.result.iterations);
  out << line;
  if (o.exact) {
    std::snprintf(line, sizeof line, "exact (sector) %.8f Ha, ansatz error %.3f mEh\n", *o.exact,
                  1e3 * (o.result.energy - *o.exact));
    out << line;
  }
  return o;
}

Json optimizer_json(const VqeResult& r) {
  Json j;
  j["converged"] = r.converged;
  j["iterations"] = qty(std::uint64_t{r.iterations}, "count");
  j["evaluations"] = qty(std::uint64_t{r.evaluations}, "count");
  j["gradient_norm"] = qty(r.gradient_norm, "Hartree/radian");
  j["params"] = qty_list(r.params, "radian");
  Json trace = Json::array();
  for (const auto& it : r.trace) trace.push_back(Json{{"energy", qty(it.energy, "Hartree")}});
  j["trace"] = trace;
  return j;
}

Json energies_json(const Optimized& o) {
  Json e;
  e["hf"] = qty(o.hf, "Hartree");
  e["variational"] = qty(o.result.energy, "Hartree");
  if (o.exact) e["exact"] = qty(*o.exact, "Hartree");
  return e;
}

Outcome cmd_vqe(const RunConfig& cfg, const fs::path& report_path, std::ostream& out,
                Json& timings) {
  Stopwatch sw;
  const Problem p = load_problem(cfg);
  timings["build"] = qty(sw.lap(), "second");
  print_system(p, out);
  Checks checks;
  const Optimized opt = run_optimizer(p, cfg, checks, out);
  timings["optimize"] = qty(sw.lap(), "second");

  const ShotAllocation mode = parse_shot_allocation(cfg.shot_allocation);
  auto sampled = evaluate_sampled(p.h, p.spec, p.mapping, opt.result.params, cfg.shots, cfg.seed,
                                  mode);
  std::vector<Histogram> hists = sampled.histograms;
  if (cfg.contamination > 0.0) hists = contaminate(hists, cfg.contamination, cfg.contamination_seed);
  timings["sample"] = qty(sw.lap(), "second");

  const fs::path hist_path = cfg.histograms.empty()
                                 ? fs::path(report_path).replace_extension(".hist")
                                 : fs::path(cfg.histograms);
  std::ostringstream hs;
  write_histograms(hs, hists);
  write_text(hist_path, hs.str());

  Outcome o{base_report("vqe", cfg)};
  o.report["system"] = system_json(p);
  Json energies = energies_json(opt);
  energies["sampled"] = qty_se(sampled.estimate.energy, sampled.estimate.se, "Hartree");
  o.report["energies"] = energies;
  o.report["optimizer"] = optimizer_json(opt.result);
  if (cfg.contamination > 0.0) {
    o.report["contamination"] = Json{{"fraction", qty(cfg.contamination, "fraction")},
                                     {"seed", qty(cfg.contamination_seed, "seed")}};
  }
  out << "post-selection (" << cfg.shots << " shots, seed " << cfg.seed << "):\n";
  o.report["mitigation"] = mitigation_json(p, hists, cfg, opt.result.energy,
                                           cfg.contamination == 0.0, checks, out);
  o.report["files"] = Json{{"histograms", hist_path.string()}};
  timings["mitigate"] = qty(sw.lap(), "second");
  o.report["checks"] = checks.list;
  o.checks_ok = checks.ok;
  return o;
}

Outcome cmd_sweep(const RunConfig& cfg, std::ostream& out, Json& timings) {
  if (cfg.sweep_shots.size() < 2) throw UsageError("sweep needs at least two --shots-list values");
  for (auto s : cfg.sweep_shots) {
    if (s == 0) throw UsageError("shot counts must be positive");
  }
  Stopwatch sw;
  const Problem p = load_problem(cfg);
  timings["build"] = qty(sw.lap(), "second");
  print_system(p, out);
  Checks checks;
  const Optimized opt = run_optimizer(p, cfg, checks, out);
  timings["optimize"] = qty(sw.lap(), "second");

  AnsatzEnergy e(p.h, p.spec, p.mapping);
  const auto rows = shot_sweep(p.h, p.groups, e.state(opt.result.params), cfg.sweep_shots,
                               cfg.repeats, cfg.seed, parse_shot_allocation(cfg.shot_allocation));
  timings["sweep"] = qty(sw.lap(), "second");

  Outcome o{base_report("sweep", cfg)};
  o.report["system"] = system_json(p);
  o.report["energies"] = energies_json(opt);
  o.report["optimizer"] = optimizer_json(opt.result);
  Json arr = Json::array();
  out << "     shots      mean E (Ha)    mean SE (Ha)   SE ratio\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    Json r;
    r["shots"] = qty(rows[k].shots, "shots");
    r["mean_energy"] = qty(rows[k].mean_energy, "Hartree");
    r["mean_se"] = qty(rows[k].mean_se, "Hartree");
    double ratio = 0.0;
    if (k > 0) {
      ratio = rows[k - 1].mean_se / rows[k].mean_se;
      r["se_ratio_to_previous"] = qty(ratio, "ratio");
    }
    arr.push_back(r);
    char line[160];
    std::snprintf(line, sizeof line, "%10llu  %15.8f  %14.8f   %s\n",
                  static_cast<unsigned long long>(rows[k].shots), rows[k].mean_energy,
                  rows[k].mean_se, k > 0 ? std::to_string(ratio).c_str() : "-");
    out << line;
  }
  o.report["sweep"] = arr;
  o.report["checks"] = checks.list;
  o.checks_ok = checks.ok;
  return o;
}

Outcome cmd_mitigate(const RunConfig& cfg, std::ostream& out, Json& timings) {
  if (cfg.histograms.empty()) throw UsageError("mitigate needs --histograms");
  Stopwatch sw;
  const Problem p = load_problem(cfg);
  std::vector<Histogram> hists;
  try {
    std::istringstream in(read_text(cfg.histograms));
    hists = read_histograms(in);
    // validates coverage and bases against the rebuilt grouping
    energy_from_histograms(p.h, p.groups, hists);
  } catch (const std::exception& e) {
    throw InputError(cfg.histograms + ": " + e.what());
  }
  if (cfg.contamination > 0.0) hists = contaminate(hists, cfg.contamination, cfg.contamination_seed);
  timings["load"] = qty(sw.lap(), "second");
  print_system(p, out);

  Outcome o{base_report("mitigate", cfg)};
  o.report["system"] = system_json(p);
  if (cfg.contamination > 0.0) {
    o.report["contamination"] = Json{{"fraction", qty(cfg.contamination, "fraction")},
                                     {"seed", qty(cfg.contamination_seed, "seed")}};
  }
  Checks checks;
  out << "post-selection on " << cfg.histograms << ":\n";
  o.report["mitigation"] = mitigation_json(p, hists, cfg, std::nullopt, false, checks, out);
  o.report["files"] = Json{{"histograms", cfg.histograms}};
  timings["mitigate"] = qty(sw.lap(), "second");
  o.report["checks"] = checks.list;
  o.checks_ok = checks.ok;
  return o;
}

// ---------------------------------------------------------------------------
// Report validation
// ---------------------------------------------------------------------------

using VJson = nlohmann::json;

const std::set<std::string>& known_units() {
  static const std::set<std::string> u = {
      "Hartree", "Hartree/radian", "radian", "second", "count", "shots",
      "fraction", "seed", "ratio", "orbital-index-1based", "qubit-index"};
  return u;
}

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw std::invalid_argument("report " + where + ": " + what);
}

void check_keys(const VJson& j, const std::string& where, const std::set<std::string>& allowed,
                const std::set<std::string>& required) {
  if (!j.is_object()) bad(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) bad(where, "unknown field '" + k + "'");
  }
  for (const auto& k : required) {
    if (!j.contains(k)) bad(where, "missing field '" + k + "'");
  }
}

void check_quantity(const VJson& j, const std::string& where,
                    std::optional<std::string> unit = std::nullopt) {
  check_keys(j, where, {"value", "se", "unit"}, {"value", "unit"});
  if (!j["unit"].is_string() || !known_units().count(j["unit"].get<std::string>())) {
    bad(where, "unknown unit");
  }
  if (unit && j["unit"] != *unit) bad(where, "expected unit " + *unit);
  const VJson& v = j["value"];
  if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_number()) bad(where, "non-numeric list entry");
    }
  } else if (!v.is_number()) {
    bad(where, "value must be numeric");
  }
  if (j.contains("se") && !j["se"].is_number()) bad(where, "se must be numeric");
}

void check_quantities(const VJson& j, const std::string& where,
                      const std::map<std::string, std::string>& fields,
                      const std::set<std::string>& required) {
  std::set<std::string> allowed;
  for (const auto& [k, u] : fields) allowed.insert(k);
  check_keys(j, where, allowed, required);
  for (const auto& [k, v] : j.items()) check_quantity(v, where + "." + k, fields.at(k));
}

}  // namespace

void validate_report(std::string_view text) {
  VJson r;
  try {
    r = VJson::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("report is not valid JSON: ") + e.what());
  }
  check_keys(r, "root",
             {"schema", "command", "config", "system", "energies", "optimizer", "mitigation",
              "contamination", "sweep", "files", "checks", "timings"},
             {"schema", "command", "config", "system", "checks", "timings"});
  if (r["schema"] != kReportSchema) bad("schema", "unsupported version");
  const std::set<std::string> commands = {"synth", "vqe", "sweep", "mitigate"};
  if (!r["command"].is_string() || !commands.count(r["command"].get<std::string>())) {
    bad("command", "unknown command");
  }

  const VJson& c = r["config"];
  check_keys(c, "config",
             {"fcidump", "electrons", "orbitals", "active_orbitals", "ansatz", "symmetry",
              "mapping", "mapping_seed", "mapping_restarts", "shots", "shot_allocation",
              "sampling_seed", "policy", "sweep_shots", "repeats", "contamination",
              "contamination_seed", "max_iterations"},
             {"fcidump", "ansatz", "symmetry", "mapping"});
  for (const char* s : {"fcidump", "ansatz", "mapping", "shot_allocation", "policy"}) {
    if (c.contains(s) && !c[s].is_string()) bad(std::string("config.") + s, "expected a string");
  }
  if (!c["symmetry"].is_boolean()) bad("config.symmetry", "expected a boolean");
  for (const auto& [k, v] : c.items()) {
    if (v.is_object()) check_quantity(v, "config." + k);
    else if (v.is_number()) bad("config." + k, "numeric field without unit");
  }

  check_quantities(r["system"], "system",
                   {{"qubits", "count"}, {"active_electrons", "count"},
                    {"active_orbitals", "orbital-index-1based"}, {"parameters", "count"},
                    {"two_qubit_gates", "count"}, {"gates", "count"},
                    {"hamiltonian_terms", "count"}, {"qwc_groups", "count"},
                    {"offset", "Hartree"}, {"mapping", "qubit-index"}},
                   {"qubits", "parameters", "two_qubit_gates", "qwc_groups"});

  if (r.contains("energies")) {
    check_quantities(r["energies"], "energies",
                     {{"hf", "Hartree"}, {"variational", "Hartree"}, {"exact", "Hartree"},
                      {"sampled", "Hartree"}},
                     {"hf", "variational"});
  }
  if (r.contains("optimizer")) {
    const VJson& o = r["optimizer"];
    check_keys(o, "optimizer",
               {"converged", "iterations", "evaluations", "gradient_norm", "params", "trace"},
               {"converged", "iterations", "evaluations", "params", "trace"});
    if (!o["converged"].is_boolean()) bad("optimizer.converged", "expected a boolean");
    check_quantity(o["iterations"], "optimizer.iterations", "count");
    check_quantity(o["evaluations"], "optimizer.evaluations", "count");
    if (o.contains("gradient_norm")) {
      check_quantity(o["gradient_norm"], "optimizer.gradient_norm", "Hartree/radian");
    }
    check_quantity(o["params"], "optimizer.params", "radian");
    if (!o["trace"].is_array()) bad("optimizer.trace", "expected an array");
    for (const auto& t : o["trace"]) check_quantities(t, "optimizer.trace[]", {{"energy", "Hartree"}}, {"energy"});
  }
  if (r.contains("mitigation")) {
    if (!r["mitigation"].is_array()) bad("mitigation", "expected an array");
    for (const auto& m : r["mitigation"]) {
      check_keys(m, "mitigation[]", {"policy", "retained", "total", "energy", "error"},
                 {"policy", "retained", "total", "energy"});
      const std::set<std::string> policies = {"none", "particle", "spin"};
      if (!m["policy"].is_string() || !policies.count(m["policy"].get<std::string>())) {
        bad("mitigation[].policy", "unknown policy");
      }
      check_quantity(m["retained"], "mitigation[].retained", "shots");
      check_quantity(m["total"], "mitigation[].total", "shots");
      check_quantity(m["energy"], "mitigation[].energy", "Hartree");
      if (!m["energy"].contains("se")) bad("mitigation[].energy", "missing se");
      if (m.contains("error")) check_quantity(m["error"], "mitigation[].error", "Hartree");
    }
  }
  if (r.contains("contamination")) {
    check_quantities(r["contamination"], "contamination",
                     {{"fraction", "fraction"}, {"seed", "seed"}}, {"fraction", "seed"});
  }
  if (r.contains("sweep")) {
    if (!r["sweep"].is_array()) bad("sweep", "expected an array");
    for (const auto& s : r["sweep"]) {
      check_quantities(s, "sweep[]",
                       {{"shots", "shots"}, {"mean_energy", "Hartree"}, {"mean_se", "Hartree"},
                        {"se_ratio_to_previous", "ratio"}},
                       {"shots", "mean_energy", "mean_se"});
    }
  }
  if (r.contains("files")) {
    check_keys(r["files"], "files", {"histograms", "circuit"}, {});
    for (const auto& [k, v] : r["files"].items()) {
      if (!v.is_string()) bad("files." + k, "expected a path string");
    }
  }
  if (!r["checks"].is_array()) bad("checks", "expected an array");
  for (const auto& ch : r["checks"]) {
    check_keys(ch, "checks[]", {"name", "passed"}, {"name", "passed"});
    if (!ch["name"].is_string() || !ch["passed"].is_boolean()) bad("checks[]", "bad entry");
  }
  if (!r["timings"].is_object()) bad("timings", "expected an object");
  for (const auto& [k, v] : r["timings"].items()) check_quantity(v, "timings." + k, "second");
}

namespace {

void add_problem_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--fcidump", cfg.fcidump, "FCIDUMP integral file")->required();
  sub->add_option("--electrons", cfg.electrons, "active electrons")->capture_default_str();
  sub->add_option("--orbitals", cfg.orbitals, "active spatial orbitals")->capture_default_str();
  sub->add_option("--active", cfg.active,
                  "comma-separated 1-based active orbitals (default: centred on the Fermi level)")
      ->delimiter(',');
  sub->add_option("--ansatz", cfg.ansatz, "upCCD, uCCDab, uCCD or uCCSD")
      ->check(CLI::IsMember({"upCCD", "uCCDab", "uCCD", "uCCSD"}))
      ->capture_default_str();
  sub->add_flag("--symmetry,!--no-symmetry", cfg.symmetry,
                "drop excitations forbidden by orbital symmetry (default on)");
  sub->add_option("--mapping", cfg.mapping, "greedy or identity")
      ->check(CLI::IsMember({"greedy", "identity"}))
      ->capture_default_str();
  sub->add_option("--mapping-seed", cfg.mapping_seed, "greedy mapping seed")->capture_default_str();
  sub->add_option("--mapping-restarts", cfg.mapping_restarts, "greedy mapping restarts")
      ->capture_default_str();
  sub->add_option("--output,-o", cfg.output,
                  "report path (default: $SYMVQE_OUTPUT_DIR/<command>_report.json)");
}

void add_sampling_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--shots", cfg.shots, "shots per group (or total, see --shot-allocation)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--shot-allocation", cfg.shot_allocation, "per-group or total")
      ->check(CLI::IsMember({"per-group", "total"}))
      ->capture_default_str();
  sub->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
  sub->add_option("--max-iterations", cfg.max_iterations, "optimizer iteration cap")
      ->capture_default_str();
}

void add_mitigation_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--policy", cfg.policy, "none, particle, spin or all")
      ->check(CLI::IsMember({"none", "particle", "spin", "all"}))
      ->capture_default_str();
  sub->add_option("--contaminate", cfg.contamination,
                  "replace this fraction of Z-basis shots by uniform random bitstrings")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--contamination-seed", cfg.contamination_seed, "contamination seed")
      ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Symmetry-reduced UCC VQE toolkit: synthesis counts, optimization, sampling "
               "and post-selection"};
  app.name("symvqe");
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML file");

  auto* synth = app.add_subcommand("synth", "count qubits, parameters, 2QGE and QWC groups");
  add_problem_options(synth, cfg);
  synth->add_option("--circuit", cfg.circuit, "write the compiled circuit in text form");

  auto* vqe = app.add_subcommand("vqe", "optimize, sample and post-select");
  add_problem_options(vqe, cfg);
  add_sampling_options(vqe, cfg);
  add_mitigation_options(vqe, cfg);
  vqe->add_option("--histograms", cfg.histograms,
                  "histogram output (default: report path with .hist extension)");

  auto* sweep = app.add_subcommand("sweep", "standard error versus shot count");
  add_problem_options(sweep, cfg);
  add_sampling_options(sweep, cfg);
  sweep->add_option("--shots-list", cfg.sweep_shots, "comma-separated shot counts")
      ->delimiter(',')
      ->required();
  sweep->add_option("--repeats", cfg.repeats, "sampling seeds per shot count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* mitig = app.add_subcommand("mitigate", "re-run post-selection on saved histograms");
  add_problem_options(mitig, cfg);
  add_mitigation_options(mitig, cfg);
  mitig->add_option("--histograms", cfg.histograms, "histogram file from a vqe run")->required();

  std::vector<const char*> argv{"symvqe"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  if (!cfg.active.empty()) {
    if (cmd->get_option("--orbitals")->count() > 0 && cfg.orbitals != cfg.active.size()) {
      err << "error: --orbitals " << cfg.orbitals << " disagrees with " << cfg.active.size()
          << " --active orbitals\n";
      return kExitUsage;
    }
    cfg.orbitals = cfg.active.size();
  }

  const std::string name = cmd->get_name();
  const fs::path report_path =
      cfg.output.empty() ? default_output_dir() / (name + "_report.json") : fs::path(cfg.output);
  try {
    Stopwatch total;
    Json timings;
    Outcome o;
    if (name == "synth") o = cmd_synth(cfg, out, timings);
    else if (name == "vqe") o = cmd_vqe(cfg, report_path, out, timings);
    else if (name == "sweep") o = cmd_sweep(cfg, out, timings);
    else o = cmd_mitigate(cfg, out, timings);
    timings["total"] = qty(total.lap(), "second");
    o.report["timings"] = timings;

    write_text(report_path, o.report.dump(2) + "\n");
    validate_report(read_text(report_path));
    out << "report: " << report_path.string() << '\n';
    if (!o.checks_ok) {
      err << "error: internal consistency check failed (see report 'checks')\n";
      return kExitConsistency;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConsistencyError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const std::invalid_argument& e) {
    // report validation and argument checks inside the pipeline
    err << "error: " << e.what() << '\n';
    return std::string_view(e.what()).starts_with("report") ? kExitConsistency : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace symvqe

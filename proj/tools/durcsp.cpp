// durcsp: command-line front end for the duration-CSP workbench.
//
// Exit codes: 0 success / Bisimilar, 1 semantic diagnostics / NotBisimilar,
// 2 usage or I/O error, 3 inconclusive (budget exhausted). Structured output
// (--json) is deterministic: identical invocations are byte-identical.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "durcsp/corpus.hpp"
#include "durcsp/equivalence.hpp"
#include "durcsp/semantics.hpp"
#include "durcsp/syntax.hpp"
#include "durcsp/tcts.hpp"

namespace {

using nlohmann::ordered_json;
using namespace durcsp;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int io_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

// Empty path means stdout.
int write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out.good()) return io_error("cannot write " + path);
  return 0;
}

bool is_model_text(const std::string& text) {
  return text.rfind("durcsp-model v1", 0) == 0;
}

std::optional<Rat> parse_grid_flag(const std::string& text, std::string& err) {
  auto g = parse_rat(text);
  if (!g || *g <= Rat(0)) {
    err = "grid must be a positive rational, got '" + text + "'";
    return std::nullopt;
  }
  return g;
}

// The compared sides run under one closed world: duration tables must agree
// and identically named processes must be structurally equal.
std::optional<Spec> merge_specs(const Spec& a, const Spec& b, std::string& err) {
  Spec out = a;
  for (const auto& [name, d] : b.durations) {
    auto it = out.durations.find(name);
    if (it != out.durations.end() && !(it->second == d)) {
      err = "duration of '" + name + "' differs between the inputs";
      return std::nullopt;
    }
    out.durations[name] = d;
  }
  for (const auto& [name, p] : b.processes) {
    auto it = out.processes.find(name);
    if (it != out.processes.end() && !equal(it->second, p)) {
      err = "process '" + name + "' is defined differently in the two inputs";
      return std::nullopt;
    }
    out.processes[name] = p;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared rendering

int verdict_exit(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::Bisimilar: return 0;
    case VerdictKind::NotBisimilar: return 1;
    case VerdictKind::Inconclusive: return 3;
  }
  return 2;
}

const char* verdict_word(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::Bisimilar: return "Bisimilar";
    case VerdictKind::NotBisimilar: return "NotBisimilar";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

void print_cex(std::ostream& os, const Counterexample& cex) {
  for (const CexRound& r : cex.rounds)
    os << "  " << (r.attack.fromLeft ? "L" : "R") << " attacks: " << r.attack.text
       << (r.defense ? " (answered)" : " (unanswered)") << "\n";
  os << "  reason: " << cex.reason << "\n";
}

ordered_json cex_json(const Counterexample& cex) {
  ordered_json rounds = ordered_json::array();
  for (const CexRound& r : cex.rounds) {
    ordered_json jr;
    jr["attacker"] = r.attack.fromLeft ? "L" : "R";
    jr["kind"] = r.attack.isDelay ? "delay" : "action";
    if (r.attack.isDelay)
      jr["delay"] = to_string(r.attack.delay);
    else
      jr["action_index"] = r.attack.actionIndex;
    jr["move"] = r.attack.text;
    if (r.defense)
      jr["defense_index"] = *r.defense;
    else
      jr["defense_index"] = nullptr;
    rounds.push_back(std::move(jr));
  }
  return ordered_json{{"rounds", std::move(rounds)}, {"reason", cex.reason}};
}

ordered_json stats_json(const CheckStats& s) {
  return ordered_json{{"nodes", s.nodes},
                      {"cache_hits", s.cacheHits},
                      {"max_depth_seen", s.maxDepthSeen},
                      {"synch_violations", s.synchViolations}};
}

struct CheckFlags {
  std::string grid;
  size_t depth = 40;
  size_t nodes = 200000;
  std::optional<unsigned long long> seed;  // echoed; the engines are deterministic
  bool json = false;
};

int finish_check(const std::string& what, const Verdict& v, const Rat& grid,
                 const CheckFlags& flags) {
  if (flags.json) {
    ordered_json out;
    out["format"] = "durcsp-check";
    out["version"] = 1;
    out["check"] = what;
    out["verdict"] = verdict_word(v);
    out["depth"] = flags.depth;
    out["grid"] = to_string(grid);
    out["bound_hit"] = v.boundHit;
    if (flags.seed) out["seed"] = *flags.seed;
    out["stats"] = stats_json(v.stats);
    if (v.cex) out["counterexample"] = cex_json(*v.cex);
    std::cout << out.dump(2) << "\n";
    return verdict_exit(v);
  }
  switch (v.kind) {
    case VerdictKind::Bisimilar:
      std::cout << "Bisimilar (within bounds: depth=" << flags.depth
                << ", grid=" << to_string(grid) << ")\n";
      break;
    case VerdictKind::NotBisimilar:
      std::cout << "NotBisimilar\n";
      if (v.cex) print_cex(std::cout, *v.cex);
      break;
    case VerdictKind::Inconclusive:
      std::cout << "Inconclusive (node budget exhausted: nodes=" << v.stats.nodes << ")\n";
      break;
  }
  return verdict_exit(v);
}

CheckParams check_params(const CheckFlags& flags, const Rat& grid) {
  CheckParams p;
  p.max_depth = flags.depth;
  p.max_nodes = flags.nodes;
  p.grid = grid;
  return p;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_parse(const std::string& path, bool json) {
  auto text = read_file(path);
  if (!text) return io_error("cannot read " + path);
  Spec spec;
  try {
    spec = parse_spec(*text);
  } catch (const ParseError& e) {
    if (json) {
      ordered_json out{{"format", "durcsp-parse"}, {"version", 1}, {"valid", false},
                       {"error", e.what()}};
      std::cout << out.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
  }
  std::vector<Diagnostic> findings = validate(spec);
  if (json) {
    ordered_json out;
    out["format"] = "durcsp-parse";
    out["version"] = 1;
    out["valid"] = findings.empty();
    out["main"] = spec.main;
    ordered_json durs = ordered_json::object();
    for (const auto& [name, d] : spec.durations) durs[name] = to_string(d);
    out["durations"] = std::move(durs);
    ordered_json procs = ordered_json::object();
    for (const auto& [name, p] : spec.processes) procs[name] = render(p);
    out["processes"] = std::move(procs);
    ordered_json diags = ordered_json::array();
    for (const Diagnostic& d : findings)
      diags.push_back(ordered_json{{"category", to_string(d.category)},
                                   {"message", d.message},
                                   {"line", d.pos.line},
                                   {"col", d.pos.col}});
    out["diagnostics"] = std::move(diags);
    std::cout << out.dump(2) << "\n";
    return findings.empty() ? 0 : 1;
  }
  if (!findings.empty()) {
    for (const Diagnostic& d : findings) {
      std::cout << to_string(d.category) << ": " << d.message;
      if (d.pos.line > 0) std::cout << " (line " << d.pos.line << ", column " << d.pos.col << ")";
      std::cout << "\n";
    }
    return 1;
  }
  std::cout << render(spec);
  return 0;
}

int cmd_simulate(const std::string& spec_path, const std::string& sched_path, bool json,
                 const std::string& out_path) {
  Spec spec = load_spec_file(spec_path);
  auto sched_text = read_file(sched_path);
  if (!sched_text) return io_error("cannot read " + sched_path);
  Schedule sched = parse_schedule(*sched_text);
  Trace trace;
  try {
    trace = run(initial_config(spec), sched, spec);
  } catch (const EngineError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 1;
  }
  if (json) {
    ordered_json out;
    out["format"] = "durcsp-simulate";
    out["version"] = 1;
    out["start"] = render(trace.start);
    ordered_json steps = ordered_json::array();
    for (const TraceStep& s : trace.steps) {
      ordered_json js;
      js["kind"] = s.act ? "action" : "delay";
      if (s.act)
        js["step"] = to_string(*s.act);
      else
        js["delay"] = to_string(s.delay);
      js["after"] = render(s.after);
      steps.push_back(std::move(js));
    }
    out["steps"] = std::move(steps);
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  return write_output(out_path, write_trace(trace));
}

int cmd_compile(const std::string& path, size_t max_states, bool dot, bool json,
                const std::string& out_path) {
  Spec spec = load_spec_file(path);
  CompileOptions opts;
  opts.max_states = max_states;
  TimedCTS m = compile(spec, opts);
  if (m.truncated) std::cerr << "note: state budget hit, model is a prefix\n";
  std::string text = dot ? to_dot(m) : write_model(m);
  if (json) {
    ordered_json out;
    out["format"] = "durcsp-compile";
    out["version"] = 1;
    out["states"] = m.states.size();
    out["transitions"] = m.transitions.size();
    out["truncated"] = m.truncated;
    out["output"] = text;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  return write_output(out_path, text);
}

int cmd_export(const std::string& path, bool model_text, const std::string& out_path) {
  auto text = read_file(path);
  if (!text) return io_error("cannot read " + path);
  TimedCTS m;
  if (is_model_text(*text)) {
    m = parse_model(*text);
  } else {
    m = compile(load_spec_file(path));
  }
  return write_output(out_path, model_text ? write_model(m) : to_dot(m));
}

int cmd_makespan(const std::string& path, const std::string& grid_flag,
                 std::optional<size_t> depth, size_t max_nodes, const CheckFlags& flags) {
  Spec spec = load_spec_file(path);
  Rat grid = default_grid(spec);
  if (!grid_flag.empty()) {
    std::string err;
    auto g = parse_grid_flag(grid_flag, err);
    if (!g) return io_error(err);
    grid = *g;
  }
  MakespanOptions opts;
  opts.max_nodes = max_nodes;
  opts.max_steps = depth;
  auto result = min_makespan_exact(initial_config(spec), spec, grid, opts);
  if (flags.json) {
    ordered_json out;
    out["format"] = "durcsp-makespan";
    out["version"] = 1;
    out["grid"] = to_string(grid);
    if (depth) out["depth"] = *depth;
    if (flags.seed) out["seed"] = *flags.seed;
    if (result) {
      out["value"] = to_string(result->value);
      out["attained"] = result->attained;
    } else {
      out["value"] = nullptr;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (!result)
    std::cout << "no terminating schedule found (within budget)\n";
  else if (result->attained)
    std::cout << "minimum " << to_string(result->value) << " (attained)\n";
  else
    std::cout << "infimum " << to_string(result->value) << " (open)\n";
  return 0;
}

int cmd_check_theorem1(const std::string& path, size_t max_states, const CheckFlags& flags) {
  Spec spec = load_spec_file(path);
  CompileOptions copts;
  copts.max_states = max_states;
  TimedCTS m = compile(spec, copts);
  if (m.truncated) std::cerr << "note: state budget hit, model is a prefix\n";
  Rat grid = default_grid(spec, m);
  if (!flags.grid.empty()) {
    std::string err;
    auto g = parse_grid_flag(flags.grid, err);
    if (!g) return io_error(err);
    grid = *g;
  }
  Verdict v = tau_bisimilar(m, spec, check_params(flags, grid));
  return finish_check("theorem1", v, grid, flags);
}

int cmd_check_bisim(const std::string& path_a, const std::string& path_b,
                    const CheckFlags& flags) {
  auto ta = read_file(path_a);
  auto tb = read_file(path_b);
  if (!ta) return io_error("cannot read " + path_a);
  if (!tb) return io_error("cannot read " + path_b);
  if (is_model_text(*ta) != is_model_text(*tb))
    return io_error("inputs must both be spec files or both be model files");

  if (is_model_text(*ta)) {
    TimedCTS a = parse_model(*ta);
    TimedCTS b = parse_model(*tb);
    Spec durs;
    for (const auto& [name, d] : a.durations) durs.durations[name] = d;
    for (const auto& [name, d] : b.durations) {
      auto it = durs.durations.find(name);
      if (it != durs.durations.end() && !(it->second == d))
        return io_error("duration of '" + name + "' differs between the inputs");
      durs.durations[name] = d;
    }
    Rat grid = rat_gcd(default_grid(durs, a), default_grid(durs, b));
    if (!flags.grid.empty()) {
      std::string err;
      auto g = parse_grid_flag(flags.grid, err);
      if (!g) return io_error(err);
      grid = *g;
    }
    Verdict v = cts_run_bisimilar(a, b, durs, check_params(flags, grid));
    return finish_check("run-bisim", v, grid, flags);
  }

  Spec sa = load_spec_file(path_a);
  Spec sb = load_spec_file(path_b);
  std::string err;
  auto merged = merge_specs(sa, sb, err);
  if (!merged) return io_error(err);
  Rat grid = default_grid(*merged);
  if (!flags.grid.empty()) {
    std::string gerr;
    auto g = parse_grid_flag(flags.grid, gerr);
    if (!g) return io_error(gerr);
    grid = *g;
  }
  ConfigPtr ca = canonicalize(TimedEventSet(), sa.main_process(), *merged);
  ConfigPtr cb = canonicalize(TimedEventSet(), sb.main_process(), *merged);
  Verdict v = config_bisimilar(ca, cb, *merged, check_params(flags, grid));
  return finish_check("config-bisim", v, grid, flags);
}

int cmd_refine_check(const std::string& path_p, const std::string& path_q,
                     const std::string& action, const std::string& body_path,
                     const CheckFlags& flags) {
  Spec sp = load_spec_file(path_p);
  Spec sq = load_spec_file(path_q);
  Spec sbody = load_spec_file(body_path);
  std::string err;
  auto m1 = merge_specs(sp, sq, err);
  if (!m1) return io_error(err);
  auto merged = merge_specs(*m1, sbody, err);
  if (!merged) return io_error(err);
  if (!merged->durations.count(action))
    return io_error("refined action '" + action + "' has no duration in the inputs");
  Rat grid = default_grid(*merged);
  if (!flags.grid.empty()) {
    std::string gerr;
    auto g = parse_grid_flag(flags.grid, gerr);
    if (!g) return io_error(gerr);
    grid = *g;
  }
  Verdict v = refinement_preserved(sp.main_process(), sq.main_process(),
                                   Action::visible(action), sbody.main_process(), *merged,
                                   check_params(flags, grid));
  return finish_check("refine", v, grid, flags);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"duration-CSP workbench: parse, execute, compile and compare"};
  app.set_version_flag("--version", "durcsp 1.0.0");
  app.require_subcommand(1);

  std::string in_a, in_b, out_path, sched_path, grid_flag, action, body_path;
  bool json = false, dot = false, model_text = false;
  size_t max_states = 20000;
  size_t makespan_nodes = 500000;
  std::optional<size_t> makespan_depth;
  CheckFlags flags;

  auto* c_parse = app.add_subcommand("parse", "parse and validate a spec file");
  c_parse->add_option("file", in_a, "spec file")->required();
  c_parse->add_flag("--json", json, "structured output");

  auto* c_sim = app.add_subcommand("simulate", "replay a schedule against a spec");
  c_sim->add_option("file", in_a, "spec file")->required();
  c_sim->add_option("schedule", sched_path, "schedule file (PICK n / WAIT p/q lines)")
      ->required();
  c_sim->add_flag("--json", json, "structured output");
  c_sim->add_option("-o,--output", out_path, "write the trace to a file");

  auto* c_compile = app.add_subcommand("compile", "compile a spec to a timed model");
  c_compile->add_option("file", in_a, "spec file")->required();
  c_compile->add_option("--max-states", max_states, "state budget");
  c_compile->add_flag("--dot", dot, "emit DOT instead of model text");
  c_compile->add_flag("--json", json, "structured output");
  c_compile->add_option("-o,--output", out_path, "write to a file");

  auto* c_export = app.add_subcommand("export", "export a spec or model file");
  c_export->add_option("file", in_a, "spec or model file")->required();
  c_export->add_flag("--dot", dot, "DOT output (default)");
  c_export->add_flag("--model-text", model_text, "model text output");
  c_export->add_option("-o,--output", out_path, "write to a file");

  auto* c_mk = app.add_subcommand("makespan", "least time to run to completion");
  c_mk->add_option("file", in_a, "spec file")->required();
  c_mk->add_option("--grid", grid_flag, "schedule granularity (positive rational)");
  c_mk->add_option("--depth", makespan_depth, "schedule length bound");
  c_mk->add_option("--max-nodes", makespan_nodes, "exploration budget");
  c_mk->add_option("--seed", flags.seed, "seed echoed into structured output");
  c_mk->add_flag("--json", flags.json, "structured output");

  auto add_check_flags = [&](CLI::App* c) {
    c->add_option("--grid", flags.grid, "candidate-delay granularity");
    c->add_option("--depth", flags.depth, "game depth bound");
    c->add_option("--max-nodes", flags.nodes, "node budget");
    c->add_option("--seed", flags.seed, "seed echoed into structured output");
    c->add_flag("--json", flags.json, "structured output");
  };

  auto* c_th1 = app.add_subcommand("check-theorem1",
                                   "compiled model vs operational run of one spec");
  c_th1->add_option("file", in_a, "spec file")->required();
  c_th1->add_option("--max-states", max_states, "compile state budget");
  add_check_flags(c_th1);

  auto* c_bisim = app.add_subcommand("check-bisim",
                                     "two specs (configurations) or two model files (runs)");
  c_bisim->add_option("first", in_a, "spec or model file")->required();
  c_bisim->add_option("second", in_b, "spec or model file")->required();
  add_check_flags(c_bisim);

  auto* c_ref = app.add_subcommand("refine-check",
                                   "refinement preserves bisimilarity of two specs");
  c_ref->add_option("first", in_a, "spec file")->required();
  c_ref->add_option("second", in_b, "spec file")->required();
  c_ref->add_option("--action", action, "refined action")->required();
  c_ref->add_option("--body", body_path, "spec file whose main is the refining body")
      ->required();
  add_check_flags(c_ref);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_parse) return cmd_parse(in_a, json);
    if (*c_sim) return cmd_simulate(in_a, sched_path, json, out_path);
    if (*c_compile) return cmd_compile(in_a, max_states, dot, json, out_path);
    if (*c_export) {
      if (dot && model_text) return io_error("choose one of --dot / --model-text");
      return cmd_export(in_a, model_text, out_path);
    }
    if (*c_mk) return cmd_makespan(in_a, grid_flag, makespan_depth, makespan_nodes, flags);
    if (*c_th1) return cmd_check_theorem1(in_a, max_states, flags);
    if (*c_bisim) return cmd_check_bisim(in_a, in_b, flags);
    if (*c_ref) return cmd_refine_check(in_a, in_b, action, body_path, flags);
  } catch (const CorpusError& e) {
    return io_error(e.what());
  } catch (const ParseError& e) {
    return io_error(e.what());
  } catch (const EngineError& e) {
    return io_error(e.what());
  }
  return 2;
}

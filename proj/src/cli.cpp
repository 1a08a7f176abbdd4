#include "ttstar/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "ttstar/countermodel.hpp"
#include "ttstar/derived.hpp"
#include "ttstar/error.hpp"
#include "ttstar/fuzz.hpp"
#include "ttstar/print.hpp"
#include "ttstar/syntax.hpp"
#include "ttstar/typecheck.hpp"

namespace ttstar {

namespace {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Engine and input failures share one rendering and exit status.
CommandResult guarded(const char* command, const RunConfig& cfg, const std::function<CommandResult()>& body) {
  std::string kind;
  std::string message;
  try {
    return body();
  } catch (const Error& e) {
    kind = std::string(to_string(e.kind()));
    message = e.what();
  } catch (const std::exception& e) {
    kind = "io";
    message = e.what();
  }
  if (cfg.format == OutputFormat::Json) {
    Json j;
    j["command"] = command;
    j["error"] = kind;
    j["message"] = message;
    return {2, dump(j)};
  }
  return {2, "error (" + kind + "): " + message + "\n"};
}

Theory load_theory(const std::string& path) { return parse_theory(read_file(path)); }

Json stats_json(const FuzzStats& s) {
  Json j;
  j["rule"] = s.rule;
  j["trials"] = s.trials;
  j["instances"] = s.instances;
  j["rejected"] = s.rejected;
  j["models"] = s.models;
  j["capped"] = s.capped;
  j["premise_valid"] = s.premise_valid;
  j["nonvacuous"] = s.nonvacuous;
  j["violations"] = Json::array();
  for (const auto& v : s.violations) {
    Json jv;
    jv["trial"] = v.trial;
    jv["seed"] = v.seed;
    jv["premises"] = v.premises;
    jv["conclusion"] = v.conclusion;
    jv["model"] = v.model;
    jv["assignment"] = v.assignment;
    j["violations"].push_back(std::move(jv));
  }
  return j;
}

void stats_text(std::ostringstream& out, const FuzzStats& s, const RunConfig& cfg) {
  out << s.rule << ": " << s.trials << " trials, " << s.violations.size() << " violations"
      << " (instances " << s.instances << ", premise-valid " << s.premise_valid << ", non-vacuous " << s.nonvacuous
      << ", rejected draws " << s.rejected << ", models " << s.models << ", capped " << s.capped << ")\n";
  for (const auto& v : s.violations) {
    out << "  violation at trial " << v.trial << "; reproduce with: ttstar fuzz " << s.rule << " --seed " << cfg.seed
        << " --first-trial " << v.trial << " --trials 1\n";
    for (const auto& p : v.premises) out << "    premise:    " << p << "\n";
    out << "    conclusion: " << v.conclusion << "\n";
    out << "    assignment: " << v.assignment << "\n";
    std::istringstream model(v.model);
    for (std::string line; std::getline(model, line);) out << "    | " << line << "\n";
  }
}

// Every assignment of the given variables over the model's domains.
std::vector<Assignment> assignments(const std::vector<Variable>& vars, const Evaluator& ev) {
  std::vector<Assignment> out{Assignment{}};
  for (const auto& v : vars) {
    std::vector<Assignment> next;
    for (const auto& a : out)
      for (const auto& value : ev.domain(v.type)) {
        Assignment b = a;
        b.insert_or_assign(v.name, value);
        next.push_back(std::move(b));
      }
    out = std::move(next);
    if (out.size() > ev.cap()) fail(ErrorKind::SizeCap, "more than " + std::to_string(ev.cap()) + " assignments");
  }
  return out;
}

}  // namespace

CommandResult cmd_check(const std::string& theory_path, const std::string& proof_path, const RunConfig& cfg) {
  return guarded("check", cfg, [&] {
    Theory theory = load_theory(theory_path);
    ProofScript script = parse_proof(read_file(proof_path), theory);
    ProofReport r = replay_proof(script, theory, KernelConfig{cfg.enable_a_imp_bot});
    int code = 0;
    if (!r.ok) code = (r.error == ErrorKind::Reference || r.error == ErrorKind::Syntax) ? 2 : 1;

    if (cfg.format == OutputFormat::Json) {
      Json j;
      j["command"] = "check";
      j["proof"] = r.name;
      j["ok"] = r.ok;
      j["steps"] = Json::array();
      for (const auto& s : r.steps) {
        Json js;
        js["id"] = s.id;
        js["rule"] = s.rule;
        js["line"] = s.line;
        js["ok"] = s.ok;
        js["primitive_steps"] = s.primitive_steps;
        if (s.error) js["error"] = std::string(to_string(*s.error));
        if (!s.message.empty()) js["message"] = s.message;
        j["steps"].push_back(std::move(js));
      }
      j["primitive_steps"] = r.primitive_steps;
      if (r.theorem) j["theorem"] = print(r.theorem->sequent());
      j["hypotheses"] = Json::array();
      for (const auto& h : script.hypotheses) j["hypotheses"].push_back(h.name);
      if (!r.ok) {
        if (r.error) j["error"] = std::string(to_string(*r.error));
        j["message"] = r.message;
      }
      return CommandResult{code, dump(j)};
    }
    std::ostringstream out;
    out << "proof " << r.name << "\n";
    for (const auto& s : r.steps) {
      out << "  " << s.id << ": " << s.rule << (s.ok ? "  ok" : "  FAILED");
      if (s.primitive_steps > 1) out << " (" << s.primitive_steps << " primitive steps)";
      out << "\n";
    }
    if (r.ok) {
      out << "verified: " << r.steps.size() << " steps, " << r.primitive_steps
          << " primitive rule applications, kernel-only replay ok\n";
      out << "theorem: " << print(r.theorem->sequent()) << "\n";
      if (!script.hypotheses.empty()) {
        out << "under hypotheses:";
        for (const auto& h : script.hypotheses) out << " " << h.name;
        out << "\n";
      }
    } else {
      out << "FAILED: " << r.message << "\n";
    }
    return CommandResult{code, out.str()};
  });
}

CommandResult cmd_fuzz(const std::string& rule, const RunConfig& cfg) {
  return guarded("fuzz", cfg, [&] {
    FuzzConfig fc;
    fc.seed = cfg.seed;
    fc.trials = cfg.trials;
    fc.first_trial = cfg.first_trial;
    fc.max_i = cfg.max_i;
    fc.max_w = cfg.max_w;
    fc.cap = cfg.cap;
    fc.kernel.enable_a_imp_bot = cfg.enable_a_imp_bot;

    std::vector<FuzzStats> results;
    if (rule == "all") {
      for (RuleId r : all_rules())
        if (r != RuleId::AImpBot || cfg.enable_a_imp_bot) results.push_back(fuzz_rule(r, fc));
    } else if (rule == "derived") {
      for (DerivedRuleId r : all_derived_rules()) results.push_back(fuzz_derived_rule(r, fc));
    } else if (auto r = rule_from_name(rule)) {
      results.push_back(fuzz_rule(*r, fc));
    } else if (auto d = derived_rule_from_name(rule)) {
      results.push_back(fuzz_derived_rule(*d, fc));
    } else {
      fail(ErrorKind::Reference, "unknown rule '" + rule + "'");
    }

    std::size_t violations = 0;
    for (const auto& s : results) violations += s.violations.size();
    const int code = violations == 0 ? 0 : 1;
    if (cfg.format == OutputFormat::Json) {
      Json j;
      j["command"] = "fuzz";
      j["seed"] = cfg.seed;
      j["max_i"] = cfg.max_i;
      j["max_w"] = cfg.max_w;
      j["cap"] = cfg.cap;
      j["rules"] = Json::array();
      for (const auto& s : results) j["rules"].push_back(stats_json(s));
      j["violations"] = violations;
      return CommandResult{code, dump(j)};
    }
    std::ostringstream out;
    for (const auto& s : results) stats_text(out, s, cfg);
    out << "total: " << violations << " violations over " << results.size() << " rule(s)\n";
    return CommandResult{code, out.str()};
  });
}

CommandResult cmd_countermodel(const std::string& theory_path, const std::string& sequent_path, const RunConfig& cfg) {
  return guarded("countermodel", cfg, [&] {
    Theory theory = load_theory(theory_path);
    Sequent s = parse_sequent_file(read_file(sequent_path), theory);
    CountermodelResult r = find_countermodel(s, theory, SearchBounds{cfg.max_i, cfg.max_w, cfg.cap});
    std::string model_text;
    std::string assignment_text;
    if (r.found) {
      model_text = print(*r.model);
      std::map<std::string, Type> types;
      for (const auto& v : free_variables(s)) types.emplace(v.name, v.type);
      assignment_text = print_assignment(*r.assignment, types, r.model->frame());
      if (cfg.model_out) {
        std::ofstream f(*cfg.model_out);
        if (!f) fail(ErrorKind::Reference, "cannot write " + *cfg.model_out);
        f << model_text;
      }
    }
    const int code = r.found ? 1 : 0;
    if (cfg.format == OutputFormat::Json) {
      Json j;
      j["command"] = "countermodel";
      j["sequent"] = print(s);
      j["found"] = r.found;
      j["frames_tried"] = Json::array();
      for (auto [ni, nw] : r.frames_tried) j["frames_tried"].push_back({ni, nw});
      j["nodes"] = r.nodes;
      if (r.found) {
        j["model"] = model_text;
        j["assignment"] = assignment_text;
      }
      return CommandResult{code, dump(j)};
    }
    std::ostringstream out;
    out << "sequent: " << print(s) << "\n";
    if (r.found) {
      out << "countermodel (|i| = " << r.model->frame().individuals.size() << ", |w| = "
          << r.model->frame().worlds.size() << ", " << r.nodes << " search nodes):\n"
          << model_text << "falsifying assignment: " << (assignment_text.empty() ? "(none needed)" : assignment_text)
          << "\n";
    } else {
      out << "no countermodel with |i| <= " << cfg.max_i << ", |w| <= " << cfg.max_w << " (" << r.frames_tried.size()
          << " frames, " << r.nodes << " search nodes)\n";
    }
    return CommandResult{code, out.str()};
  });
}

CommandResult cmd_eval(const std::string& theory_path, const std::string& model_path, const std::string& text,
                       const RunConfig& cfg) {
  return guarded("eval", cfg, [&] {
    Theory theory = load_theory(theory_path);
    Model model = parse_model(read_file(model_path), theory);
    Construction c = parse_construction(text, theory.signature, theory.scope());
    Type t = type_of(c, theory.signature);
    Evaluator ev(model.frame(), model, cfg.cap);

    const auto free = free_variables(c);
    std::vector<Variable> vars(free.begin(), free.end());
    std::map<std::string, Type> types;
    for (const auto& v : vars) types.emplace(v.name, v.type);
    struct Row {
      std::string assignment;
      std::optional<std::string> value;
    };
    std::vector<Row> rows;
    for (const auto& a : assignments(vars, ev)) {
      EvalResult r = ev.evaluate(c, a);
      rows.push_back(Row{print_assignment(a, types, model.frame()),
                         r.proper() ? std::optional<std::string>(print_value(ev.materialize(*r.value), t, model.frame()))
                                    : std::nullopt});
    }

    if (cfg.format == OutputFormat::Json) {
      Json j;
      j["command"] = "eval";
      j["construction"] = print(c);
      j["type"] = print(t);
      j["results"] = Json::array();
      for (const auto& row : rows) {
        Json jr;
        if (!vars.empty()) jr["assignment"] = row.assignment;
        jr["proper"] = row.value.has_value();
        if (row.value) jr["value"] = *row.value;
        j["results"].push_back(std::move(jr));
      }
      return CommandResult{0, dump(j)};
    }
    std::ostringstream out;
    for (const auto& row : rows) {
      if (!vars.empty()) out << row.assignment << ": ";
      out << (row.value ? *row.value : "improper") << "\n";
    }
    return CommandResult{0, out.str()};
  });
}

}  // namespace ttstar

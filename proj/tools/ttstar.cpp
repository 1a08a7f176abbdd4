// ttstar: check proof scripts, fuzz rules, search countermodels, evaluate.
// Every option can also be set through a TTSTAR_* environment variable.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ttstar/cli.hpp"

int main(int argc, char** argv) {
  ttstar::RunConfig cfg;
  CLI::App app{"ttstar: proof checker, soundness fuzzer and countermodel finder for TT*"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string model_out;
  app.add_option("--seed", cfg.seed, "random seed")->envname("TTSTAR_SEED");
  app.add_option("--trials", cfg.trials, "fuzz trials per rule")->envname("TTSTAR_TRIALS");
  app.add_option("--first-trial", cfg.first_trial, "index of the first fuzz trial")->envname("TTSTAR_FIRST_TRIAL");
  app.add_option("--max-i", cfg.max_i, "largest individual domain")->envname("TTSTAR_MAX_I")->check(CLI::PositiveNumber);
  app.add_option("--max-w", cfg.max_w, "largest world domain")->envname("TTSTAR_MAX_W")->check(CLI::PositiveNumber);
  app.add_option("--cap", cfg.cap, "function-space and search cap")->envname("TTSTAR_CAP");
  app.add_flag("--enable-a-imp-bot", cfg.enable_a_imp_bot, "admit the gated a-imp-bot rule")
      ->envname("TTSTAR_ENABLE_A_IMP_BOT");
  app.add_option("--format", format, "output format")
      ->envname("TTSTAR_FORMAT")
      ->check(CLI::IsMember({"text", "json", "json-like"}));
  app.fallthrough();

  std::string theory, proof, sequent, model, construction, rule;
  auto* check = app.add_subcommand("check", "replay a proof script through the kernel");
  check->add_option("theory", theory, "theory file")->required();
  check->add_option("proof", proof, "proof script")->required();

  auto* fuzz = app.add_subcommand("fuzz", "fuzz a rule for soundness (all, derived, or one rule name)");
  fuzz->add_option("rule", rule, "rule name")->required();

  auto* cm = app.add_subcommand("countermodel", "search for a finite model falsifying a sequent");
  cm->add_option("theory", theory, "theory file")->required();
  cm->add_option("sequent", sequent, "sequent file")->required();
  cm->add_option("--model-out", model_out, "write the countermodel to this model file");

  auto* ev = app.add_subcommand("eval", "evaluate a construction in a model");
  ev->add_option("theory", theory, "theory file")->required();
  ev->add_option("model", model, "model file")->required();
  ev->add_option("construction", construction, "construction text")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.format = format == "text" ? ttstar::OutputFormat::Text : ttstar::OutputFormat::Json;
  if (!model_out.empty()) cfg.model_out = model_out;

  ttstar::CommandResult r;
  if (*check) r = ttstar::cmd_check(theory, proof, cfg);
  if (*fuzz) r = ttstar::cmd_fuzz(rule, cfg);
  if (*cm) r = ttstar::cmd_countermodel(theory, sequent, cfg);
  if (*ev) r = ttstar::cmd_eval(theory, model, construction, cfg);
  (r.exit_code == 2 ? std::cerr : std::cout) << r.output;
  return r.exit_code;
}

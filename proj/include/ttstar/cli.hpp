#ifndef TTSTAR_CLI_HPP
#define TTSTAR_CLI_HPP

// The four commands behind the ttstar tool. Each returns its full output and
// exit status instead of printing, so tests can drive them directly.
//
// Exit status: 0 = verified / no violation / no countermodel;
//              1 = failed step, violation, or countermodel found;
//              2 = input or engine error (parse, reference, gated, size cap).

#include <cstdint>
#include <optional>
#include <string>

#include "ttstar/model.hpp"

namespace ttstar {

enum class OutputFormat { Text, Json };

struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 200;
  std::size_t first_trial = 0;
  int max_i = 3;
  int max_w = 2;
  std::size_t cap = kDefaultCap;
  bool enable_a_imp_bot = false;
  OutputFormat format = OutputFormat::Text;
  std::optional<std::string> model_out;  // countermodel: also write the model file here
};

struct CommandResult {
  int exit_code = 0;
  std::string output;
};

CommandResult cmd_check(const std::string& theory_path, const std::string& proof_path, const RunConfig& config);
// rule: a primitive or derived rule name, "all" (every ungated primitive
// rule) or "derived" (every derived rule).
CommandResult cmd_fuzz(const std::string& rule, const RunConfig& config);
CommandResult cmd_countermodel(const std::string& theory_path, const std::string& sequent_path,
                               const RunConfig& config);
// Free variables of the construction are enumerated over the model.
CommandResult cmd_eval(const std::string& theory_path, const std::string& model_path, const std::string& construction,
                       const RunConfig& config);

}  // namespace ttstar

#endif  // TTSTAR_CLI_HPP

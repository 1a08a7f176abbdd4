#ifndef TTSTAR_SCRIPT_HPP
#define TTSTAR_SCRIPT_HPP

#include <string>
#include <vector>

#include "ttstar/kernel.hpp"
#include "ttstar/sequent.hpp"

namespace ttstar {

struct ProofHypothesis {
  std::string name;
  Sequent sequent;
  int line = 0;
};

struct ProofStep {
  std::string id;                     // step number as written
  std::string rule;                   // primitive or derived rule name
  std::vector<std::string> premises;  // step ids or hypothesis names
  Params params;
  Sequent claimed;
  int line = 0;
};

struct ProofScript {
  std::string name;
  std::vector<Variable> variables;  // script-local declarations
  std::vector<ProofHypothesis> hypotheses;
  std::vector<ProofStep> steps;
};

}  // namespace ttstar

#endif  // TTSTAR_SCRIPT_HPP

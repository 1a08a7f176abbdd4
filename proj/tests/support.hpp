#ifndef TTSTAR_TESTS_SUPPORT_HPP
#define TTSTAR_TESTS_SUPPORT_HPP

// Shared fixtures: corpus access, parsing shorthands and random assignments.

#include <random>
#include <string>

#include "ttstar/fuzz.hpp"
#include "ttstar/model.hpp"
#include "ttstar/syntax.hpp"

namespace ttstar::testing {

inline std::string corpus(const std::string& file) { return std::string(TTSTAR_CORPUS_DIR) + "/" + file; }

inline const Theory& kf() {
  static const Theory t = parse_theory(read_file(corpus("kf.thy")));
  return t;
}

inline Construction C(const std::string& text, const Theory& t = fuzz_theory()) {
  return parse_construction(text, t.signature, t.scope());
}
inline Match M(const std::string& text, const Theory& t = fuzz_theory()) {
  return parse_match(text, t.signature, t.scope());
}
inline Sequent S(const std::string& text, const Theory& t = fuzz_theory()) {
  return parse_sequent(text, t.signature, t.scope());
}

inline Value random_element(const Type& t, const Evaluator& ev, std::mt19937_64& rng) {
  const auto dom = ev.domain(t);
  return dom[std::uniform_int_distribution<std::size_t>(0, dom.size() - 1)(rng)];
}

// Uniform over the full (partial) function spaces of every free variable.
template <class Vars>
Assignment random_assignment(const Vars& vars, const Evaluator& ev, std::mt19937_64& rng) {
  Assignment a;
  for (const Variable& v : vars) a.insert_or_assign(v.name, random_element(v.type, ev, rng));
  return a;
}

}  // namespace ttstar::testing

#endif  // TTSTAR_TESTS_SUPPORT_HPP

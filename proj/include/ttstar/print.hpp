#ifndef TTSTAR_PRINT_HPP
#define TTSTAR_PRINT_HPP

// Canonical concrete syntax; parse(print(v)) == v for every value printed.

#include <string>

#include "ttstar/sequent.hpp"
#include "ttstar/term.hpp"

namespace ttstar {

std::string print(const Type& t);
std::string print(const Construction& x);
std::string print(const Match& m);
std::string print(const Sequent& s);
std::string print(const Path& p);  // @1.2, or @ for the root

}  // namespace ttstar

#endif  // TTSTAR_PRINT_HPP

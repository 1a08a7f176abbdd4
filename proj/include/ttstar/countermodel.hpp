#ifndef TTSTAR_COUNTERMODEL_HPP
#define TTSTAR_COUNTERMODEL_HPP

// Bounded search for a finite model falsifying a sequent. Frames are tried
// in ascending size; within a frame, table entries are decided only when the
// evaluator consults them, depth-first with "undefined" before the domain
// elements in order. The first falsifying model found is therefore the
// lexicographically least one on the consulted entries.

#include <cstddef>
#include <optional>
#include <vector>

#include "ttstar/model.hpp"
#include "ttstar/syntax.hpp"

namespace ttstar {

struct SearchBounds {
  int max_i = 3;
  int max_w = 2;
  std::size_t cap = kDefaultCap;  // per-frame search nodes; SizeCap beyond
};

struct CountermodelResult {
  bool found = false;
  std::optional<Model> model;          // every declared constant interpreted
  std::optional<Assignment> assignment;
  std::vector<std::pair<int, int>> frames_tried;  // (|i|, |w|)
  std::size_t nodes = 0;                          // search nodes over all frames
};

// Element names: individuals a, b, c, ...; worlds w1, w2, ...
Frame make_frame(int individuals, int worlds);

CountermodelResult find_countermodel(const Sequent& s, const Theory& theory, const SearchBounds& bounds = {});

}  // namespace ttstar

#endif  // TTSTAR_COUNTERMODEL_HPP

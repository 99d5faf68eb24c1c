#pragma once

#include <optional>

namespace chir {

// Record of one root bound: which r, the diagonal bound it was computed
// from, the optimizing shift, the bound itself, and (when cheap enough to
// compute) the exact max root it is certified against.
struct BoundReport {
  int r = 2;
  double delta = 0.0;
  double b_star = 0.0;
  double bound = 0.0;
  std::optional<double> certified_max_root;
};

}  // namespace chir

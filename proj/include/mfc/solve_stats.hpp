#pragma once

namespace mfc {

struct SolveStats {
  int steps = 0;
  double residual = 0.0;
  bool converged = false;
};

}  // namespace mfc

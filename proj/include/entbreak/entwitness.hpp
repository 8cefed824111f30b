#pragma once

// Analytic entanglement oracles: Wootters concurrence for two qubits and the
// PPT / negativity criterion for arbitrary bipartite dims.

#include "entbreak/qstate.hpp"

#include <array>

namespace entbreak {

struct ConcurrenceReport {
  double value = 0.0;                      // max(0, nu1 - nu2 - nu3 - nu4)
  std::array<double, 4> nu{};              // decreasing order
};

struct PptReport {
  double min_eigenvalue = 0.0;
  double negativity = 0.0;                 // (||rho^{T_B}||_1 - 1)/2
  bool is_ppt = false;                     // min_eigenvalue >= -1e-8
};

ConcurrenceReport concurrence(const DensityMatrix& rho);
PptReport ppt_check(const DensityMatrix& rho);

}  // namespace entbreak

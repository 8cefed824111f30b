#pragma once

// Bipartite density-matrix type, canonical fixture states and fidelity
// diagnostics.

#include "entbreak/linalg.hpp"

#include <string>

namespace entbreak {

struct Dims {
  int a = 0;
  int b = 0;
  int total() const { return a * b; }
  bool operator==(const Dims&) const = default;
};

struct DensityMatrix {
  Dims dims;
  Matrix mat;

  // Hermitian within 1e-9, unit trace within 1e-9, min eigenvalue >= -1e-8.
  void validate() const;
};

struct PureState {
  Dims dims;
  Vector vec;

  DensityMatrix projector() const;
};

PureState max_entangled(int d);
DensityMatrix max_mixed(int da, int db);

// Named fixtures: "cq" (two-qutrit classical-quantum state),
// "horodecki_ppt" (3x3 PPT-entangled family, param a in (0,1)),
// "isotropic" (params d, alpha).
DensityMatrix canonical_state(const std::string& name, const std::vector<double>& params);

DensityMatrix isotropic_state(int d, double alpha);
DensityMatrix cq_state();
DensityMatrix horodecki_ppt_state(double a);

// <phi| rho |phi>, clipped to [0, 1].
double fidelity_with_pure(const DensityMatrix& rho, const PureState& phi);

double trace_distance(const DensityMatrix& x, const DensityMatrix& y);

}  // namespace entbreak

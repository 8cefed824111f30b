#pragma once

// Completely positive trace-preserving maps: joint depolarizing, local
// product channels and the generalized amplitude damping channel.

#include "entbreak/qstate.hpp"

#include <optional>
#include <vector>

namespace entbreak {

struct KrausChannel {
  int in_dim = 0;
  int out_dim = 0;
  std::vector<Matrix> kraus;

  // sum K^dag K = identity within tol
  void validate(double tol = 1e-9) const;
  Matrix apply(const Matrix& rho) const;
};

struct DepolarizingSpec {
  int d = 2;
  double alpha = 1.0;

  void validate() const;  // alpha in [-1/(d^2-1), 1]
};

struct GenAmpDampSpec {
  double l = 0.5;
  double p = 0.0;

  void validate() const;  // both in [0, 1]
};

DensityMatrix depolarize_joint(const DensityMatrix& rho, const DepolarizingSpec& spec);

// Single-factor depolarizing map in the affine form, for use inside
// product channels.
Matrix depolarize_factor(const Matrix& rho, int d, double alpha);

KrausChannel gen_amp_damp(const GenAmpDampSpec& spec);

// nullopt means the identity channel on that side.
DensityMatrix apply_local(const DensityMatrix& rho,
                          const std::optional<KrausChannel>& chan_a,
                          const std::optional<KrausChannel>& chan_b);

// Product of two local depolarizing channels applied to rho (exact affine
// form of the tensor map).
DensityMatrix apply_local_depolarizing(const DensityMatrix& rho, double alpha1, double alpha2);

double alpha_crit(int d);  // 1/(d+1)

}  // namespace entbreak

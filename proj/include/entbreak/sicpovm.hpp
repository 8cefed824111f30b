#pragma once

// Weyl-Heisenberg SIC-POVM construction for d in {2,3,4}, the Born-rule
// probability encoding of bipartite states, linear-inversion reconstruction
// and finite-shot sampling.

#include "entbreak/qstate.hpp"

#include <cstdint>
#include <vector>

namespace entbreak {

struct SicPovm {
  int d = 0;
  std::vector<Matrix> effects;  // d^2 rank-one effects E_n = D_n |psi><psi| D_n^dag / d
  Vector fiducial;

  // Completeness, the pairwise overlap condition and rank-one positivity.
  void validate() const;
};

struct ProbabilityVector {
  Dims dims;
  Eigen::VectorXd probs;  // length dA^2 * dB^2, A-effect index major

  void validate() const;
};

struct ShotRecord {
  Dims dims;
  std::vector<std::int64_t> counts;
  std::int64_t n_shots = 0;

  ProbabilityVector frequencies() const;
};

// D_n = (-exp(i pi / d))^{n1 n2} X^{n1} Z^{n2}
Matrix displacement(int n1, int n2, int d);

SicPovm build_sic(int d);

ProbabilityVector born_probabilities(const DensityMatrix& rho, const SicPovm& sic_a,
                                     const SicPovm& sic_b);

ShotRecord sample_counts(const ProbabilityVector& p, std::int64_t n_shots, Rng& rng);

// A SIC pair with the Born map inverse precomputed once; reconstruction
// projects noisy linear inversions back onto the state space (eigenvalue
// clipping plus trace renormalization).
class SicPair {
 public:
  SicPair(SicPovm a, SicPovm b);
  static SicPair standard(int da, int db) { return SicPair(build_sic(da), build_sic(db)); }

  const SicPovm& a() const { return a_; }
  const SicPovm& b() const { return b_; }

  ProbabilityVector born(const DensityMatrix& rho) const;
  DensityMatrix reconstruct(const ProbabilityVector& p) const;

 private:
  SicPovm a_, b_;
  Matrix inverse_;  // maps probability vectors to row-major vec(rho)
};

}  // namespace entbreak

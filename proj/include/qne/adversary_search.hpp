#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qne/protocols.hpp"
#include "qne/random.hpp"

namespace qne {

struct AdversaryOutcome {
  double min_negativity;
  std::vector<double> best_angles;  // 3 angles (one gate) or 6 (two gates)
  int restarts_used;
  // True when >= 3 restarts landed within 1e-6 of the best value, or the best
  // value reached the zero floor (negativity cannot be negative).
  bool converged;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value;
  int evaluations;
};

// Downhill simplex with standard coefficients.  Stops when the simplex
// value spread drops below spread_tol or the evaluation budget runs out.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start, double initial_step,
                             int max_evaluations, double spread_tol);

// Minimize the output negativity over Eve's su2 angles, multi-start with
// seeded uniform restarts over [0, 2pi)^d.  Doing nothing is always
// available to Eve, so the unattacked value is kept as a baseline candidate.
AdversaryOutcome minimize_negativity_2q(double eta, int budget, std::uint64_t seed = 0);
AdversaryOutcome minimize_negativity_4q(const DiagonalInputParams& params, double eta,
                                        int budget, std::uint64_t seed = 0);

}  // namespace qne

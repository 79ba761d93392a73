#include "qne/adversary_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qne {

namespace {

constexpr int kMaxEvalsPerStart = 2000;
constexpr double kSpreadTol = 1e-10;
constexpr double kInitialStep = 0.6;
constexpr double kAgreementTol = 1e-6;
// Negativity cannot go below zero, so stop restarting once it is pinned there.
constexpr double kExactZero = 1e-12;

AdversaryOutcome multi_start(const std::function<double(const Eigen::VectorXd&)>& objective,
                             int dims, int budget, std::uint64_t seed,
                             double baseline_value) {
  if (budget < 1) {
    throw OutOfRange("adversary search: restart budget must be >= 1");
  }

  Eigen::VectorXd best_x = Eigen::VectorXd::Zero(dims);  // identity attack
  double best = baseline_value;
  std::vector<double> restart_values;
  int used = 0;

  for (int restart = 0; restart < budget; ++restart) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(restart));
    Eigen::VectorXd start(dims);
    for (int k = 0; k < dims; ++k) {
      start(k) = rng.uniform(0.0, 2.0 * M_PI);
    }
    const NelderMeadResult res =
        nelder_mead(objective, start, kInitialStep, kMaxEvalsPerStart, kSpreadTol);
    restart_values.push_back(res.value);
    ++used;
    if (res.value < best) {
      best = res.value;
      best_x = res.x;
    }
    if (best <= kExactZero) break;
  }

  int agreeing = 0;
  for (double v : restart_values) {
    if (v <= best + kAgreementTol) ++agreeing;
  }
  // Reaching the zero floor is certainty in itself: the objective cannot go
  // lower, so no further independent confirmation is required.
  const bool converged = best <= kExactZero || agreeing >= 3;
  return AdversaryOutcome{best, {best_x.data(), best_x.data() + best_x.size()}, used,
                          converged};
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start, double initial_step,
                             int max_evaluations, double spread_tol) {
  const int n = static_cast<int>(start.size());
  if (n < 1) {
    throw DimensionMismatch("nelder_mead: empty start vector");
  }
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  std::vector<Eigen::VectorXd> simplex(n + 1, start);
  std::vector<double> value(n + 1);
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    return objective(x);
  };

  for (int i = 1; i <= n; ++i) simplex[i](i - 1) += initial_step;
  for (int i = 0; i <= n; ++i) value[i] = eval(simplex[i]);

  std::vector<int> order(n + 1);
  while (evals < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return value[a] < value[b]; });
    const int lo = order[0], hi = order[n], second_hi = order[n - 1];
    if (value[hi] - value[lo] < spread_tol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != hi) centroid += simplex[i];
    }
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = centroid + alpha * (centroid - simplex[hi]);
    const double f_reflected = eval(reflected);
    if (f_reflected < value[lo]) {
      const Eigen::VectorXd expanded = centroid + gamma * (reflected - centroid);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[hi] = expanded;
        value[hi] = f_expanded;
      } else {
        simplex[hi] = reflected;
        value[hi] = f_reflected;
      }
      continue;
    }
    if (f_reflected < value[second_hi]) {
      simplex[hi] = reflected;
      value[hi] = f_reflected;
      continue;
    }
    const Eigen::VectorXd contracted = centroid + rho * (simplex[hi] - centroid);
    const double f_contracted = eval(contracted);
    if (f_contracted < value[hi]) {
      simplex[hi] = contracted;
      value[hi] = f_contracted;
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      if (i == lo) continue;
      simplex[i] = simplex[lo] + sigma * (simplex[i] - simplex[lo]);
      value[i] = eval(simplex[i]);
    }
  }

  const auto it = std::min_element(value.begin(), value.end());
  return NelderMeadResult{simplex[it - value.begin()], *it, evals};
}

AdversaryOutcome minimize_negativity_2q(double eta, int budget, std::uint64_t seed) {
  const double baseline = two_qubit_protocol(eta).negativity;
  auto objective = [eta](const Eigen::VectorXd& a) {
    return two_qubit_protocol(eta, su2_gate(a(0), a(1), a(2))).negativity;
  };
  return multi_start(objective, 3, budget, seed, baseline);
}

AdversaryOutcome minimize_negativity_4q(const DiagonalInputParams& params, double eta,
                                        int budget, std::uint64_t seed) {
  const double baseline = four_qubit_protocol(params, eta).negativity;
  auto objective = [&params, eta](const Eigen::VectorXd& a) {
    return four_qubit_protocol(params, eta, su2_gate(a(0), a(1), a(2)),
                               su2_gate(a(3), a(4), a(5)))
        .negativity;
  };
  return multi_start(objective, 6, budget, seed, baseline);
}

}  // namespace qne

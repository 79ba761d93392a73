#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "qne/errors.hpp"

namespace qne {

std::uint64_t splitmix64(std::uint64_t x);

// Seeded generator with self-contained samplers, so results depend only on
// the mt19937_64 stream and not on any standard-library distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed ^ 0x9e3779b97f4a7c15ull)) {}

  // Independent child stream, deterministic in (master, index).
  static Rng stream(std::uint64_t master, std::uint64_t index);

  std::uint64_t bits() { return engine_(); }
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  double normal();
  double gamma(double alpha);             // Marsaglia-Tsang; alpha >= 1
  double beta(double a, double b);        // a, b >= 1
  std::uint64_t binomial(std::uint64_t n, double p);
  std::vector<std::uint64_t> multinomial(std::uint64_t n, const Eigen::VectorXd& probs);

 private:
  std::mt19937_64 engine_;
  bool have_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace qne

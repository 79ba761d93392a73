#include "qne/random.hpp"

#include <cmath>

namespace qne {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t master, std::uint64_t index) {
  return Rng(splitmix64(master) ^ splitmix64(splitmix64(index) + 0x632be59bd9b4e019ull));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  // Marsaglia polar method with one cached value.
  if (have_spare_normal_) {
    have_spare_normal_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  have_spare_normal_ = true;
  return u * factor;
}

double Rng::gamma(double alpha) {
  if (alpha < 1.0) {
    throw OutOfRange("Rng::gamma: shape must be >= 1");
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

std::uint64_t Rng::binomial(std::uint64_t n, double p) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return n;
  // Recursive beta splitting: condition on the a-th order statistic of n
  // uniforms, which is Beta(a, n+1-a).  Halves n per level; the base case
  // counts Bernoulli successes directly.
  std::uint64_t total = 0;
  while (n > 64) {
    const std::uint64_t a = n / 2 + 1;
    const double v = beta(static_cast<double>(a), static_cast<double>(n + 1 - a));
    if (v <= p) {
      total += a;
      n -= a;
      p = (p - v) / (1.0 - v);
      if (p <= 0.0) return total;
      if (p >= 1.0) return total + n;
    } else {
      n = a - 1;
      p = p / v;
      if (p >= 1.0) return total + n;
    }
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    if (uniform() < p) ++total;
  }
  return total;
}

std::vector<std::uint64_t> Rng::multinomial(std::uint64_t n, const Eigen::VectorXd& probs) {
  const Eigen::Index k = probs.size();
  if (k < 1) {
    throw DimensionMismatch("Rng::multinomial: empty probability vector");
  }
  double sum = 0.0;
  Eigen::Index last_pos = -1;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(probs(i) >= -1e-12)) {
      throw OutOfRange("Rng::multinomial: negative probability");
    }
    if (probs(i) > 0.0) {
      last_pos = i;
    }
    sum += probs(i);
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw OutOfRange("Rng::multinomial: probabilities sum to " + std::to_string(sum));
  }

  // Binomial chain over the categories, with the final remainder assigned to
  // the last positive-probability category so zero-probability outcomes can
  // never collect a count through rounding.
  std::vector<std::uint64_t> counts(k, 0);
  std::uint64_t remaining = n;
  double mass_left = sum;
  for (Eigen::Index i = 0; i < k && remaining > 0; ++i) {
    if (i == last_pos) {
      continue;
    }
    const double pi = probs(i) <= 0.0 ? 0.0 : std::min(1.0, probs(i) / mass_left);
    counts[i] = binomial(remaining, pi);
    remaining -= counts[i];
    mass_left = std::max(mass_left - std::max(probs(i), 0.0), 0.0);
  }
  counts[last_pos] += remaining;
  return counts;
}

}  // namespace qne

#include "qne/optics_model.hpp"

#include <cmath>
#include <complex>

#include <Eigen/SVD>

#include "qne/errors.hpp"

namespace qne {
namespace {

constexpr double kMinSurvival = 1e-15;

void check_unit_interval(const char* name, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw OutOfRange(std::string(name) + " must lie in [0, 1], got " +
                     std::to_string(value));
  }
}

}  // namespace

void OpticalParams::check() const {
  if (!(T > 0.0 && T < 1.0) || !(R > 0.0 && R < 1.0)) {
    throw OutOfRange("beam-splitter T and R must lie in (0, 1)");
  }
  if (T + R > 1.0 + 1e-9) {
    throw OutOfRange("beam-splitter T + R exceeds 1: " + std::to_string(T + R));
  }
  check_unit_interval("alpha0", alpha0);
  check_unit_interval("alpha1", alpha1);
  check_unit_interval("alpha2", alpha2);
}

FilterSettings calibrate_filters(double eta, double T, double R) {
  check_unit_interval("eta", eta);
  if (!(T > 0.0 && T < 1.0) || !(R > 0.0 && R < 1.0)) {
    throw OutOfRange("beam-splitter T and R must lie in (0, 1)");
  }
  const double alpha0 = R * R / T;
  if (alpha0 > 1.0) {
    throw InfeasibleCalibration("R^2/T = " + std::to_string(alpha0) +
                                " > 1; no filter can amplify");
  }
  return FilterSettings{alpha0, eta, alpha0 * (1.0 - eta)};
}

double survival_probability(const DensityMatrix& rho, const OpticalParams& params) {
  params.check();
  if (rho.dim() != 2) {
    throw UnsupportedDim("physical channel acts on a single qubit");
  }
  const double beta = rho.mat()(1, 1).real();
  return (1.0 - beta) * params.T * params.alpha0 +
         beta * params.R * params.R * params.alpha1 + beta * params.T * params.alpha2;
}

DensityMatrix physical_channel(const DensityMatrix& rho, const OpticalParams& params) {
  const double survival = survival_probability(rho, params);
  if (survival < kMinSurvival) {
    throw ZeroSurvival("all optical paths blocked; nothing to renormalize");
  }
  const double beta = rho.mat()(1, 1).real();
  const std::complex<double> gamma = rho.mat()(0, 1);

  ComplexMatrix out(2, 2);
  out(0, 0) = ((1.0 - beta) * params.T * params.alpha0 +
               beta * params.R * params.R * params.alpha1) /
              survival;
  out(1, 1) = beta * params.T * params.alpha2 / survival;
  out(0, 1) = gamma * params.T * std::sqrt(params.alpha0 * params.alpha2) / survival;
  out(1, 0) = std::conj(out(0, 1));
  return DensityMatrix(out);
}

Gate beam_splitter_gate(double T, double R) {
  if (!(T > 0.0 && T < 1.0) || !(R > 0.0 && R < 1.0)) {
    throw OutOfRange("beam-splitter T and R must lie in (0, 1)");
  }
  if (T + R > 1.0 + 1e-9) {
    throw OutOfRange("beam-splitter T + R exceeds 1: " + std::to_string(T + R));
  }
  const std::complex<double> i_unit(0.0, 1.0);
  ComplexMatrix b(2, 2);
  b(0, 0) = std::sqrt(T);
  b(0, 1) = i_unit * std::sqrt(R);
  b(1, 0) = i_unit * std::sqrt(R);
  b(1, 1) = std::sqrt(T);
  // Polar projection W*V^dag: identity when T + R = 1, nearest unitary when
  // the splitter is lossy.
  Eigen::JacobiSVD<ComplexMatrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return Gate(svd.matrixU() * svd.matrixV().adjoint());
}

ProtocolResult imperfect_protocol(const DiagonalInputParams& params, double eta, double T,
                                  double R) {
  return four_qubit_protocol(beam_splitter_gate(T, R), params, eta, {}, {});
}

ProtocolResult imperfect_two_qubit(double eta, double T, double R) {
  return two_qubit_protocol(beam_splitter_gate(T, R), eta, {});
}

}  // namespace qne

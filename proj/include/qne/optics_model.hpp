#pragma once

#include "qne/protocols.hpp"

namespace qne {

// Beam-splitter transmissions/reflections and attenuation-filter intensity
// transmissions, all in intensity (not amplitude) convention.
struct OpticalParams {
  double T;  // splitter intensity transmission
  double R;  // splitter intensity reflection
  double alpha0;
  double alpha1;
  double alpha2;

  void check() const;
};

struct FilterSettings {
  double alpha0;
  double alpha1;
  double alpha2;
};

// Filter settings realizing the damping channel of strength eta on a
// splitter with measured T, R: alpha0 = R^2/T, alpha1 = eta,
// alpha2 = (R^2/T)(1-eta).  Throws InfeasibleCalibration when R^2/T > 1.
FilterSettings calibrate_filters(double eta, double T, double R);

inline OpticalParams optical_params(double T, double R, const FilterSettings& f) {
  return OpticalParams{T, R, f.alpha0, f.alpha1, f.alpha2};
}

// Unnormalized photon-survival weight (1-b)*T*a0 + b*R^2*a1 + b*T*a2 with
// b the |1> population of rho.
double survival_probability(const DensityMatrix& rho, const OpticalParams& params);

// State after the splitter-and-filter network, renormalized on photon
// survival.  With calibrated filters this reproduces amplitude damping
// entrywise.  Throws ZeroSurvival when every path is blocked.
DensityMatrix physical_channel(const DensityMatrix& rho, const OpticalParams& params);

// Unitary closest to [[sqrt(T), i*sqrt(R)], [i*sqrt(R), sqrt(T)]]; exact
// for a lossless splitter (T + R = 1).
Gate beam_splitter_gate(double T, double R);

// Protocol runs with the Hadamards replaced by the unbalanced splitter.
// The outputs are labelled model:unbalanced-bs, not a device-exact theory.
ProtocolResult imperfect_protocol(const DiagonalInputParams& params, double eta, double T,
                                  double R);
ProtocolResult imperfect_two_qubit(double eta, double T, double R);

}  // namespace qne

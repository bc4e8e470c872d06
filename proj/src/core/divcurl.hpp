#pragma once

#include <utility>
#include <vector>

#include "core/grid.hpp"

namespace crossn {

// One-parameter family f^k = base + amplitude * sin(k x_axis) e_comp.  The
// perturbation direction is chosen so one differential invariant survives
// exactly: adding along comp != axis keeps div f^k = div base; adding along
// comp == axis keeps curl f^k = curl base (the oscillation depends only on
// x_axis, so the only derivative it feeds is along axis).
struct OscillatoryFamily {
  Field base;
  int axis;      // 0-based oscillation axis
  int comp;      // 0-based perturbed component
  double amplitude;
  std::vector<int> k_values;
};

// u gets the div-preserving family (comp p != axis), v the curl-preserving one
// (comp = axis).  axis and p are 1-based here, as in the operator interfaces;
// p = 0 picks the smallest component different from axis.  Every k must be
// resolved by the grid: k <= shape[axis] / 4.
std::pair<OscillatoryFamily, OscillatoryFamily> build_families(
    const Field& u, const Field& v, int axis, double amplitude,
    std::vector<int> k_values, int p = 0);

Field family_member(const OscillatoryFamily& fam, int k);

// Weighted pairings integral phi <u^k, v^k> dx against the limit
// integral phi <u, v> dx.  Deviations below the round-off floor are clamped;
// the decay exponent is a least-squares fit of log deviation vs log k
// (-infinity when everything sits at the floor).
struct WeakPairingReport {
  std::vector<int> k_values;
  std::vector<double> pairings;
  double limit;
  std::vector<double> deviations;
  double exponent;
};
WeakPairingReport weak_pairing(const OscillatoryFamily& fu, const OscillatoryFamily& fv,
                               const Field& phi);

// |inv_lap(div f) - div(inv_lap f)|_inf and the curl analogue; f must be
// mean-free (the inverse Laplacian is spectral).
std::pair<double, double> commutation_residuals(const Field& f);

// Potentials from w = inv_lap u: psi = div w and g = curl w satisfy
// grad psi + [[d]]^T g = u; returns the max-norm residual of that identity.
double potential_reconstruction_residual(const Field& u);

}  // namespace crossn

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "core/calculus.hpp"
#include "core/divcurl.hpp"
#include "core/grid.hpp"

namespace crossn {

struct NamedValue {
  std::string name;
  double value;
};

// Randomized algebra identity suite: max relative residual per identity over
// `trials` draws of standard-normal operands.  Residuals are scaled by the
// product of the operand norms entering each identity, so a pass threshold is
// meaningful across dimensions.
std::vector<NamedValue> identity_suite(int n, int trials, std::uint64_t seed);

// Cross-implementation agreement: recursion vs component formula vs matrix
// application; max relative deviation over trials.
double oracle_suite(int n, int trials, std::uint64_t seed);

// Discrete kernel and splitting identities on band-limited random fields.
// With the spectral backend every value is a round-off residual; with
// centered differences the *_split values carry the O(h^2) consistency error
// while the purely first-order compositions stay exact.
std::vector<NamedValue> kernel_suite(int n, const std::vector<int>& shape, Backend backend,
                                     int band, std::uint64_t seed);

// Names of the kernel_suite entries that vanish identically for both
// backends (used to judge pass/fail under centered differences).
bool kernel_check_is_exact(const std::string& name);

// residual(h) / residual(h/2) of the vector Laplacian splitting under
// centered differences, same underlying field on both grids.
double laplacian_refinement_ratio(int n, const std::vector<int>& shape, int band,
                                  std::uint64_t seed);

// Deterministic oscillatory demo on [0, 2pi)^n: base fields with an exact
// inverse-square sine spectrum along the oscillation axis, test weight
// phi = 1 + cos x_1.  Deviations then decay like k^-2 all the way down to the
// resolution limit, far above round-off.
struct DemoBases {
  Field u;
  Field v;
  Field phi;
};
DemoBases divcurl_demo_bases(const Grid& grid);

struct DivCurlDemo {
  Field u_base;
  Field v_base;
  Field phi;
  WeakPairingReport report;
  double commutation_div;
  double commutation_curl;
};
DivCurlDemo divcurl_demo(int n, const std::vector<int>& shape, const std::vector<int>& k_values,
                         double amplitude, std::uint64_t seed);

}  // namespace crossn

#pragma once

#include <cstdint>
#include <functional>

#include "core/grid.hpp"

namespace crossn {

// Samples f(component, x) on the grid; the workhorse for analytic test fields.
Field sample_field(const Grid& grid, FieldKind kind, int rows, int cols,
                   const std::function<double(int comp, const double* x)>& f);

Field sample_scalar(const Grid& grid, const std::function<double(const double*)>& f);

// Mean-free random field with modes drawn once per (n, band, seed, component
// count): independent unit Gaussians on every mode k with 0 < max|k_d| <= band,
// scaled to unit root-mean-square amplitude per field.  The draw order runs
// over the mode box irrespective of the grid shape, so the same parameters
// sample the same underlying trigonometric polynomial on any sufficiently
// fine grid -- which is what makes grid-refinement comparisons meaningful.
Field random_band_limited(const Grid& grid, FieldKind kind, int rows, int cols,
                          int band, std::uint64_t seed);

// Convenience overload with the default band shape_min / 4.
Field random_band_limited(const Grid& grid, FieldKind kind, int rows, int cols,
                          std::uint64_t seed);

}  // namespace crossn

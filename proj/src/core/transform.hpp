#pragma once

#include <vector>

#include "core/field.hpp"

namespace spde {

// Grid-side view of a trig polynomial: values at x_j = 2*pi*j/M per dimension.
// M may be any size >= the retained 2K+1 bins; larger M oversamples.
std::vector<double> to_grid(const SpectralField& u, int comp, int points_per_dim);

// Forward transform of lattice values, truncated to the grid's retained modes.
SpectralField from_grid(const std::vector<double>& values, const FourierGrid& grid,
                        int points_per_dim);

// Pointwise product of two scalar fields, computed alias-free by the 3/2
// zero-padding rule and truncated back to the common grid. Exact convolution
// truncation for factors that fill the grid bandwidth.
SpectralField dealiased_product(const SpectralField& u, const SpectralField& v);

int dealias_points(const FourierGrid& grid);  // padded lattice size used above

// L^p norms w.r.t. normalized Haar measure. p must be a positive even integer;
// the quadrature lattice is chosen fine enough that the result is exact for
// trig polynomials on the grid.
double lp_norm(const SpectralField& u, int p, int comp = 0);

// Max over an oversampled lattice; lower bound of the true sup norm,
// converging rapidly with the oversampling factor.
double sup_norm(const SpectralField& u, int comp = 0, int oversample = 4);

}  // namespace spde

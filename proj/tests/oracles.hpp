#ifndef GLE_TEST_ORACLES_HPP
#define GLE_TEST_ORACLES_HPP

#include <random>
#include <vector>

#include "gle/core.hpp"

// Test-only oracles, independent of the theta-series implementation path.
namespace gle::oracle {

// Direct truncated lattice sums over the centered square |m|,|n| <= M with
// two-level Richardson extrapolation in M (odd-power tails cancel on the
// symmetric square, so the truncation error expands in 1/M^2).
cplx wp_lattice_sum(cplx z, cplx tau, int M);
cplx zeta_lattice_sum(cplx z, cplx tau, int M);
cplx wp_oracle(cplx z, cplx tau);    // Richardson over M = 60, 120, 240
cplx zeta_oracle(cplx z, cplx tau);

// Random point in the fundamental cell at distance >= margin from the
// lattice (and optionally from all half-periods).
cplx random_cell_point(std::mt19937_64& rng, cplx tau, double margin,
                       bool avoid_half_lattice = false);

cplx random_tau(std::mt19937_64& rng, double im_min, double im_max);

}  // namespace gle::oracle

#endif

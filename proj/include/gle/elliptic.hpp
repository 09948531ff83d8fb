#ifndef GLE_ELLIPTIC_HPP
#define GLE_ELLIPTIC_HPP

#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "gle/core.hpp"

namespace gle {

struct WpTriple {
    cplx value;   // wp(z)
    cplx deriv;   // wp'(z)
    cplx deriv2;  // wp''(z)
};

/// Lattice constants and Weierstrass function evaluation for a fixed tau,
/// Im tau > 0, on the lattice Z + Z tau.  Conventions:
///   omega_0 = 0, omega_1 = 1, omega_2 = tau, omega_3 = 1 + tau,
///   e_k = wp(omega_k / 2),  eta_k = 2 zeta(omega_k / 2) for k = 1, 2,
///   eta_3 = eta_1 + eta_2 (derived, never stored),
///   tau * eta_1 - eta_2 = 2 pi i (Legendre).
/// Evaluation goes through Jacobi theta_1 q-series after reduction to the
/// centered fundamental cell; accuracy degrades as Im tau -> 0 and the
/// constructor refuses lattices it cannot resolve to the requested tol.
/// Immutable after construction; all operations are pure and thread-safe.
class EllipticContext {
public:
    // make_context: tol >= 100 * machine epsilon, Im tau > 0.
    static EllipticContext make(cplx tau, double tol, double pole_exclusion = 1e-8);

    cplx tau() const;
    double tol() const;
    double pole_exclusion() const;
    int series_order() const;

    cplx half_period(int k) const;  // omega_k / 2, k = 0..3
    cplx omega(int j) const;        // omega_1 = 1, omega_2 = tau, omega_3 = 1 + tau
    cplx e(int k) const;            // k = 1..3
    cplx g2() const;
    cplx g3() const;
    cplx eta(int j) const;  // j = 1, 2
    cplx eta3() const;      // eta_1 + eta_2
    cplx nome() const;      // exp(2 pi i tau)

    WpTriple wp(cplx z) const;
    cplx wp_value(cplx z) const;
    cplx zeta(cplx z) const;
    cplx sigma(cplx z) const;

    // Inverse of wp.  Without a seed, returns the canonical representative:
    // of the two preimages +-p mod the lattice, the one whose reduced cell
    // coordinates (s, t) have t > 0, or t = 0 and s >= 0.  With a seed,
    // returns the Newton solution connected to the seed.
    cplx invert_wp(cplx w) const;
    cplx invert_wp(cplx w, cplx seed) const;

    // Representative with both cell coordinates in [-1/2, 1/2).
    cplx reduce(cplx z) const;
    // Coordinates (s, t) of z = s + t tau.
    std::pair<double, double> lattice_coords(cplx z) const;
    // Distance from z to the nearest lattice point.
    double lattice_distance(cplx z) const;
    // Distance from z to the nearest point of E_tau[2] (all omega_k/2 + lattice).
    double half_lattice_distance(cplx z) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit EllipticContext(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

}  // namespace gle

#endif

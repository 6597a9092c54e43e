#pragma once

#include "turnband/profiles.hpp"
#include "turnband/quadrature.hpp"

namespace turnband {

/// Turning bands operator walking a profile from the line (or the interval
/// ball B_1) to dimension d >= 2:
///
///   phi_d(x) = c_d / x \int_0^x phi_1(u) (1 - u^2/x^2)^{(d-3)/2} du,
///   c_d = 2 Gamma(d/2) / (sqrt(pi) Gamma((d-1)/2)),
///
/// with phi_d(0) = phi_1(0). Ball-restricted sources are only evaluated for
/// x < 1; anything beyond is a DomainError. Target d = 1 is rejected, use
/// tb_identity for the trivial walk.
double tb_radial(const RadialProfile& phi1, int d, double x, const QuadratureConfig& cfg = {});

/// The same operator applied to u -> phi(u, t) at fixed Euclidean lag t.
double tb_product_euclidean(const ProductModel& phi, int d, double x, double t,
                            const QuadratureConfig& cfg = {});

/// The same operator applied to u -> psi(u, theta) at fixed angle theta on
/// S^{d'}. Integrates the full function; Schoenberg series are not used.
double tb_product_sphere(const ProductModel& psi, int d, double x, double theta,
                         const QuadratureConfig& cfg = {});

/// Lazily evaluated images of the operators above, usable wherever a
/// profile or product model is expected.
RadialProfile turning_bands(const RadialProfile& phi1, int d, const QuadratureConfig& cfg = {});
ProductModel turning_bands(const ProductModel& phi, int d, const QuadratureConfig& cfg = {});

inline RadialProfile tb_identity(const RadialProfile& phi1) { return phi1; }

}  // namespace turnband

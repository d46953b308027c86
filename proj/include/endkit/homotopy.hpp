#pragma once

#include <complex>
#include <functional>
#include <utility>

namespace endkit {

using Complex = std::complex<double>;

/// Self-map of the punctured closed unit disk.
using DiskMap = std::function<Complex(Complex)>;

/// Alexander-trick homotopy from phi (t = 0) to the radial extension of its
/// boundary values (t = 1), fixed on the unit circle:
///   (1-t) phi(z/(1-t))   for 0 < |z| <= 1-t
///   |z| phi(z/|z|)       for 1-t < |z| <= 1
/// Throws Error(curve-rewrite, DomainError) for z = 0, |z| > 1 or t outside [0,1].
Complex alexander_homotopy(const DiskMap& phi, Complex z, double t);

/// z -> |z| phi(z/|z|).
DiskMap radial_extension(DiskMap phi);

/// The affine map [1,3] -> [1,2] with 1 -> 1 and 3 -> 2.
double ell(double s);

/// Circle coordinate of a map S^1 x [1,3] -> S^1 x [1,2].
using AnnulusAngle = std::function<Complex(Complex, double)>;
/// Radial coordinate, with values in [1,2].
using AnnulusRadius = std::function<double(Complex, double)>;

/// Straight-line push of the radial coordinate onto ell:
///   ((z,s),t) -> (phi1(z,s), (1-t) phi2(z,s) + t ell(s)).
/// Throws Error(curve-rewrite, DomainError) for |z| != 1, s outside [1,3]
/// or t outside [0,1].
std::pair<Complex, double> annulus_push(const AnnulusAngle& phi1, const AnnulusRadius& phi2, Complex z,
                                        double s, double t);

}  // namespace endkit

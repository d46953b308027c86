#include "endkit/homotopy.hpp"

#include <cmath>

#include "endkit/error.hpp"

namespace endkit {

namespace {

constexpr double kUnitSlack = 1e-12;

[[noreturn]] void domain(const std::string& what) { throw Error("curve-rewrite", "DomainError", what); }

void check_time(double t) {
  if (!(t >= 0.0 && t <= 1.0)) domain("t = " + std::to_string(t) + " is outside [0,1]");
}

}  // namespace

Complex alexander_homotopy(const DiskMap& phi, Complex z, double t) {
  check_time(t);
  const double r = std::abs(z);
  if (r == 0.0) domain("z = 0 is the puncture");
  if (r > 1.0 + kUnitSlack) domain("|z| = " + std::to_string(r) + " exceeds 1");
  if (r <= 1.0 - t) return (1.0 - t) * phi(z / (1.0 - t));
  return r * phi(z / r);
}

DiskMap radial_extension(DiskMap phi) {
  return [phi = std::move(phi)](Complex z) {
    const double r = std::abs(z);
    if (r == 0.0) domain("z = 0 is the puncture");
    return r * phi(z / r);
  };
}

double ell(double s) { return 1.0 + (s - 1.0) / 2.0; }

std::pair<Complex, double> annulus_push(const AnnulusAngle& phi1, const AnnulusRadius& phi2, Complex z,
                                        double s, double t) {
  check_time(t);
  if (std::abs(std::abs(z) - 1.0) > kUnitSlack) domain("z is not on the unit circle");
  if (!(s >= 1.0 && s <= 3.0)) domain("s = " + std::to_string(s) + " is outside [1,3]");
  return {phi1(z, s), (1.0 - t) * phi2(z, s) + t * ell(s)};
}

}  // namespace endkit

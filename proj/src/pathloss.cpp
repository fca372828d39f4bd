// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0

#include "rislink/pathloss.hpp"

#include <cmath>

#include "rislink/errors.hpp"

namespace rislink::pathloss {

namespace {
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

void check_theta(double theta) {
  if (!(theta > 0.0) || !(theta <= 90.0)) {
    throw DomainError("elevation angle must lie in (0, 90] degrees");
  }
}
}  // namespace

double wavelength(const PathLossParams& p) {
  if (!(p.frequency > 0.0)) throw DomainError("carrier frequency must be positive");
  return kSpeedOfLight / p.frequency;
}

double pl_command(double z_c, double h, double alpha) {
  if (z_c < 0.0 || h < 0.0) throw DomainError("distances must be nonnegative");
  if (!(alpha > 0.0)) throw DomainError("path loss exponent must be positive");
  const double d_sq = z_c * z_c + h * h;
  if (d_sq == 0.0) throw DomainError("command link has zero length");
  return std::pow(d_sq, 0.5 * alpha);
}

double p_los(double theta, const PathLossParams& p) {
  check_theta(theta);
  return 1.0 / (1.0 + p.s_a * std::exp(-p.s_b * (theta - p.s_a)));
}

double pl_uav_db(double theta, double h, const PathLossParams& p) {
  check_theta(theta);
  if (!(h > 0.0)) throw DomainError("altitude must be positive");
  const double slant = h / std::sin(theta * kDegToRad);
  const double fspl =
      20.0 * std::log10(4.0 * 3.14159265358979323846 * slant / wavelength(p));
  return fspl + p_los(theta, p) * (p.eta_los - p.eta_nlos) + p.eta_nlos;
}

double total_path_loss(const Geometry& geom, const PathLossParams& p) {
  return pl_command(geom.z_c, geom.h, p.alpha) *
         db_to_linear(pl_uav_db(geom.theta, geom.h, p));
}

double db_to_linear(double db) { return std::pow(10.0, 0.1 * db); }

double linear_to_db(double x) {
  if (!(x > 0.0)) throw DomainError("dB conversion needs a positive value");
  return 10.0 * std::log10(x);
}

}  // namespace rislink::pathloss

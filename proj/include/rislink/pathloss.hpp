// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0
//
// Link geometry and large-scale loss for the two hops: a power-law loss on
// the ground-to-UAV command distance, and a probabilistic LoS/NLoS air-to-
// ground loss between the UAV and the user. Angles are in degrees
// throughout; dB <-> linear conversion happens only at the edges.
#pragma once

namespace rislink::pathloss {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct PathLossParams {
  double alpha = 2.0;        // command-link path loss exponent
  double s_a = 4.88;         // LoS-probability environment constants
  double s_b = 0.4472;
  double eta_los = 0.1;      // excess LoS loss, dB
  double eta_nlos = 20.0;    // excess NLoS loss, dB
  double frequency = 1.5e9;  // carrier, Hz
};

struct Geometry {
  double h;      // UAV altitude, m
  double z_c;    // ground distance of the command link, m
  double r_u;    // user ground radius, m
  double theta;  // elevation angle at the user, degrees
};

// Carrier wavelength in metres.
double wavelength(const PathLossParams& p);

// Command-hop loss (z_c^2 + h^2)^(alpha/2), linear.
double pl_command(double z_c, double h, double alpha);

// LoS probability 1 / (1 + s_a exp(-s_b (theta - s_a))), theta in degrees.
double p_los(double theta, const PathLossParams& p);

// Mean air-to-ground loss in dB at altitude h and elevation theta:
// free-space loss over the slant distance h/sin(theta) plus the
// LoS-probability-weighted excess loss.
double pl_uav_db(double theta, double h, const PathLossParams& p);

// Product of both hops, linear. Uses geom.h, geom.z_c, geom.theta.
double total_path_loss(const Geometry& geom, const PathLossParams& p);

double db_to_linear(double db);
double linear_to_db(double x);

}  // namespace rislink::pathloss

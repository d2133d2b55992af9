#pragma once

// Competitive-ratio bound functions for Smartstart on the line (open
// variant).  f1 bounds runs whose last schedule starts after a waiting
// period, f2 runs whose last schedule starts immediately; the upper bound
// is max(f1, f2), minimized at theta_star where the two branches cross.
// g1..g4 are the lower-bound envelope pieces on their respective
// theta-intervals; every piece stays above rho_star, so no waiting
// parameter beats rho_star.

namespace linedarp::bounds {

// f1(theta) = (2 theta^2 + 2 theta) / (theta^2 + theta - 2), theta > 1.
double f1(double theta);

// f2(theta) = theta + 1 - (theta - 1) / (3 theta + 3), theta >= 1.
double f2(double theta);

// Unique crossing of f1 and f2 in [2, 2.303], found by bisection to the
// given bracket width.  Roughly 2.0526.
double theta_star(double tol = 1e-12);

// Optimal upper bound f1(theta_star) = f2(theta_star), roughly 2.93768.
double rho_star(double tol = 1e-12);

// Interval endpoints for the lower-bound pieces:
//   g1 on (1, 2],  g2 on ((1+sqrt(13))/2, 1+sqrt(2)],
//   g3 on (1+sqrt(2), 3),  g4 on [3, inf).
double theta_g2_lo();  // (1 + sqrt(13)) / 2
double theta_g2_hi();  // 1 + sqrt(2)

double g1(double theta);
double g2(double theta);
double g3(double theta);
double g4(double theta);

// The published reference point for g3's floor: 349/247 + sqrt(84998)/247,
// roughly 2.5933, with g3(theta_hat) about 3.01454.  The exact interior
// minimizer of the expression above is (69 + sqrt(3398))/47, roughly
// 2.7083, a hair to the right with value about 3.01337; either way the
// whole piece stays above 3.
double theta_hat();

// Whether theta lies in the domain of the given piece (1-based index).
bool in_g_domain(int piece, double theta);

// Value of the applicable piece at theta; throws std::domain_error for
// theta <= 1.
double g_envelope(double theta);

}  // namespace linedarp::bounds

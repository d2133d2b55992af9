#include "linedarp/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace linedarp::bounds {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

double f1(double theta) {
  require(theta > 1.0, "f1: requires theta > 1");
  return (2.0 * theta * theta + 2.0 * theta) / (theta * theta + theta - 2.0);
}

double f2(double theta) {
  require(theta >= 1.0, "f2: requires theta >= 1");
  return theta + 1.0 - (theta - 1.0) / (3.0 * theta + 3.0);
}

double theta_star(double tol) {
  require(tol > 0.0, "theta_star: requires tol > 0");
  // f1 - f2 is positive at 2 (1/9) and negative at 2.303; it crosses zero
  // exactly once in between, with f1 falling and f2 rising.
  double lo = 2.0;
  double hi = 2.303;
  double h_lo = f1(lo) - f2(lo);
  for (int i = 0; i < 200 && (hi - lo) > tol; ++i) {
    double mid = 0.5 * (lo + hi);
    double h_mid = f1(mid) - f2(mid);
    if ((h_mid > 0.0) == (h_lo > 0.0)) {
      lo = mid;
      h_lo = h_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double rho_star(double tol) { return f1(theta_star(tol)); }

double theta_g2_lo() { return (1.0 + std::sqrt(13.0)) / 2.0; }

double theta_g2_hi() { return 1.0 + std::sqrt(2.0); }

double g1(double theta) {
  require(theta > 1.0 && theta <= 2.0, "g1: requires theta in (1, 2]");
  return 3.0 * theta * theta /
         ((41.0 / 40.0) * theta * theta + (39.0 / 40.0) * theta - 2.0);
}

double g2(double theta) {
  require(theta > theta_g2_lo() && theta <= theta_g2_hi(),
          "g2: requires theta in ((1+sqrt(13))/2, 1+sqrt(2)]");
  double num = (3.0 * theta + 3.0) / (theta - 1.0) + 2.0 + 2.0 / theta;
  double den = (2.0 * theta + 3.0) / theta + 1.0 / 10.0;
  return num / den;
}

double g3(double theta) {
  require(theta > theta_g2_hi() && theta < 3.0,
          "g3: requires theta in (1+sqrt(2), 3)");
  double num = (3.0 * theta - 1.0) / (theta - 1.0) + 1.0 + 1.0 / theta;
  double den = 1.1 + 2.0 / theta;
  return num / den;
}

double g4(double theta) {
  require(theta >= 3.0, "g4: requires theta >= 3");
  return (4.0 - 3.0 / theta) / (1.0 + 1.0 / 75.0);
}

double theta_hat() { return 349.0 / 247.0 + std::sqrt(84998.0) / 247.0; }

bool in_g_domain(int piece, double theta) {
  switch (piece) {
    case 1:
      return theta > 1.0 && theta <= 2.0;
    case 2:
      return theta > theta_g2_lo() && theta <= theta_g2_hi();
    case 3:
      return theta > theta_g2_hi() && theta < 3.0;
    case 4:
      return theta >= 3.0;
    default:
      return false;
  }
}

double g_envelope(double theta) {
  require(theta > 1.0, "g_envelope: requires theta > 1");
  if (theta >= 3.0) return g4(theta);
  if (theta > theta_g2_hi()) return g3(theta);
  if (theta > theta_g2_lo()) return g2(theta);
  if (theta <= 2.0) return g1(theta);
  // On (2, (1+sqrt(13))/2] the envelope is carried by the f1/f2 families,
  // not by a g piece.
  throw std::domain_error("g_envelope: no g piece applies on (2, (1+sqrt(13))/2]");
}

}  // namespace linedarp::bounds

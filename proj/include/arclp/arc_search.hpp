#pragma once

#include <stdexcept>

#include "arclp/model.hpp"

namespace arclp {

class positivity_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Largest alpha in [0, pi/2] such that
//   v - dv*sin(a) + ddv*(1 - cos(a)) >= 0   for every a in [0, alpha],
// by case analysis on the signs of dv and ddv. v must be > 0.
double component_alpha(double v, double dv, double ddv);

// Componentwise minimum of component_alpha.
double arc_alphas(const Vec& v, const Vec& dv, const Vec& ddv);

// Ellipse step: w+ = w - dw*sin(alpha) + ddw*(1 - cos(alpha)); x uses
// alpha_x, lambda and s share alpha_s. The endpoint alpha = pi/2 is
// evaluated analytically (sin = 1, 1 - cos = 1) so it coincides bitwise
// with the straight-line update at alpha = 1.
Iterate arc_update(const Iterate& it, const Direction& dir1, const Direction& dir2, double alpha_x,
                   double alpha_s);

// Closed form of the post-step duality measure for equal step lengths:
//   mu(a) = mu[1 - sin a + sigma(1 - cos a)]
//         + [(ddx'r_c - ddl'r_b) sin a (1 - cos a) + (dx'r_c - dl'r_b)(1 - cos a)^2]/n
double predicted_mu(const Iterate& it, const Direction& dir1, const Direction& dir2,
                    const Residuals& res, double sigma, double alpha);

}  // namespace arclp

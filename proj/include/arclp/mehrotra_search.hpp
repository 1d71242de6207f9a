#pragma once

#include "arclp/model.hpp"

namespace arclp {

// Largest alpha in [0, 1] with v - alpha*(dv - ddv) >= 0.
double line_alphas(const Vec& v, const Vec& dv, const Vec& ddv);

// Straight-line step w+ = w - alpha*(dw - ddw); x uses alpha_x, lambda and
// s share alpha_s. At alpha = 1 this is the arc update at pi/2.
Iterate line_update(const Iterate& it, const Direction& dir1, const Direction& dir2, double alpha_x,
                    double alpha_s);

}  // namespace arclp

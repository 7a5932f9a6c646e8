#pragma once

#include "mch/field.hpp"

namespace mch {

// Peaked traveling-wave profile u = A exp(-|x - c t|) with A = sqrt(3c/2).
// epsilon = 0 samples the raw profile with its crest slope jump; epsilon > 0
// additionally damps the spectrum by the order-8 exponential filter with the
// cutoff scaled by epsilon, a mollification the spectral solver can carry.
struct PeakonSpec {
  double c = 1.0;
  double epsilon = 0.0;
  double amplitude() const;
};

// a * exp(-((x - x0)/w)^2).
Field gaussian(std::shared_ptr<const Grid> grid, double amplitude, double width,
               double center);

Field peakon(std::shared_ptr<const Grid> grid, const PeakonSpec& spec,
             double t);

// The explicit two-peakon expression, transcribed verbatim with its common
// time-dependent phase 3 sqrt(c1 c2)/(c1-c2) exp((c1-c2) t). Qualitative
// crest-tracking data only, never a quantitative oracle.
Field two_peakon(std::shared_ptr<const Grid> grid, double c1, double c2,
                 double t);

// u0 with guaranteed nonnegative momentum: samples the positive bump
// A exp(-((x-x0)/w)^2) as m0 and returns u0 = (1-d^2)^{-1} m0.
Field bump_momentum(std::shared_ptr<const Grid> grid, double amplitude,
                    double width, double center);

// Crest position as the parabola vertex through the three samples around the
// grid argmax.
double crest_position(const Field& u);

}  // namespace mch

#include "mch/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mch/spectral.hpp"

namespace mch {

double PeakonSpec::amplitude() const { return std::sqrt(1.5 * c); }

Field gaussian(std::shared_ptr<const Grid> grid, double amplitude, double width,
               double center) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian: width must be positive");
  Field f(grid);
  for (int i = 0; i < f.size(); ++i) {
    const double r = (grid->node(i) - center) / width;
    f.v[i] = amplitude * std::exp(-r * r);
  }
  return f;
}

Field peakon(std::shared_ptr<const Grid> grid, const PeakonSpec& spec,
             double t) {
  if (!(spec.c > 0.0)) throw std::invalid_argument("peakon: speed must be positive");
  const double crest = spec.c * t;
  if (std::abs(crest) > 0.5 * grid->half_length())
    throw std::invalid_argument("peakon: crest too close to the boundary");
  const double amp = spec.amplitude();
  Field f(grid);
  for (int i = 0; i < f.size(); ++i)
    f.v[i] = amp * std::exp(-std::abs(grid->node(i) - crest));
  if (spec.epsilon > 0.0) {
    // widen the filter rolloff with epsilon measured in grid spacings
    const double scale = std::max(1.0, spec.epsilon / grid->dx());
    const double half = grid->size() / 2.0;
    Spectrum s = grid->forward(f.v);
    for (int k = 0; k < grid->spectrum_size(); ++k) {
      const double r = std::min(1.0, scale * k / half);
      s[k] *= std::exp(-36.0 * std::pow(r, 16));
    }
    f.v = grid->inverse(std::move(s));
  }
  return f;
}

Field two_peakon(std::shared_ptr<const Grid> grid, double c1, double c2,
                 double t) {
  if (!(0.0 < c1 && c1 < c2))
    throw std::invalid_argument("two_peakon: speeds must satisfy 0 < c1 < c2");
  const double phase = 3.0 * std::sqrt(c1 * c2) / (c1 - c2) * std::exp((c1 - c2) * t);
  const double a1 = std::sqrt(1.5 * c1), a2 = std::sqrt(1.5 * c2);
  Field f(grid);
  for (int i = 0; i < f.size(); ++i) {
    const double x = grid->node(i);
    f.v[i] = a1 * std::exp(-std::abs(x - c1 * t - phase)) +
             a2 * std::exp(-std::abs(x - c2 * t - phase));
  }
  return f;
}

Field bump_momentum(std::shared_ptr<const Grid> grid, double amplitude,
                    double width, double center) {
  if (!(amplitude > 0.0) || !(width > 0.0))
    throw std::invalid_argument("bump_momentum: amplitude and width must be positive");
  return helmholtz_inv(gaussian(grid, amplitude, width, center));
}

double crest_position(const Field& u) {
  const int n = u.size();
  int j = 0;
  for (int i = 1; i < n; ++i)
    if (u.v[i] > u.v[j]) j = i;
  const double ym = u.v[(j - 1 + n) % n], y0 = u.v[j], yp = u.v[(j + 1) % n];
  const double denom = ym - 2.0 * y0 + yp;
  double frac = 0.0;
  if (std::abs(denom) > 1e-300) frac = 0.5 * (ym - yp) / denom;
  return u.grid->node(j) + frac * u.grid->dx();
}

}  // namespace mch
